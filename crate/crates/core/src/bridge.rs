//! Formulas connecting `R`, `F`, `L` with the split maps `𝓡`, `𝓛`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::residual::{CheckId, Residual};
use crate::rfl::RflDecomposition;
use crate::scalar::Scalar;
use crate::split::SplitDecomposition;
use crate::system::{RelationParameters, TridiagonalSystem};

/// `Π_{k=from}^{to} (seq[at] − seq[k])`; 1 when the range is empty.
fn prod_diff(seq: &[Scalar], at: usize, from: usize, to: usize) -> Scalar {
    let mut p = seq[at].field().one();
    for k in from..=to {
        let diff = &seq[at] - &seq[k];
        assert!(!diff.is_zero(), "vanishing eigenvalue difference at {at}, {k}");
        p = &p * &diff;
    }
    p
}

/// `(s_j − s_i)(s_j − s_{i+1})⋯(s_j − s_{j−1})` for `i ≤ j`.
fn upper(seq: &[Scalar], i: usize, j: usize) -> Scalar {
    if i == j {
        return seq[0].field().one();
    }
    prod_diff(seq, j, i, j - 1)
}

/// `(s_i − s_{i+1})(s_i − s_{i+2})⋯(s_i − s_j)` for `i ≤ j`.
fn lower(seq: &[Scalar], i: usize, j: usize) -> Scalar {
    if i == j {
        return seq[0].field().one();
    }
    prod_diff(seq, i, i + 1, j)
}

/// The descent denominators for a pair `i ≤ j`, on both eigenvalue sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentDenominator {
    pub i: usize,
    pub j: usize,
    /// `(θ*_j − θ*_i)(θ*_j − θ*_{i+1})⋯(θ*_j − θ*_{j−1})`
    pub dual: Scalar,
    /// `(θ_j − θ_i)(θ_j − θ_{i+1})⋯(θ_j − θ_{j−1})`
    pub primal: Scalar,
}

impl DescentDenominator {
    pub fn new(sys: &TridiagonalSystem, i: usize, j: usize) -> DescentDenominator {
        assert!(i <= j && j <= sys.d(), "descent indices out of range");
        DescentDenominator {
            i,
            j,
            dual: upper(sys.thetastar(), i, j),
            primal: upper(sys.theta(), i, j),
        }
    }
}

fn powers(m: &Matrix, top: usize) -> Vec<Matrix> {
    let mut v = vec![Matrix::identity(m.field(), m.rows())];
    for k in 1..=top {
        let next = &v[k - 1] * m;
        v.push(next);
    }
    v
}

fn inv(s: &Scalar) -> Scalar {
    s.inv().expect("nonzero denominator")
}

pub fn check_descent(sys: &TridiagonalSystem, split: &SplitDecomposition) -> Vec<Residual> {
    let d = sys.d();
    let id = CheckId::Descent;
    let ts = sys.thetastar();
    let es = sys.dual_idempotents();
    let f = &split.f;
    let lp = powers(&split.call, d);
    let mut out = Vec::new();
    for i in 0..=d {
        for j in i..=d {
            let den = DescentDenominator::new(sys, i, j);
            let fe = &f[i] * &es[j];
            let rhs = &(&lp[j - i] * &(&f[j] * &es[j])).scale(&inv(&den.dual));
            out.push(Residual::matrix(id, "F_iE*_j − 𝓛^(j−i)F_jE*_j/Π(θ*_j − θ*_k)", &[i, j], &(&fe - rhs)));
            let ef = &es[i] * &f[j];
            let rhs = (&(&es[i] * &f[i]) * &lp[j - i]).scale(&inv(&lower(ts, i, j)));
            out.push(Residual::matrix(id, "E*_iF_j − E*_iF_i𝓛^(j−i)/Π(θ*_i − θ*_k)", &[i, j], &(&ef - &rhs)));
            if i < j {
                let step = (&(&split.call * &f[i + 1]) * &es[j]).scale(&inv(&(&ts[j] - &ts[i])));
                out.push(Residual::matrix(id, "F_iE*_j − 𝓛F_{i+1}E*_j/(θ*_j − θ*_i)", &[i, j], &(&fe - &step)));
                let step = (&(&es[i] * &f[j - 1]) * &split.call).scale(&inv(&(&ts[i] - &ts[j])));
                out.push(Residual::matrix(id, "E*_iF_j − E*_iF_{j−1}𝓛/(θ*_i − θ*_j)", &[i, j], &(&ef - &step)));
            }
        }
    }
    out
}

/// The double-sum operator `S_{i,j}` multiplying `F_jE*_j` in the expansion
/// of `F_iE*_iAE*_j`.
pub fn master_operator(sys: &TridiagonalSystem, split: &SplitDecomposition, i: usize, j: usize) -> Matrix {
    let d = sys.d();
    let lp = powers(&split.call, d);
    master_with_powers(sys, &split.calr, &lp, i, j)
}

fn master_with_powers(sys: &TridiagonalSystem, calr: &Matrix, lp: &[Matrix], i: usize, j: usize) -> Matrix {
    let d = sys.d();
    let theta = sys.theta();
    let ts = sys.thetastar();
    let n = sys.dim();
    let mut sum = Matrix::zeros(sys.field(), n, n);
    for s in i..=j {
        let left = lp[s - i].scale(&inv(&lower(ts, i, s)));
        let right = lp[j - s].scale(&inv(&upper(ts, s, j)));
        sum = &sum + &(&left * &right).scale(&theta[s]);
    }
    for s in 0..=j {
        let r = s + 1;
        if r < i || r > d {
            continue;
        }
        let left = lp[r - i].scale(&inv(&lower(ts, i, r)));
        let right = lp[j - s].scale(&inv(&upper(ts, s, j)));
        sum = &sum + &(&(&left * calr) * &right);
    }
    sum
}

/// The dual double sum acting on `F_iV`, with the roles of `𝓡`, `𝓛` and of
/// `θ`, `θ*` exchanged.
pub fn dual_master_operator(sys: &TridiagonalSystem, split: &SplitDecomposition, i: usize, j: usize) -> Matrix {
    let d = sys.d();
    let theta = sys.theta();
    let ts = sys.thetastar();
    let rp = powers(&split.calr, d);
    let n = sys.dim();
    let mut sum = Matrix::zeros(sys.field(), n, n);
    for s in i..=j {
        let left = rp[j - s].scale(&inv(&upper(theta, s, j)));
        let right = rp[s - i].scale(&inv(&lower(theta, i, s)));
        sum = &sum + &(&left * &right).scale(&ts[s]);
    }
    for s in 0..=j {
        let r = s + 1;
        if r < i || r > d {
            continue;
        }
        let left = rp[j - s].scale(&inv(&upper(theta, s, j)));
        let right = rp[r - i].scale(&inv(&lower(theta, i, r)));
        sum = &sum + &(&(&left * &split.call) * &right);
    }
    sum
}

/// The closed forms of the master operator for `i − j ∈ {1, 0, −1}`.
fn corollary_operators(sys: &TridiagonalSystem, split: &SplitDecomposition, j: usize) -> [Option<Matrix>; 3] {
    let d = sys.d();
    let theta = sys.theta();
    let ts = sys.thetastar();
    let (r, l) = (&split.calr, &split.call);
    let rl = r * l;
    let lr = l * r;
    let raise = (j < d).then(|| r.clone());
    let mut flat = sys.identity().scale(&theta[j]);
    if j >= 1 {
        flat = &flat + &rl.scale(&inv(&(&ts[j] - &ts[j - 1])));
    }
    if j < d {
        flat = &flat + &lr.scale(&inv(&(&ts[j] - &ts[j + 1])));
    }
    let lower_op = (j >= 1).then(|| {
        let gap = &ts[j - 1] - &ts[j];
        let mut m = l.scale(&((&theta[j] - &theta[j - 1]) / &gap));
        if j >= 2 {
            let den = &(&ts[j] - &ts[j - 1]) * &(&ts[j] - &ts[j - 2]);
            m = &m + &(&rl * l).scale(&inv(&den));
        }
        m = &m - &(&lr * l).scale(&inv(&(&gap * &gap)));
        if j < d {
            let den = &gap * &(&ts[j - 1] - &ts[j + 1]);
            m = &m + &(l * &lr).scale(&inv(&den));
        }
        m
    });
    [raise, Some(flat), lower_op]
}

/// `F_iE*_iAE*_j − S_{i,j}F_jE*_j` for all `i, j`. For `|i − j| ≤ 1` the
/// assembled `S_{i,j}` must coincide with its closed form.
pub fn check_master_identity(sys: &TridiagonalSystem, split: &SplitDecomposition) -> Result<Vec<Residual>> {
    let d = sys.d();
    let es = sys.dual_idempotents();
    let f = &split.f;
    let a = sys.a();
    let lp = powers(&split.call, d);
    let mut out = Vec::new();
    for j in 0..=d {
        let fe = &f[j] * &es[j];
        let closed = corollary_operators(sys, split, j);
        let ae = a * &es[j];
        for i in 0..=d {
            let s = master_with_powers(sys, &split.calr, &lp, i, j);
            let form = match i as isize - j as isize {
                1 => closed[0].as_ref(),
                0 => closed[1].as_ref(),
                -1 => closed[2].as_ref(),
                _ => None,
            };
            if let Some(form) = form {
                if &s != form {
                    return Err(Error::Inconsistent(format!(
                        "double sum at ({i}, {j}) differs from its closed form"
                    )));
                }
            }
            let lhs = &(&f[i] * &es[i]) * &ae;
            out.push(Residual::matrix(CheckId::Master, "F_iE*_iAE*_j − S_ijF_jE*_j", &[i, j], &(&lhs - &(&s * &fe))));
        }
    }
    Ok(out)
}

/// `Ψ` intertwines `R`, `F`, `L` on `E*_jV` with their split counterparts.
pub fn check_diagrams(
    sys: &TridiagonalSystem,
    split: &SplitDecomposition,
    rfl: &RflDecomposition,
) -> Result<Vec<Residual>> {
    let d = sys.d();
    let es = sys.dual_idempotents();
    let f = &split.f;
    let psi = &split.psi;
    let a = sys.a();
    let id = CheckId::Diagrams;
    let mut out = Vec::new();
    let pr = psi * &rfl.r;
    let pf = psi * &rfl.f;
    let pl = psi * &rfl.l;
    for j in 0..=d {
        let [raise, flat, lower_op] = corollary_operators(sys, split, j);
        let fe = &f[j] * &es[j];
        let ae = a * &es[j];
        let mut push = |name: &str, corollary: &str, m: &Matrix, along: &Matrix, target: usize| -> Result<()> {
            let diagram = &(along * &es[j]) - &(&(m * psi) * &es[j]);
            let cor = &(&(&f[target] * &es[target]) * &ae) - &(m * &fe);
            if diagram != cor {
                return Err(Error::Inconsistent(format!("{name} at {j} disagrees with {corollary}")));
            }
            out.push(Residual::matrix(id, corollary, &[j], &cor));
            out.push(Residual::matrix(id, name, &[j], &diagram));
            Ok(())
        };
        if let Some(m) = raise {
            push("(ΨR − 𝓡Ψ)E*_j", "F_{j+1}E*_{j+1}AE*_j − 𝓡F_jE*_j", &m, &pr, j + 1)?;
        }
        if let Some(m) = flat {
            push("(ΨF − M_jΨ)E*_j", "F_jE*_jAE*_j − M_jF_jE*_j", &m, &pf, j)?;
        }
        if let Some(m) = lower_op {
            push("(ΨL − N_jΨ)E*_j", "F_{j−1}E*_{j−1}AE*_j − N_jF_jE*_j", &m, &pl, j - 1)?;
        }
    }
    Ok(out)
}

/// `e_j = (θ_{j−1} − θ_{j−2})(θ*_{j−1} − θ*_{j−2}) − (θ_{j−1} − θ_j)(θ*_{j−1} − θ*_j)`.
pub fn omega(sys: &TridiagonalSystem, j: usize) -> Scalar {
    let t = sys.theta();
    let s = sys.thetastar();
    &(&(&t[j - 1] - &t[j - 2]) * &(&s[j - 1] - &s[j - 2])) - &(&(&t[j - 1] - &t[j]) * &(&s[j - 1] - &s[j]))
}

/// Vanishing of the double sums for `j − i ≥ 2` and the cubic relations in
/// `𝓡`, `𝓛`.
pub fn check_vanishing_sums(
    sys: &TridiagonalSystem,
    split: &SplitDecomposition,
    params: &RelationParameters,
) -> Vec<Residual> {
    let d = sys.d();
    let id = CheckId::VanishingSums;
    let f = &split.f;
    let lp = powers(&split.call, d);
    let mut out = Vec::new();
    for i in 0..=d {
        for j in i + 2..=d {
            let s = master_with_powers(sys, &split.calr, &lp, i, j);
            out.push(Residual::matrix(id, "S_ijF_j", &[i, j], &(&s * &f[j])));
            let t = dual_master_operator(sys, split, i, j);
            out.push(Residual::matrix(id, "T_ijF_i", &[i, j], &(&t * &f[i])));
        }
    }
    let (r, l) = (&split.calr, &split.call);
    let b1 = &params.beta + &sys.field().one();
    let l2 = l * l;
    let r2 = r * r;
    let l3 = &l2 * l;
    let r3 = &r2 * r;
    let cubic_l = &(&(&(r * &l3) - (&(l * r) * &l2).scale(&b1)) + &(&(&l2 * r) * l).scale(&b1)) - &(&l3 * r);
    let cubic_r = &(&(&(&r3 * l) - &(&(&r2 * l) * r).scale(&b1)) + (&(r * l) * &r2).scale(&b1)) - &(l * &r3);
    for j in 2..=d {
        let c = &b1 * &omega(sys, j);
        let om1 = &cubic_l - &l2.scale(&c);
        out.push(Residual::matrix(
            id,
            "(𝓡𝓛³ − (β+1)𝓛𝓡𝓛² + (β+1)𝓛²𝓡𝓛 − 𝓛³𝓡 − (β+1)e_j𝓛²)F_j",
            &[j],
            &(&om1 * &f[j]),
        ));
        let om2 = &cubic_r - &r2.scale(&c);
        out.push(Residual::matrix(
            id,
            "(𝓡³𝓛 − (β+1)𝓡²𝓛𝓡 + (β+1)𝓡𝓛𝓡² − 𝓛𝓡³ − (β+1)e_j𝓡²)F_{j−2}",
            &[j],
            &(&om2 * &f[j - 2]),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krawtchouk::{construct_krawtchouk, KrawtchoukParams};
    use crate::rfl::compute_rfl;
    use crate::scalar::Field;
    use crate::split::compute_split;
    use crate::system::compute_relation_parameters;

    fn system(d: usize, p: (i64, i64)) -> TridiagonalSystem {
        let q = Field::Rational;
        construct_krawtchouk(&KrawtchoukParams::new(d, q.ratio(p.0, p.1)).unwrap()).unwrap().0
    }

    #[test]
    fn products() {
        let q = Field::Rational;
        let s: Vec<Scalar> = [3, 1, -1, -3].iter().map(|&n| q.int(n)).collect();
        assert_eq!(upper(&s, 0, 2), q.int(8));
        assert_eq!(lower(&s, 0, 2), q.int(8));
        assert_eq!(upper(&s, 2, 2), q.one());
    }

    #[test]
    fn all_groups_vanish() {
        let sys = system(3, (2, 5));
        let split = compute_split(&sys).unwrap();
        let rfl = compute_rfl(&sys).unwrap();
        let params = compute_relation_parameters(&sys, None).unwrap();
        let mut all = check_descent(&sys, &split);
        all.extend(check_master_identity(&sys, &split).unwrap());
        all.extend(check_diagrams(&sys, &split, &rfl).unwrap());
        all.extend(check_vanishing_sums(&sys, &split, &params));
        assert!(all.iter().all(|r| r.is_zero));
        assert_eq!(all.iter().filter(|r| r.check == CheckId::Master).count(), 16);
    }

    #[test]
    fn vanishing_sums_vacuous_below_two() {
        let sys = system(1, (1, 2));
        let split = compute_split(&sys).unwrap();
        let params = compute_relation_parameters(&sys, None).unwrap();
        assert!(check_vanishing_sums(&sys, &split, &params).is_empty());
    }

    #[test]
    fn krawtchouk_omega_vanishes() {
        let sys = system(4, (1, 3));
        assert!((2..=4).all(|j| omega(&sys, j).is_zero()));
    }

    #[test]
    fn descent_denominator() {
        let sys = system(2, (1, 2));
        let den = DescentDenominator::new(&sys, 0, 2);
        // θ* = (2, 0, −2): (−2 − 2)(−2 − 0) = 8.
        assert_eq!(den.dual, Field::Rational.int(8));
        assert_eq!(den.primal, Field::Rational.int(8));
    }
}
