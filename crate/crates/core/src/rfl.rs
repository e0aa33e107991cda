//! The raising, flat and lowering maps `A = R + F + L` relative to the
//! eigenspaces of `A*`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::matrix::Matrix;
use crate::residual::{CheckId, RankEntry, Residual};
use crate::scalar::Scalar;
use crate::system::{RelationParameters, TridiagonalSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RflDecomposition {
    pub r: Matrix,
    pub f: Matrix,
    pub l: Matrix,
}

/// `R = Σ E*_{i+1}AE*_i`, `F = Σ E*_iAE*_i`, `L = Σ E*_{i−1}AE*_i`, with the
/// defining properties checked.
pub fn compute_rfl(sys: &TridiagonalSystem) -> Result<RflDecomposition> {
    let d = sys.d();
    let n = sys.dim();
    let field = sys.field();
    let es = sys.dual_idempotents();
    let a = sys.a();
    let mut r = Matrix::zeros(field, n, n);
    let mut f = Matrix::zeros(field, n, n);
    let mut l = Matrix::zeros(field, n, n);
    for i in 0..=d {
        let ae = a * &es[i];
        f = &f + &(&es[i] * &ae);
        if i < d {
            r = &r + &(&es[i + 1] * &ae);
        }
        if i > 0 {
            l = &l + &(&es[i - 1] * &ae);
        }
    }
    let fail = |what: &str| Err(Error::Inconsistent(format!("raising/flat/lowering: {what}")));
    if &(&(&r + &f) + &l) != a {
        return fail("A ≠ R + F + L");
    }
    if !r.pow(d + 1).is_zero() || !l.pow(d + 1).is_zero() {
        return fail("R or L not nilpotent of index ≤ d+1");
    }
    for i in 0..=d {
        let re = &r * &es[i];
        let fe = &f * &es[i];
        let le = &l * &es[i];
        let ae = a * &es[i];
        let up = if i < d { &es[i + 1] * &ae } else { Matrix::zeros(field, n, n) };
        let down = if i > 0 { &es[i - 1] * &ae } else { Matrix::zeros(field, n, n) };
        if re != up || le != down || fe != &es[i] * &ae || fe != &es[i] * &f {
            return fail(&format!("intertwining fails at index {i}"));
        }
        if i < d && re != &es[i + 1] * &r {
            return fail(&format!("R E*_{i} ≠ E*_{} R", i + 1));
        }
        if i > 0 && le != &es[i - 1] * &l {
            return fail(&format!("L E*_{i} ≠ E*_{} L", i - 1));
        }
        if !(&r.pow(d - i + 1) * &es[i]).is_zero() || !(&l.pow(i + 1) * &es[i]).is_zero() {
            return fail(&format!("nilpotency on E*_{i}V"));
        }
    }
    Ok(RflDecomposition { r, f, l })
}

/// A coefficient that may be left undefined by its formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Defined(Scalar),
    Indeterminate,
}

/// `g±_i` for `2 ≤ i ≤ d` and `e±_i` for `1 ≤ i ≤ d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RflCoefficients {
    pub gplus: BTreeMap<usize, Scalar>,
    pub gminus: BTreeMap<usize, Scalar>,
    pub eplus: BTreeMap<usize, Coefficient>,
    pub eminus: BTreeMap<usize, Coefficient>,
}

impl RflCoefficients {
    pub fn new(sys: &TridiagonalSystem, params: &RelationParameters) -> Result<Self> {
        let d = sys.d() as isize;
        let ts = |i: isize| params.thetastar_ext(sys, i);
        let ratio = |a: isize, b: isize, c: isize, e: isize| (ts(a) - ts(b)) / (ts(c) - ts(e));
        let mut out = RflCoefficients {
            gplus: BTreeMap::new(),
            gminus: BTreeMap::new(),
            eplus: BTreeMap::new(),
            eminus: BTreeMap::new(),
        };
        for i in 2..=d {
            out.gplus.insert(i as usize, ratio(i, i + 1, i, i - 2));
            out.gminus.insert(i as usize, ratio(i - 2, i - 3, i - 2, i));
        }
        for i in 1..=d {
            let ep = if i < d {
                Coefficient::Defined(ratio(i, i + 2, i, i - 1))
            } else {
                Coefficient::Indeterminate
            };
            let em = if i >= 2 {
                Coefficient::Defined(ratio(i - 1, i - 3, i - 1, i))
            } else {
                Coefficient::Indeterminate
            };
            out.eplus.insert(i as usize, ep);
            out.eminus.insert(i as usize, em);
        }
        let d = d as usize;
        let vanishes = |c: Option<&Coefficient>| matches!(c, Some(Coefficient::Defined(s)) if s.is_zero());
        let bad = (2..d).find(|i| out.gplus[i].is_zero())
            .map(|i| format!("g+_{i} = 0"))
            .or_else(|| (3..=d).find(|i| out.gminus[i].is_zero()).map(|i| format!("g-_{i} = 0")))
            .or_else(|| (1..d.saturating_sub(1)).find(|i| vanishes(out.eplus.get(i))).map(|i| format!("e+_{i} = 0")))
            .or_else(|| (3..=d).find(|i| vanishes(out.eminus.get(i))).map(|i| format!("e-_{i} = 0")));
        match bad {
            Some(msg) => Err(Error::Inconsistent(msg)),
            None => Ok(out),
        }
    }
}

/// Multiplies `term` by a possibly indeterminate coefficient. An
/// indeterminate coefficient is accepted only when its term vanishes.
fn weighted(c: &Coefficient, term: &Matrix, what: &str) -> Result<Matrix> {
    match c {
        Coefficient::Defined(s) => Ok(term.scale(s)),
        Coefficient::Indeterminate if term.is_zero() => Ok(term.clone()),
        Coefficient::Indeterminate => Err(Error::Inconsistent(format!(
            "indeterminate coefficient multiplies nonzero {what}"
        ))),
    }
}

/// The relations among `R`, `F`, `L` restricted to the eigenspaces of `A*`.
pub fn check_rfl_relations(
    sys: &TridiagonalSystem,
    rfl: &RflDecomposition,
    params: &RelationParameters,
) -> Result<Vec<Residual>> {
    let d = sys.d();
    let coeffs = RflCoefficients::new(sys, params)?;
    let RflDecomposition { r, f, l } = rfl;
    let es = sys.dual_idempotents();
    let id = CheckId::RflRelations;
    let (beta, gamma, rho) = (&params.beta, &params.gamma, &params.rho);
    let two = sys.field().int(2);

    let l2 = l * l;
    let r2 = r * r;
    let fl2 = f * &l2;
    let lfl = &(l * f) * l;
    let l2f = &l2 * f;
    let r2f = &r2 * f;
    let rfr = &(r * f) * r;
    let fr2 = f * &r2;

    let mut out = Vec::new();
    for i in 2..=d {
        let (gp, gm) = (&coeffs.gplus[&i], &coeffs.gminus[&i]);
        let llf = &(&(&fl2.scale(gm) + &lfl) + &l2f.scale(gp)) - &l2.scale(gamma);
        out.push(Residual::matrix(id, "(g-FL² + LFL + g+L²F − γL²)E*_i", &[i], &(&llf * &es[i])));
        let rrf = &(&(&r2f.scale(gm) + &rfr) + &fr2.scale(gp)) - &r2.scale(gamma);
        out.push(Residual::matrix(id, "(g-R²F + RFR + g+FR² − γR²)E*_{i−2}", &[i], &(&rrf * &es[i - 2])));
    }

    let rl2 = r * &l2;
    let lrl = &(l * r) * l;
    let l2r = &l2 * r;
    let f2 = f * f;
    let lf2 = l * &f2;
    let flf = &(f * l) * f;
    let f2l = &f2 * l;
    let lf_fl = &(l * f) + &(f * l);
    let r2l = &r2 * l;
    let rlr = &(r * l) * r;
    let lr2 = l * &r2;
    let f2r = &f2 * r;
    let frf = &(f * r) * f;
    let rf2 = r * &f2;
    let fr_rf = &(f * r) + &(r * f);
    let b2 = beta + &two;
    for i in 1..=d {
        let (ep, em) = (&coeffs.eplus[&i], &coeffs.eminus[&i]);
        let on = &es[i];
        let lhs = &(&(&(&weighted(em, &(&rl2 * on), "RL²E*_i")? + &(&lrl * on).scale(&b2))
            + &weighted(ep, &(&l2r * on), "L²RE*_i")?)
            + &(&lf2 * on))
            - &(&(&flf * on).scale(beta) - &(&f2l * on));
        let rhs = &(&lf_fl * on).scale(gamma) + &(l * on).scale(rho);
        out.push(Residual::matrix(
            id,
            "(e-RL² + (β+2)LRL + e+L²R + LF² − βFLF + F²L − γ(LF+FL) − ϱL)E*_i",
            &[i],
            &(&lhs - &rhs),
        ));
        let on = &es[i - 1];
        let lhs = &(&(&(&weighted(em, &(&r2l * on), "R²LE*_{i−1}")? + &(&rlr * on).scale(&b2))
            + &weighted(ep, &(&lr2 * on), "LR²E*_{i−1}")?)
            + &(&f2r * on))
            - &(&(&frf * on).scale(beta) - &(&rf2 * on));
        let rhs = &(&fr_rf * on).scale(gamma) + &(r * on).scale(rho);
        out.push(Residual::matrix(
            id,
            "(e-R²L + (β+2)RLR + e+LR² + F²R − βFRF + RF² − γ(FR+RF) − ϱR)E*_{i−1}",
            &[i],
            &(&lhs - &rhs),
        ));
    }

    let f_lr = Matrix::commutator(f, &(l * r));
    let f_rl = Matrix::commutator(f, &(r * l));
    for i in 0..=d {
        let k = i as isize;
        let ts = |j: isize| params.thetastar_ext(sys, j);
        let lhs = &f_lr.scale(&(ts(k) - ts(k + 1))) - &f_rl.scale(&(ts(k - 1) - ts(k)));
        out.push(Residual::matrix(
            id,
            "((θ*_i − θ*_{i+1})[F,LR] − (θ*_{i−1} − θ*_i)[F,RL])E*_i",
            &[i],
            &(&lhs * &es[i]),
        ));
    }
    Ok(out)
}

/// Ranks of `R^{j−i}`, `L^{j−i}` and the `A`/`A*` sandwiches between
/// eigenspaces, with their expected values.
pub fn check_rank_tables(sys: &TridiagonalSystem, rfl: &RflDecomposition) -> Vec<RankEntry> {
    let d = sys.d();
    let rho = sys.shape();
    let es = sys.dual_idempotents();
    let e = sys.idempotents();
    let powers = |m: &Matrix| {
        let mut v = vec![sys.identity()];
        for k in 1..=d {
            let next = &v[k - 1] * m;
            v.push(next);
        }
        v
    };
    let rp = powers(&rfl.r);
    let lp = powers(&rfl.l);
    let ap = powers(sys.a());
    let asp = powers(sys.astar());
    let mut out = Vec::new();
    for i in 0..=d {
        for j in i..=d {
            let k = j - i;
            let low = rho[i].min(rho[j]);
            let entry = |map: &str, m: &Matrix, expected: usize| RankEntry {
                map: map.to_string(),
                i,
                j,
                rank: rank(m),
                expected,
            };
            out.push(entry("R^(j-i)E*_i", &(&rp[k] * &es[i]), if i + j <= d { rho[i] } else { rho[j] }));
            out.push(entry("L^(j-i)E*_j", &(&lp[k] * &es[j]), if i + j >= d { rho[j] } else { rho[i] }));
            out.push(entry("E*_iA^(j-i)E*_j", &(&(&es[i] * &ap[k]) * &es[j]), low));
            out.push(entry("E*_jA^(j-i)E*_i", &(&(&es[j] * &ap[k]) * &es[i]), low));
            out.push(entry("E_iA*^(j-i)E_j", &(&(&e[i] * &asp[k]) * &e[j]), low));
            out.push(entry("E_jA*^(j-i)E_i", &(&(&e[j] * &asp[k]) * &e[i]), low));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krawtchouk::{construct_krawtchouk, KrawtchoukParams};
    use crate::scalar::Field;
    use crate::system::compute_relation_parameters;

    fn system(d: usize, p: (i64, i64)) -> TridiagonalSystem {
        let q = Field::Rational;
        construct_krawtchouk(&KrawtchoukParams::new(d, q.ratio(p.0, p.1)).unwrap()).unwrap().0
    }

    #[test]
    fn maps_sum_to_a() {
        let sys = system(3, (1, 3));
        let rfl = compute_rfl(&sys).unwrap();
        assert_eq!(&(&rfl.r + &rfl.f) + &rfl.l, *sys.a());
        assert!(rfl.r.pow(4).is_zero() && rfl.l.pow(4).is_zero());
    }

    #[test]
    fn rfl_relations_small_diameters() {
        for d in 1..=3 {
            let sys = system(d, (2, 5));
            let rfl = compute_rfl(&sys).unwrap();
            let params = compute_relation_parameters(&sys, None).unwrap();
            let res = check_rfl_relations(&sys, &rfl, &params).unwrap();
            assert!(!res.is_empty());
            assert!(res.iter().all(|r| r.is_zero), "d={d}");
        }
    }

    #[test]
    fn boundary_coefficients_are_indeterminate() {
        let sys = system(3, (1, 3));
        let params = compute_relation_parameters(&sys, None).unwrap();
        let c = RflCoefficients::new(&sys, &params).unwrap();
        assert_eq!(c.eplus[&3], Coefficient::Indeterminate);
        assert_eq!(c.eminus[&1], Coefficient::Indeterminate);
        assert!(matches!(c.eplus[&1], Coefficient::Defined(_)));
    }

    #[test]
    fn leonard_rank_table_is_all_ones() {
        let sys = system(3, (1, 2));
        let ranks = check_rank_tables(&sys, &compute_rfl(&sys).unwrap());
        assert_eq!(ranks.len(), 6 * 10);
        assert!(ranks.iter().all(|e| e.rank == 1 && e.matches()));
    }
}
