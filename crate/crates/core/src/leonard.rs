//! Leonard systems: tridiagonal systems whose eigenspaces are all lines.

use crate::error::{Error, Result};
use crate::linalg::{inverse, Subspace};
use crate::matrix::Matrix;
use crate::residual::{CheckId, Residual};
use crate::rfl::{Coefficient, RflDecomposition, RflCoefficients};
use crate::scalar::{Field, Scalar};
use crate::split::{compute_split, SplitDecomposition};
use crate::system::{verify_pair, RelationParameters, TridiagonalSystem};

/// The scalar data of a Leonard system. Sequences are stored from their
/// first defined index: `phi`, `x`, `c` start at 1, `a`, `b`, `taustar` at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeonardData {
    pub d: usize,
    pub theta: Vec<Scalar>,
    pub thetastar: Vec<Scalar>,
    /// `φ_1..φ_d`
    pub phi: Vec<Scalar>,
    /// `a_0..a_d`
    pub a: Vec<Scalar>,
    /// `x_1..x_d`
    pub x: Vec<Scalar>,
    /// `b_0..b_{d−1}`
    pub b: Vec<Scalar>,
    /// `c_1..c_d`
    pub c: Vec<Scalar>,
    /// `τ*_i(θ*_i)` for `0 ≤ i ≤ d`
    pub taustar: Vec<Scalar>,
}

impl LeonardData {
    pub fn phi(&self, i: usize) -> Scalar {
        self.seq_from_one(&self.phi, i)
    }

    pub fn x(&self, i: usize) -> Scalar {
        self.seq_from_one(&self.x, i)
    }

    /// Values outside `1..=d` are 0, matching the boundary conventions.
    fn seq_from_one(&self, v: &[Scalar], i: usize) -> Scalar {
        if i == 0 || i > self.d {
            self.theta[0].field().zero()
        } else {
            v[i - 1].clone()
        }
    }

    /// The table as `(sequence, first index, values)` rows.
    pub fn sequences(&self) -> Vec<(&'static str, usize, &[Scalar])> {
        vec![
            ("theta", 0, &self.theta[..]),
            ("thetastar", 0, &self.thetastar[..]),
            ("phi", 1, &self.phi[..]),
            ("a", 0, &self.a[..]),
            ("x", 1, &self.x[..]),
            ("b", 0, &self.b[..]),
            ("c", 1, &self.c[..]),
        ]
    }
}

fn inconsistent<T>(what: String) -> Result<T> {
    Err(Error::Inconsistent(format!("leonard data: {what}")))
}

/// `X = s·P` for a rank-one idempotent `P`: returns `s = trace(X)` after
/// checking the equality.
fn scalar_multiple(x: &Matrix, p: &Matrix, what: &str) -> Result<Scalar> {
    let s = x.trace();
    if x != &p.scale(&s) {
        return inconsistent(format!("{what} is not a multiple of its idempotent"));
    }
    Ok(s)
}

/// `τ*_i(θ*_i) = (θ*_i − θ*_0)⋯(θ*_i − θ*_{i−1})`.
fn taustar_values(thetastar: &[Scalar]) -> Vec<Scalar> {
    (0..thetastar.len())
        .map(|i| {
            thetastar[..i]
                .iter()
                .fold(thetastar[0].field().one(), |acc, t| acc * (&thetastar[i] - t))
        })
        .collect()
}

/// Reads off `a_i`, `x_i`, `φ_i`, `b_i`, `c_i` from a Leonard system and
/// checks their mutual relations.
pub fn derive_leonard_data(
    sys: &TridiagonalSystem,
    split: &SplitDecomposition,
) -> Result<LeonardData> {
    if !sys.is_leonard() {
        return Err(Error::TypeMismatch(format!("shape {:?} is not all ones", sys.shape())));
    }
    let d = sys.d();
    let es = sys.dual_idempotents();
    let a_mat = sys.a();
    let mut a = Vec::with_capacity(d + 1);
    for i in 0..=d {
        a.push(scalar_multiple(&(&(&es[i] * a_mat) * &es[i]), &es[i], &format!("E*_{i}AE*_{i}"))?);
    }
    let mut x = Vec::with_capacity(d);
    let mut phi = Vec::with_capacity(d);
    let rl = &split.calr * &split.call;
    for i in 1..=d {
        let m = &(&(&(&es[i] * a_mat) * &es[i - 1]) * a_mat) * &es[i];
        x.push(scalar_multiple(&m, &es[i], &format!("E*_{i}AE*_{}AE*_{i}", i - 1))?);
        phi.push(scalar_multiple(&(&rl * &split.f[i]), &split.f[i], &format!("𝓡𝓛F_{i}"))?);
    }
    if let Some(i) = phi.iter().position(Scalar::is_zero) {
        return inconsistent(format!("φ_{} = 0", i + 1));
    }
    let thetastar = sys.thetastar().to_vec();
    let taustar = taustar_values(&thetastar);
    let b: Vec<Scalar> = (0..d).map(|i| &phi[i] * &taustar[i] / &taustar[i + 1]).collect();
    let c: Vec<Scalar> = (1..=d).map(|i| &x[i - 1] / &phi[i - 1] * &taustar[i] / &taustar[i - 1]).collect();
    let data = LeonardData { d, theta: sys.theta().to_vec(), thetastar, phi, a, x, b, c, taustar };

    let theta0 = &data.theta[0];
    let zero = theta0.field().zero();
    for i in 0..=d {
        let ci = if i == 0 { zero.clone() } else { data.c[i - 1].clone() };
        let bi = if i == d { zero.clone() } else { data.b[i].clone() };
        if &(&ci + &data.a[i]) + &bi != *theta0 {
            return inconsistent(format!("c_{i} + a_{i} + b_{i} ≠ θ_0"));
        }
        if i >= 1 && data.x[i - 1] != &data.c[i - 1] * &data.b[i - 1] {
            return inconsistent(format!("x_{i} ≠ c_ib_(i−1)"));
        }
    }
    let sum = |v: &[Scalar]| v.iter().fold(zero.clone(), |acc, s| acc + s);
    if sum(&data.a) != sum(&data.theta) {
        return inconsistent("Σa_i ≠ Σθ_i".into());
    }
    if data.b.iter().chain(&data.c).chain(&data.x).any(Scalar::is_zero) {
        return inconsistent("a vanishing b_i, c_i or x_i".into());
    }
    Ok(data)
}

fn split_basis_pair(field: Field, theta: &[Scalar], thetastar: &[Scalar], phi: &[Scalar]) -> (Matrix, Matrix) {
    let n = theta.len();
    let a = Matrix::from_fn(field, n, n, |i, j| match () {
        _ if i == j => theta[i].clone(),
        _ if i == j + 1 => field.one(),
        _ => field.zero(),
    });
    let astar = Matrix::from_fn(field, n, n, |i, j| match () {
        _ if i == j => thetastar[i].clone(),
        _ if j == i + 1 => phi[i].clone(),
        _ => field.zero(),
    });
    (a, astar)
}

/// Builds the Leonard system whose split-basis matrices carry `theta` and
/// `1` (for `A`) and `thetastar` and `phi` (for `A*`).
pub fn construct_leonard(
    field: Field,
    theta: &[Scalar],
    thetastar: &[Scalar],
    phi: &[Scalar],
) -> Result<(TridiagonalSystem, LeonardData)> {
    if theta.is_empty() || theta.len() != thetastar.len() || phi.len() + 1 != theta.len() {
        return Err(Error::Inadmissible(format!(
            "need d+1 eigenvalues, d+1 dual eigenvalues and d split values, got {}, {}, {}",
            theta.len(),
            thetastar.len(),
            phi.len()
        )));
    }
    for s in theta.iter().chain(thetastar).chain(phi) {
        field.check(s)?;
    }
    for (name, seq) in [("theta", theta), ("thetastar", thetastar)] {
        for i in 0..seq.len() {
            if seq[..i].contains(&seq[i]) {
                return Err(Error::Inadmissible(format!("{name} has repeated value {}", seq[i])));
            }
        }
    }
    if let Some(i) = phi.iter().position(Scalar::is_zero) {
        return Err(Error::Inadmissible(format!("phi_{} is zero", i + 1)));
    }
    let (a, astar) = split_basis_pair(field, theta, thetastar, phi);
    let systems = verify_pair(&a, &astar).map_err(|err| match err {
        Error::Rejected(r) => Error::Inadmissible(format!("not a Leonard system: {r}")),
        other => other,
    })?;
    let sys = systems
        .into_iter()
        .find(|s| s.theta() == theta && s.thetastar() == thetastar)
        .ok_or_else(|| Error::Inadmissible("the given orderings are not standard".into()))?;
    if !sys.is_leonard() {
        return Err(Error::Inadmissible(format!("shape {:?} is not all ones", sys.shape())));
    }
    let split = compute_split(&sys)?;
    let data = derive_leonard_data(&sys, &split)?;
    if data.phi != phi {
        return inconsistent("recovered split sequence differs from the input".into());
    }
    Ok((sys, data))
}

/// A basis of `V` and the matrices representing `A`, `A*` in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub name: &'static str,
    /// Basis vectors as columns.
    pub basis: Matrix,
    pub a: Matrix,
    pub astar: Matrix,
}

fn represent(name: &'static str, basis: Matrix, sys: &TridiagonalSystem) -> Result<Representation> {
    let inv = inverse(&basis).map_err(|_| Error::Inconsistent(format!("{name} vectors are dependent")))?;
    let a = &(&inv * sys.a()) * &basis;
    let astar = &(&inv * sys.astar()) * &basis;
    Ok(Representation { name, basis, a, astar })
}

fn band(field: Field, n: usize, sub: &[Scalar], diag: &[Scalar], sup: &[Scalar]) -> Matrix {
    Matrix::from_fn(field, n, n, |i, j| {
        if i == j {
            diag.get(i).cloned().unwrap_or_else(|| field.zero())
        } else if i == j + 1 {
            sub.get(j).cloned().unwrap_or_else(|| field.zero())
        } else if j == i + 1 {
            sup.get(i).cloned().unwrap_or_else(|| field.zero())
        } else {
            field.zero()
        }
    })
}

/// The `{R^iζ}`, `{𝓡^iζ}` and `{E*_iξ}` bases with `ζ ∈ E*_0V` and
/// `ξ ∈ E_0V` normalized to have first nonzero coordinate 1. Each
/// representation, and those of `R`, `L`, `F`, `𝓡`, `𝓛` where displayed, is
/// checked against its expected band shape.
pub fn change_of_basis_reps(
    sys: &TridiagonalSystem,
    rfl: &RflDecomposition,
    split: &SplitDecomposition,
    data: &LeonardData,
) -> Result<[Representation; 3]> {
    let field = sys.field();
    let n = sys.dim();
    let d = sys.d();
    let zeta = Subspace::span(sys.estar(0)).basis().clone();
    let xi = Subspace::span(sys.e(0)).basis().clone();
    let column_basis = |mut v: Matrix, step: &Matrix| {
        let mut cols = vec![v.clone()];
        for _ in 0..d {
            v = step * &v;
            cols.push(v.clone());
        }
        let refs: Vec<&Matrix> = cols.iter().collect();
        Matrix::hstack(field, n, &refs)
    };
    let ones = vec![field.one(); d];
    let none: Vec<Scalar> = Vec::new();

    let raising = represent("R^i zeta", column_basis(zeta.clone(), &rfl.r), sys)?;
    let split_rep = represent("calR^i zeta", column_basis(zeta, &split.calr), sys)?;
    let cols: Vec<Matrix> = sys.dual_idempotents().iter().map(|e| e * &xi).collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    let dual = represent("E*_i xi", Matrix::hstack(field, n, &refs), sys)?;

    let diag_star = band(field, n, &none, &data.thetastar, &none);
    let expect = |rep: &Representation, what: &str, got: &Matrix, want: Matrix| -> Result<()> {
        if *got != want {
            return inconsistent(format!("{what} in the {} basis has the wrong form", rep.name));
        }
        Ok(())
    };
    let conj = |rep: &Representation, m: &Matrix| {
        &(&inverse(&rep.basis).expect("checked invertible") * m) * &rep.basis
    };
    expect(&raising, "A", &raising.a, band(field, n, &ones, &data.a, &data.x))?;
    expect(&raising, "A*", &raising.astar, diag_star.clone())?;
    expect(&raising, "R", &conj(&raising, &rfl.r), band(field, n, &ones, &none, &none))?;
    expect(&raising, "L", &conj(&raising, &rfl.l), band(field, n, &none, &none, &data.x))?;
    expect(&raising, "F", &conj(&raising, &rfl.f), band(field, n, &none, &data.a, &none))?;
    expect(&split_rep, "A", &split_rep.a, band(field, n, &ones, &data.theta, &none))?;
    expect(&split_rep, "A*", &split_rep.astar, band(field, n, &none, &data.thetastar, &data.phi))?;
    expect(&split_rep, "𝓡", &conj(&split_rep, &split.calr), band(field, n, &ones, &none, &none))?;
    expect(&split_rep, "𝓛", &conj(&split_rep, &split.call), band(field, n, &none, &none, &data.phi))?;
    expect(&dual, "A", &dual.a, band(field, n, &data.c, &data.a, &data.b))?;
    expect(&dual, "A*", &dual.astar, diag_star)?;
    expect(&dual, "R", &conj(&dual, &rfl.r), band(field, n, &data.c, &none, &none))?;
    expect(&dual, "L", &conj(&dual, &rfl.l), band(field, n, &none, &none, &data.b))?;

    let reps = [raising, split_rep, dual];
    for p in 0..3 {
        for q in 0..3 {
            let change = &inverse(&reps[p].basis).expect("invertible") * &reps[q].basis;
            let back = inverse(&change).expect("invertible");
            if &(&back * &reps[p].a) * &change != reps[q].a || &(&back * &reps[p].astar) * &change != reps[q].astar {
                return inconsistent(format!("{} and {} representations are not conjugate", reps[p].name, reps[q].name));
            }
        }
    }
    Ok(reps)
}

/// The scalar identities satisfied by a Leonard system, plus the matrix
/// identities `𝓡𝓛F_i = φ_iF_i`, `𝓛𝓡F_i = φ_{i+1}F_i` and their variants.
pub fn check_leonard_identities(
    sys: &TridiagonalSystem,
    split: &SplitDecomposition,
    data: &LeonardData,
    params: &RelationParameters,
) -> Result<Vec<Residual>> {
    let d = data.d;
    let id = CheckId::Leonard;
    let coeffs = RflCoefficients::new(sys, params)?;
    let th = &data.theta;
    let ts = &data.thetastar;
    let a = &data.a;
    let field = sys.field();
    let zero = field.zero();
    let one = field.one();
    let two = field.int(2);
    let mut out = Vec::new();

    for i in 2..=d {
        let lhs = &(&(&coeffs.gminus[&i] * &a[i - 2]) + &a[i - 1]) + &(&coeffs.gplus[&i] * &a[i]);
        out.push(Residual::scalar(id, "g-_ia_{i−2} + a_{i−1} + g+_ia_i − γ", &[i], &(&lhs - &params.gamma)));
    }
    let coefficient_times = |c: &Coefficient, v: Scalar, what: &str| -> Result<Scalar> {
        match c {
            Coefficient::Defined(s) => Ok(s * &v),
            Coefficient::Indeterminate if v.is_zero() => Ok(v),
            Coefficient::Indeterminate => Err(Error::Inconsistent(format!("indeterminate coefficient multiplies nonzero {what}"))),
        }
    };
    for i in 1..=d {
        let em = coefficient_times(&coeffs.eminus[&i], data.x(i - 1), "x_{i−1}")?;
        let ep = coefficient_times(&coeffs.eplus[&i], data.x(i + 1), "x_{i+1}")?;
        let beta = &params.beta;
        let quad = &(&(&a[i] * &a[i]) - &(&(beta * &a[i - 1]) * &a[i])) + &(&a[i - 1] * &a[i - 1]);
        let lhs = &(&(&em + &(&(beta + &two) * &data.x(i))) + &ep) + &quad;
        let rhs = &(&params.gamma * &(&a[i] + &a[i - 1])) + &params.rho;
        out.push(Residual::scalar(
            id,
            "e-_ix_{i−1} + (β+2)x_i + e+_ix_{i+1} + a_i² − βa_{i−1}a_i + a_{i−1}² − γ(a_i + a_{i−1}) − ϱ",
            &[i],
            &(&lhs - &rhs),
        ));
    }

    for i in 0..=d {
        let mut rhs = th[i].clone();
        if i >= 1 {
            rhs = &rhs + &(&data.phi(i) / &(&ts[i] - &ts[i - 1]));
        }
        if i < d {
            rhs = &rhs + &(&data.phi(i + 1) / &(&ts[i] - &ts[i + 1]));
        }
        out.push(Residual::scalar(id, "a_i − θ_i − φ_i/(θ*_i − θ*_{i−1}) − φ_{i+1}/(θ*_i − θ*_{i+1})", &[i], &(&a[i] - &rhs)));
    }

    // Shared right-hand side of the x_i and c_i identities.
    let rhs_m4 = |i: usize| {
        let mut r = -data.phi(i);
        if i >= 2 {
            r = &r + &(&data.phi(i - 1) * &(&(&ts[i] - &ts[i - 1]) / &(&ts[i] - &ts[i - 2])));
        }
        if i < d {
            r = &r + &(&data.phi(i + 1) * &(&(&ts[i - 1] - &ts[i]) / &(&ts[i - 1] - &ts[i + 1])));
        }
        &r - &(&(&th[i - 1] - &th[i]) * &(&ts[i - 1] - &ts[i]))
    };
    for i in 1..=d {
        let gap = &ts[i - 1] - &ts[i];
        let sq = &gap * &gap;
        let lhs = &(&sq * &data.x(i)) / &data.phi(i);
        out.push(Residual::scalar(id, "(θ*_{i−1} − θ*_i)²x_i/φ_i − rhs_i", &[i], &(&lhs - &rhs_m4(i))));
        let lhs = &(&(&data.c[i - 1] * &sq) * &data.taustar[i - 1]) / &data.taustar[i];
        out.push(Residual::scalar(id, "c_i(θ*_{i−1} − θ*_i)²τ*_{i−1}(θ*_{i−1})/τ*_i(θ*_i) − rhs_i", &[i], &(&lhs - &rhs_m4(i))));
    }

    let prod = |seq: &[Scalar], at: usize, ks: std::ops::RangeInclusive<usize>| {
        ks.fold(one.clone(), |acc, k| acc * (&seq[at] - &seq[k]))
    };
    for i in 0..=d {
        for j in i + 2..=d {
            let mut sum = zero.clone();
            let mut dual = zero.clone();
            for s in i..=j {
                let den = &prod(ts, i, i + 1..=s) * &prod(ts, j, s..=j - 1);
                sum = &sum + &(&th[s] / &den);
                let den = &prod(th, j, s..=j - 1) * &prod(th, i, i + 1..=s);
                dual = &dual + &(&ts[s] / &den);
            }
            for s in 0..=j {
                let r = s + 1;
                if r < i || r > d {
                    continue;
                }
                let den = &prod(ts, i, i + 1..=r) * &prod(ts, j, s..=j - 1);
                sum = &sum + &(&data.phi(r) / &den);
                let den = &prod(th, j, s..=j - 1) * &prod(th, i, i + 1..=r);
                dual = &dual + &(&data.phi(r) / &den);
            }
            out.push(Residual::scalar(id, "Σθ_s/(…) + Σφ_r/(…)", &[i, j], &sum));
            out.push(Residual::scalar(id, "Σθ*_s/(…) + Σφ_r/(…)", &[i, j], &dual));
        }
    }

    let b1 = &params.beta + &one;
    for j in 2..=d {
        let lhs = &(&(&data.phi(j - 2) - &(&b1 * &data.phi(j - 1))) + &(&b1 * &data.phi(j))) - &data.phi(j + 1);
        let rhs = &b1 * &crate::bridge::omega(sys, j);
        out.push(Residual::scalar(
            id,
            "φ_{j−2} − (β+1)φ_{j−1} + (β+1)φ_j − φ_{j+1} − (β+1)e_j",
            &[j],
            &(&lhs - &rhs),
        ));
    }

    let (r, l, f) = (&split.calr, &split.call, &split.f);
    let rl = r * l;
    let lr = l * r;
    for i in 1..=d {
        let target = f[i].scale(&data.phi(i));
        out.push(Residual::matrix(id, "F_i𝓡𝓛 − φ_iF_i", &[i], &(&(&f[i] * &rl) - &target)));
        out.push(Residual::matrix(id, "𝓡F_{i−1}𝓛 − φ_iF_i", &[i], &(&(&(r * &f[i - 1]) * l) - &target)));
        out.push(Residual::matrix(id, "𝓡𝓛F_i − φ_iF_i", &[i], &(&(&rl * &f[i]) - &target)));
    }
    for i in 0..d {
        let target = f[i].scale(&data.phi(i + 1));
        out.push(Residual::matrix(id, "F_i𝓛𝓡 − φ_{i+1}F_i", &[i], &(&(&f[i] * &lr) - &target)));
        out.push(Residual::matrix(id, "𝓛F_{i+1}𝓡 − φ_{i+1}F_i", &[i], &(&(&(l * &f[i + 1]) * r) - &target)));
        out.push(Residual::matrix(id, "𝓛𝓡F_i − φ_{i+1}F_i", &[i], &(&(&lr * &f[i]) - &target)));
    }
    let es = sys.dual_idempotents();
    for i in 0..d {
        let m = &(&(&(&es[i] * sys.a()) * &es[i + 1]) * sys.a()) * &es[i];
        out.push(Residual::matrix(id, "E*_iAE*_{i+1}AE*_i − x_{i+1}E*_i", &[i], &(&m - &es[i].scale(&data.x(i + 1)))));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rfl::compute_rfl;
    use crate::system::compute_relation_parameters;

    fn ints(f: Field, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&n| f.int(n)).collect()
    }

    #[test]
    fn split_basis_construction() {
        let q = Field::Rational;
        let th = ints(q, &[2, 0, -2]);
        let (sys, data) = construct_leonard(q, &th, &th, &ints(q, &[-4, -4])).unwrap();
        assert_eq!(sys.shape(), &[1, 1, 1]);
        assert_eq!(data.a, ints(q, &[0, 0, 0]));
        assert_eq!(data.x, ints(q, &[2, 2]));
        assert_eq!(data.b, ints(q, &[2, 1]));
        assert_eq!(data.c, ints(q, &[1, 2]));
        assert_eq!(data.taustar, ints(q, &[1, -2, 8]));
    }

    #[test]
    fn zero_phi_rejected() {
        let q = Field::Rational;
        let th = ints(q, &[2, 0, -2]);
        let err = construct_leonard(q, &th, &th, &ints(q, &[0, -4])).unwrap_err();
        assert!(matches!(err, Error::Inadmissible(_)));
    }

    #[test]
    fn inadmissible_split_sequence() {
        let q = Field::Rational;
        let th = ints(q, &[0, 1, 2]);
        let err = construct_leonard(q, &th, &th, &ints(q, &[1, 5])).unwrap_err();
        assert!(matches!(err, Error::Inadmissible(_)), "{err}");
    }

    #[test]
    fn representations_for_d1() {
        let q = Field::Rational;
        let th = ints(q, &[1, -1]);
        let (sys, data) = construct_leonard(q, &th, &th, &ints(q, &[-2])).unwrap();
        let rfl = compute_rfl(&sys).unwrap();
        let split = compute_split(&sys).unwrap();
        let reps = change_of_basis_reps(&sys, &rfl, &split, &data).unwrap();
        assert_eq!(reps[2].a, Matrix::from_ints(q, &[[0, 1], [1, 0]]));
        assert_eq!(reps[0].astar, Matrix::diag(q, &th));
        let params = compute_relation_parameters(&sys, None).unwrap();
        assert!(check_leonard_identities(&sys, &split, &data, &params).unwrap().iter().all(|r| r.is_zero));
    }
}
