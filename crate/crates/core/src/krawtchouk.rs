//! Systems with `θ_i = θ*_i = d − 2i`.

use crate::error::{Error, Rejection, Result};
use crate::leonard::{derive_leonard_data, LeonardData};
use crate::linalg::nilpotent_exp_scaled;
use crate::matrix::Matrix;
use crate::residual::{CheckId, Residual};
use crate::rfl::RflDecomposition;
use crate::scalar::{Field, Scalar};
use crate::split::{compute_split, SplitDecomposition};
use crate::suite::{run_suite, SuiteOptions, SystemReport};
use crate::system::{verify_pair, TridiagonalSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrawtchoukParams {
    d: usize,
    p: Scalar,
}

impl KrawtchoukParams {
    pub fn new(d: usize, p: Scalar) -> Result<KrawtchoukParams> {
        let field = p.field();
        if d == 0 {
            return Err(Error::Inadmissible("diameter must be at least 1".into()));
        }
        if let Field::Prime { p: q } = field {
            if q <= d as u64 {
                return Err(Error::Inadmissible(format!("characteristic {q} must exceed d = {d}")));
            }
        }
        if p.is_zero() || p.is_one() {
            return Err(Error::Inadmissible(format!("p = {p} must differ from 0 and 1")));
        }
        Ok(KrawtchoukParams { d, p })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> &Scalar {
        &self.p
    }

    pub fn field(&self) -> Field {
        self.p.field()
    }

    /// `d − 2i` for `0 ≤ i ≤ d`.
    pub fn eigenvalues(&self) -> Vec<Scalar> {
        krawtchouk_sequence(self.field(), self.d)
    }

    /// The closed forms for `a`, `b`, `c`, `x`, `φ`.
    pub fn closed_forms(&self) -> LeonardData {
        let f = self.field();
        let d = self.d as i64;
        let p = &self.p;
        let one = f.one();
        let q = &one - p;
        let two = f.int(2);
        let four = f.int(4);
        let theta = self.eigenvalues();
        let a = (0..=d).map(|i| &(&one - &(&two * p)) * &f.int(d - 2 * i)).collect();
        let b = (0..d).map(|i| &(&two * p) * &f.int(d - i)).collect();
        let c = (1..=d).map(|i| &(&two * &q) * &f.int(i)).collect();
        let x = (1..=d).map(|i| &(&(&four * p) * &q) * &f.int(i * (d - i + 1))).collect();
        let phi = (1..=d).map(|i| &(&four * p) * &f.int(i * (i - d - 1))).collect();
        let taustar = (0..=self.d)
            .map(|i| theta[..i].iter().fold(f.one(), |acc, t| acc * (&theta[i] - t)))
            .collect();
        LeonardData { d: self.d, thetastar: theta.clone(), theta, phi, a, x, b, c, taustar }
    }
}

fn krawtchouk_sequence(field: Field, d: usize) -> Vec<Scalar> {
    (0..=d).map(|i| field.int(d as i64 - 2 * i as i64)).collect()
}

pub fn is_krawtchouk(sys: &TridiagonalSystem) -> bool {
    let seq = krawtchouk_sequence(sys.field(), sys.d());
    sys.theta() == seq && sys.thetastar() == seq
}

/// The matrices of `A`, `A*` in the `{E*_iξ}` basis.
pub fn krawtchouk_pair(params: &KrawtchoukParams) -> (Matrix, Matrix) {
    let field = params.field();
    let n = params.d + 1;
    let data = params.closed_forms();
    let a = Matrix::from_fn(field, n, n, |i, j| {
        if i == j {
            data.a[i].clone()
        } else if j == i + 1 {
            data.b[i].clone()
        } else if i == j + 1 {
            data.c[j].clone()
        } else {
            field.zero()
        }
    });
    (a, Matrix::diag(field, &data.theta))
}

pub fn construct_krawtchouk(params: &KrawtchoukParams) -> Result<(TridiagonalSystem, LeonardData)> {
    let (a, astar) = krawtchouk_pair(params);
    let sys = verify_pair(&a, &astar)?
        .into_iter()
        .find(is_krawtchouk)
        .ok_or_else(|| Error::Inconsistent("no ordering with eigenvalues d − 2i".into()))?;
    let split = compute_split(&sys)?;
    let data = derive_leonard_data(&sys, &split)?;
    if data != params.closed_forms() {
        return Err(Error::Inconsistent("derived scalars differ from the closed forms".into()));
    }
    Ok((sys, data))
}

/// Dolan/Grady relations, commutator formulas for `R`, `F`, `L`, and the
/// exponential forms of `Ψ` and its companions.
pub fn check_krawtchouk_identities(
    sys: &TridiagonalSystem,
    rfl: &RflDecomposition,
    split: &SplitDecomposition,
) -> Result<Vec<Residual>> {
    if !is_krawtchouk(sys) {
        return Err(Error::TypeMismatch("eigenvalues are not d − 2i".into()));
    }
    let field = sys.field();
    let id = CheckId::Krawtchouk;
    let br = Matrix::commutator;
    let c = |n: i64| field.int(n);
    let (a, astar) = (sys.a(), sys.astar());
    let RflDecomposition { r, f, l } = rfl;
    let (cr, cl) = (&split.calr, &split.call);
    let mut out = Vec::new();
    let mut push = |name: &str, m: Matrix| out.push(Residual::matrix(id, name, &[], &m));

    let aas = br(a, astar);
    let asa = br(astar, a);
    push("[A,[A,[A,A*]]] − 4[A,A*]", &br(a, &br(a, &aas)) - &aas.scale(&c(4)));
    push("[A*,[A*,[A*,A]]] − 4[A*,A]", &br(astar, &br(astar, &asa)) - &asa.scale(&c(4)));
    push("[A*,L] − 2L", &br(astar, l) - &l.scale(&c(2)));
    push("[A*,F]", br(astar, f));
    push("[A*,R] + 2R", &br(astar, r) + &r.scale(&c(2)));
    let asasa = br(astar, &asa);
    let eighth = field.ratio(1, 8);
    push("R − ([A*,[A*,A]] − 2[A*,A])/8", r - &(&asasa - &asa.scale(&c(2))).scale(&eighth));
    push("F − A + [A*,[A*,A]]/4", &(f - a) + &asasa.scale(&field.ratio(1, 4)));
    push("L − ([A*,[A*,A]] + 2[A*,A])/8", l - &(&asasa + &asa.scale(&c(2))).scale(&eighth));
    push("[L,[L,F]]", br(l, &br(l, f)));
    push("[R,[R,F]]", br(r, &br(r, f)));
    push("[F,[F,L]] − 2[L,[L,R]] − 4L", &(&br(f, &br(f, l)) - &br(l, &br(l, r)).scale(&c(2))) - &l.scale(&c(4)));
    push("[F,[F,R]] − 2[R,[R,L]] − 4R", &(&br(f, &br(f, r)) - &br(r, &br(r, l)).scale(&c(2))) - &r.scale(&c(4)));
    push("[F,[L,R]]", br(f, &br(l, r)));

    let half = field.ratio(1, 2);
    let exp = nilpotent_exp_scaled(cl, &half)?;
    let exp_neg = nilpotent_exp_scaled(cl, &-half)?;
    push("ΣF_iE*_i − exp(𝓛/2)", &split.psi - &exp);
    push("ΣE*_iF_i − exp(−𝓛/2)", &split.psi_inv - &exp_neg);
    push("exp(𝓛/2)exp(−𝓛/2) − I", &(&exp * &exp_neg) - &sys.identity());
    push("exp(𝓛/2)R − 𝓡exp(𝓛/2)", &(&exp * r) - &(cr * &exp));
    let lr = br(cl, cr);
    let flat = &(a - cr) + &lr.scale(&field.ratio(1, 2));
    push("exp(𝓛/2)F − (A − 𝓡 + [𝓛,𝓡]/2)exp(𝓛/2)", &(&exp * f) - &(&flat * &exp));
    let low = &br(cl, &lr).scale(&eighth) - cl;
    push("exp(𝓛/2)L − (−𝓛 + [𝓛,[𝓛,𝓡]]/8)exp(𝓛/2)", &(&exp * l) - &(&low * &exp));

    let d = sys.d();
    let mut ad_l = cr.clone();
    let mut ad_r = cl.clone();
    let mut powers = Vec::new();
    for k in 1..=d + 2 {
        ad_l = br(cl, &ad_l);
        ad_r = br(cr, &ad_r);
        if k == 3 {
            push("[𝓛,[𝓛,[𝓛,𝓡]]]", ad_l.clone());
            push("[𝓡,[𝓡,[𝓡,𝓛]]]", ad_r.clone());
        }
        if k >= 3 {
            powers.push(Residual::matrix(id, "(ad 𝓛)^(ℓ+1)(𝓡)", &[k - 1], &ad_l));
            powers.push(Residual::matrix(id, "(ad 𝓡)^(ℓ+1)(𝓛)", &[k - 1], &ad_r));
        }
    }
    out.extend(powers);
    Ok(out)
}

/// Either the pair `A₁⊗I + I⊗A₂`, `A*₁⊗I + I⊗A*₂` passes verification, in
/// which case each resulting system carries its check report, or it fails
/// at a named axiom.
#[derive(Clone, Debug)]
pub enum KroneckerOutcome {
    Accepted(Vec<SystemReport>),
    Rejected(Rejection),
}

pub fn kronecker_sum_candidate(
    s1: &TridiagonalSystem,
    s2: &TridiagonalSystem,
    opts: &SuiteOptions,
) -> Result<KroneckerOutcome> {
    if s1.field() != s2.field() {
        return Err(Error::FieldMismatch(s1.field(), s2.field()));
    }
    let (i1, i2) = (s1.identity(), s2.identity());
    let ksum = |x: &Matrix, y: &Matrix| &Matrix::kron(x, &i2) + &Matrix::kron(&i1, y);
    let a = ksum(s1.a(), s2.a());
    let astar = ksum(s1.astar(), s2.astar());
    match verify_pair(&a, &astar) {
        Ok(systems) => {
            let reports = systems.into_iter().map(|s| run_suite(s, opts)).collect::<Result<_>>()?;
            Ok(KroneckerOutcome::Accepted(reports))
        }
        Err(Error::Rejected(r)) => Ok(KroneckerOutcome::Rejected(r)),
        Err(other) => Err(other),
    }
}
