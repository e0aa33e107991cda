//! The split decomposition `V = U_0 + ⋯ + U_d` and the split maps.

use crate::error::{Error, Result};
use crate::linalg::{projectors_from_direct_sum, rank, subspace_intersect, subspace_sum, Subspace};
use crate::matrix::Matrix;
use crate::residual::{CheckId, RankEntry, Residual};
use crate::system::TridiagonalSystem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDecomposition {
    /// `U_i = (E*_0V + ⋯ + E*_iV) ∩ (E_iV + ⋯ + E_dV)`.
    pub u: Vec<Subspace>,
    /// Projections `F_i` onto `U_i`.
    pub f: Vec<Matrix>,
    /// `A − Σ θ_iF_i`.
    pub calr: Matrix,
    /// `A* − Σ θ*_iF_i`.
    pub call: Matrix,
    /// `Σ F_iE*_i`.
    pub psi: Matrix,
    /// `Σ E*_iF_i`.
    pub psi_inv: Matrix,
}

fn inconsistent<T>(what: String) -> Result<T> {
    Err(Error::Inconsistent(format!("split decomposition: {what}")))
}

pub fn compute_split(sys: &TridiagonalSystem) -> Result<SplitDecomposition> {
    let d = sys.d();
    let n = sys.dim();
    let field = sys.field();
    let es = sys.dual_idempotents();
    let e = sys.idempotents();

    let mut prefix = Vec::with_capacity(d + 1);
    let mut acc = Subspace::zero(field, n);
    for m in es {
        acc = subspace_sum(&acc, &Subspace::span(m))?;
        prefix.push(acc.clone());
    }
    let mut suffix = vec![Subspace::zero(field, n); d + 1];
    let mut acc = Subspace::zero(field, n);
    for i in (0..=d).rev() {
        acc = subspace_sum(&acc, &Subspace::span(&e[i]))?;
        suffix[i] = acc.clone();
    }
    let u = (0..=d)
        .map(|i| subspace_intersect(&prefix[i], &suffix[i]))
        .collect::<Result<Vec<_>>>()?;
    for (i, w) in u.iter().enumerate() {
        if w.dim() != sys.shape()[i] {
            return inconsistent(format!("dim U_{i} = {} but ρ_{i} = {}", w.dim(), sys.shape()[i]));
        }
    }
    let f = match projectors_from_direct_sum(&u) {
        Ok(f) => f,
        Err(Error::NotDirectSum) => return inconsistent("summands do not form a direct sum".into()),
        Err(other) => return Err(other),
    };
    let mut partial = Subspace::zero(field, n);
    for i in 0..=d {
        partial = subspace_sum(&partial, &u[i])?;
        if partial != prefix[i] {
            return inconsistent(format!("U_0 + ⋯ + U_{i} differs from the E* prefix sum"));
        }
    }
    let mut partial = Subspace::zero(field, n);
    for i in (0..=d).rev() {
        partial = subspace_sum(&partial, &u[i])?;
        if partial != suffix[i] {
            return inconsistent(format!("U_{i} + ⋯ + U_d differs from the E suffix sum"));
        }
    }

    let mut calr = sys.a().clone();
    let mut call = sys.astar().clone();
    let mut psi = Matrix::zeros(field, n, n);
    let mut psi_inv = Matrix::zeros(field, n, n);
    for i in 0..=d {
        calr = &calr - &f[i].scale(&sys.theta()[i]);
        call = &call - &f[i].scale(&sys.thetastar()[i]);
        psi = &psi + &(&f[i] * &es[i]);
        psi_inv = &psi_inv + &(&es[i] * &f[i]);
    }
    let id = sys.identity();
    if &psi * &psi_inv != id || &psi_inv * &psi != id {
        return inconsistent("Σ F_iE*_i and Σ E*_iF_i are not mutually inverse".into());
    }
    if !calr.pow(d + 1).is_zero() || !call.pow(d + 1).is_zero() {
        return inconsistent("split maps not nilpotent of index ≤ d+1".into());
    }
    for i in 0..=d {
        let up = &calr * &f[i];
        let up_ok = if i < d { up == &f[i + 1] * &up } else { up.is_zero() };
        let down = &call * &f[i];
        let down_ok = if i > 0 { down == &f[i - 1] * &down } else { down.is_zero() };
        if !up_ok || !down_ok {
            return inconsistent(format!("split maps leave the expected summands at index {i}"));
        }
        for j in i + 1..=d {
            if !(&f[j] * &es[i]).is_zero() || !(&es[j] * &f[i]).is_zero() {
                return inconsistent(format!("F_{j}E*_{i} or E*_{j}F_{i} is nonzero"));
            }
        }
        if &(&f[i] * &es[i]) * &f[i] != f[i] || &(&es[i] * &f[i]) * &es[i] != es[i] {
            return inconsistent(format!("F_iE*_iF_i = F_i or E*_iF_iE*_i = E*_i fails at {i}"));
        }
        let rho = sys.shape()[i];
        let ranks = [
            rank(&(&f[i] * &es[i])),
            rank(&(&es[i] * &f[i])),
            rank(&(&f[i] * &e[i])),
            rank(&(&e[i] * &f[i])),
        ];
        if ranks.iter().any(|&r| r != rho) {
            return inconsistent(format!("ranks {ranks:?} at index {i}, expected {rho}"));
        }
    }
    Ok(SplitDecomposition { u, f, calr, call, psi, psi_inv })
}

/// How `A`, `A*`, the split maps and `Ψ` act on the split summands.
pub fn check_split_actions(sys: &TridiagonalSystem, split: &SplitDecomposition) -> Vec<Residual> {
    let d = sys.d();
    let id = CheckId::SplitActions;
    let SplitDecomposition { f, calr, call, psi, psi_inv, .. } = split;
    let es = sys.dual_idempotents();
    let ident = sys.identity();
    let mut out = Vec::new();
    let a = sys.a();
    let astar = sys.astar();
    let fa: Vec<Matrix> = f.iter().map(|fi| fi * a).collect();
    let fas: Vec<Matrix> = f.iter().map(|fi| fi * astar).collect();
    for i in 0..=d {
        for j in 0..=d {
            let diff = i as isize - j as isize;
            if diff != 0 && diff != 1 {
                out.push(Residual::matrix(id, "F_iAF_j", &[i, j], &(&fa[i] * &f[j])));
            }
            if diff != 0 && diff != -1 {
                out.push(Residual::matrix(id, "F_iA*F_j", &[i, j], &(&fas[i] * &f[j])));
            }
        }
    }
    for i in 0..=d {
        let fi = &f[i];
        out.push(Residual::matrix(id, "F_iAF_i − θ_iF_i", &[i], &(&(&fa[i] * fi) - &fi.scale(&sys.theta()[i]))));
        out.push(Residual::matrix(
            id,
            "F_iA*F_i − θ*_iF_i",
            &[i],
            &(&(&fas[i] * fi) - &fi.scale(&sys.thetastar()[i])),
        ));
        let rf = calr * fi;
        let lf = call * fi;
        if i < d {
            out.push(Residual::matrix(id, "F_{i+1}AF_i − 𝓡F_i", &[i], &(&(&fa[i + 1] * fi) - &rf)));
            out.push(Residual::matrix(id, "𝓡F_i − F_{i+1}𝓡", &[i], &(&rf - &(&f[i + 1] * calr))));
        }
        if i > 0 {
            out.push(Residual::matrix(id, "F_{i−1}A*F_i − 𝓛F_i", &[i], &(&(&fas[i - 1] * fi) - &lf)));
            out.push(Residual::matrix(id, "𝓛F_i − F_{i−1}𝓛", &[i], &(&lf - &(&f[i - 1] * call))));
        }
        out.push(Residual::matrix(id, "𝓡^(d−i+1)F_i", &[i], &(&calr.pow(d - i + 1) * fi)));
        out.push(Residual::matrix(id, "𝓛^(i+1)F_i", &[i], &(&call.pow(i + 1) * fi)));
        let shifted = &(calr - a) + &ident.scale(&sys.theta()[i]);
        out.push(Residual::matrix(id, "(𝓡 − A + θ_iI)F_i", &[i], &(&shifted * fi)));
        let shifted = &(call - astar) + &ident.scale(&sys.thetastar()[i]);
        out.push(Residual::matrix(id, "(𝓛 − A* + θ*_iI)F_i", &[i], &(&shifted * fi)));
        out.push(Residual::matrix(id, "F_iE*_iF_i − F_i", &[i], &(&(&(fi * &es[i]) * fi) - fi)));
        out.push(Residual::matrix(id, "E*_iF_iE*_i − E*_i", &[i], &(&(&(&es[i] * fi) * &es[i]) - &es[i])));
        out.push(Residual::matrix(id, "ΨE*_i − F_iΨ", &[i], &(&(psi * &es[i]) - &(fi * psi))));
        for j in i + 1..=d {
            out.push(Residual::matrix(id, "F_jE*_i", &[i, j], &(&f[j] * &es[i])));
            out.push(Residual::matrix(id, "E*_jF_i", &[i, j], &(&es[j] * fi)));
        }
    }
    out.push(Residual::matrix(id, "ΨΨ⁻¹ − I", &[], &(&(psi * psi_inv) - &ident)));
    out.push(Residual::matrix(id, "Ψ⁻¹Ψ − I", &[], &(&(psi_inv * psi) - &ident)));
    out
}

/// Ranks of `𝓡^{j−i}F_i` and `𝓛^{j−i}F_j` with their expected values.
pub fn check_split_bijectivity(sys: &TridiagonalSystem, split: &SplitDecomposition) -> Vec<RankEntry> {
    let d = sys.d();
    let rho = sys.shape();
    let mut rp = vec![sys.identity()];
    let mut lp = vec![sys.identity()];
    for k in 1..=d {
        let r = &rp[k - 1] * &split.calr;
        let l = &lp[k - 1] * &split.call;
        rp.push(r);
        lp.push(l);
    }
    let mut out = Vec::new();
    for i in 0..=d {
        for j in i..=d {
            let k = j - i;
            out.push(RankEntry {
                map: "𝓡^(j-i)F_i".into(),
                i,
                j,
                rank: rank(&(&rp[k] * &split.f[i])),
                expected: if i + j <= d { rho[i] } else { rho[j] },
            });
            out.push(RankEntry {
                map: "𝓛^(j-i)F_j".into(),
                i,
                j,
                rank: rank(&(&lp[k] * &split.f[j])),
                expected: if i + j >= d { rho[j] } else { rho[i] },
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::krawtchouk::{construct_krawtchouk, KrawtchoukParams};
    use crate::scalar::Field;

    fn system(d: usize) -> TridiagonalSystem {
        let q = Field::Rational;
        construct_krawtchouk(&KrawtchoukParams::new(d, q.ratio(1, 3)).unwrap()).unwrap().0
    }

    #[test]
    fn projectors_resolve_identity() {
        let sys = system(3);
        let split = compute_split(&sys).unwrap();
        let total = split.f.iter().fold(Matrix::zeros(sys.field(), 4, 4), |acc, f| &acc + f);
        assert_eq!(total, sys.identity());
        assert!(split.u.iter().all(|u| u.dim() == 1));
        assert_eq!(split.u[0], Subspace::span(sys.estar(0)));
        assert_eq!(split.u[3], Subspace::span(sys.e(3)));
    }

    #[test]
    fn split_actions_and_bijectivity() {
        let sys = system(2);
        let split = compute_split(&sys).unwrap();
        assert!(check_split_actions(&sys, &split).iter().all(|r| r.is_zero));
        let ranks = check_split_bijectivity(&sys, &split);
        assert_eq!(ranks.len(), 2 * 6);
        assert!(ranks.iter().all(RankEntry::matches));
    }
}
