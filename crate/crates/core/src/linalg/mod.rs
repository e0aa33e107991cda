//! Exact elimination-based linear algebra.

mod spectral;
mod subspace;

pub use spectral::{
    eigenvalues_in_field, lagrange_idempotents, nilpotent_exp_scaled, projectors_from_direct_sum,
    Spectrum,
};
pub use subspace::{subspace_intersect, subspace_sum, Subspace};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Reduced row echelon form. Returns the reduced rows and the pivot columns.
pub fn rref(m: &Matrix) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut rows: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for k in c..row.len() {
                if !pivot_row[k].is_zero() {
                    row[k] = &row[k] - &(&factor * &pivot_row[k]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Rank and null space of `m` (as a map on column vectors).
pub fn rank_kernel(m: &Matrix) -> (usize, Subspace) {
    let field = m.field();
    let (rows, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(field, m.cols(), free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, field.one());
        for (r, &pc) in pivots.iter().enumerate() {
            basis.set(pc, k, -&rows[r][f]);
        }
    }
    (pivots.len(), Subspace::span(&basis))
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("inverse of a {}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let aug = Matrix::hstack(m.field(), n, &[m, &Matrix::identity(m.field(), n)]);
    let (rows, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::Singular);
    }
    Ok(Matrix::from_fn(m.field(), n, n, |i, j| rows[i][n + j].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn identity_has_trivial_kernel() {
        let q = Field::Rational;
        let (r, k) = rank_kernel(&Matrix::identity(q, 2));
        assert_eq!(r, 2);
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn rank_one_kernel() {
        let q = Field::Rational;
        let (r, k) = rank_kernel(&Matrix::from_ints(q, &[[1, 2], [2, 4]]));
        assert_eq!(r, 1);
        let expected = Subspace::span(&Matrix::from_ints(q, &[[-2], [1]]));
        assert_eq!(k, expected);
    }

    #[test]
    fn all_ones_mod_three() {
        let f = Field::prime(3).unwrap();
        let (r, k) = rank_kernel(&Matrix::from_ints(f, &[[1, 1], [1, 1]]));
        assert_eq!(r, 1);
        assert_eq!(k, Subspace::span(&Matrix::from_ints(f, &[[1], [-1]])));
    }

    #[test]
    fn inverse_round_trip() {
        let q = Field::Rational;
        let m = Matrix::from_ints(q, &[[2, 1, 0], [1, 1, 1], [0, 3, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, Matrix::identity(q, 3));
        assert_eq!(inverse(&Matrix::from_ints(q, &[[1, 2], [2, 4]])), Err(Error::Singular));
    }
}
