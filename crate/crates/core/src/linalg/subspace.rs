use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

use super::{rank_kernel, rref};

/// A subspace of `field^ambient`, stored as a basis in reduced column echelon
/// form so that equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Column space of `m`.
    pub fn span(m: &Matrix) -> Subspace {
        let (rows, _) = rref(&m.transpose());
        let field = m.field();
        let basis = Matrix::from_fn(field, m.rows(), rows.len(), |i, k| rows[k][i].clone());
        Subspace { basis }
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(field, ambient, 0) }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::identity(field, ambient) }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient(), "ambient mismatch");
        let col = Matrix::column_vector(self.field(), v.to_vec());
        let joined = Matrix::hstack(self.field(), self.ambient(), &[&self.basis, &col]);
        super::rank(&joined) == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|k| self.contains_vector(&other.basis.column(k)))
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        if self.ambient() != other.ambient() {
            return Err(Error::Dimension(format!(
                "ambient dimensions {} and {}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }
}

/// `W1 ∩ W2`, from the kernel of `[B1 | −B2]`.
pub fn subspace_intersect(w1: &Subspace, w2: &Subspace) -> Result<Subspace> {
    w1.compatible(w2)?;
    let field = w1.field();
    let n = w1.ambient();
    if w1.dim() == 0 || w2.dim() == 0 {
        return Ok(Subspace::zero(field, n));
    }
    let neg = -w2.basis();
    let joint = Matrix::hstack(field, n, &[w1.basis(), &neg]);
    let (_, kernel) = rank_kernel(&joint);
    let k1: Vec<usize> = (0..w1.dim()).collect();
    let coeffs = kernel.basis().select_rows(&k1);
    Ok(Subspace::span(&(w1.basis() * &coeffs)))
}

/// `W1 + W2`.
pub fn subspace_sum(w1: &Subspace, w2: &Subspace) -> Result<Subspace> {
    w1.compatible(w2)?;
    Ok(Subspace::span(&Matrix::hstack(w1.field(), w1.ambient(), &[w1.basis(), w2.basis()])))
}
