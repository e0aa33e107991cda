//! Dense row-major matrices over a single [`Field`].

use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    /// Builds a matrix entry by entry. Panics if `f` yields an element of
    /// another field.
    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                assert_eq!(s.field(), field, "field mismatch at ({i}, {j})");
                data.push(s);
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix from rows, rejecting ragged input and foreign entries.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for s in row {
                field.check(&s)?;
                data.push(s);
            }
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    /// Parses rows of scalar strings.
    pub fn parse_rows<S: AsRef<str>>(field: Field, rows: &[Vec<S>]) -> Result<Matrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| field.parse(s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, parsed)
    }

    /// Convenience constructor from integer rows.
    pub fn from_ints<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Matrix {
        let rows = rows.iter().map(|r| r.as_ref().iter().map(|&n| field.int(n)).collect()).collect();
        Matrix::from_rows(field, rows).expect("rectangular integer rows")
    }

    pub fn diag(field: Field, entries: &[Scalar]) -> Matrix {
        let n = entries.len();
        Matrix::from_fn(field, n, n, |i, j| if i == j { entries[i].clone() } else { field.zero() })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert_eq!(s.field(), self.field, "field mismatch");
        self.data[i * self.cols + j] = s;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Matrix formed by the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, k| self.get(i, cols[k]).clone())
    }

    /// Matrix formed by the given rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |k, j| self.get(rows[k], j).clone())
    }

    /// A single column vector.
    pub fn column_vector(field: Field, entries: Vec<Scalar>) -> Matrix {
        let rows = entries.len();
        Matrix::from_fn(field, rows, 1, |i, _| entries[i].clone())
    }

    /// Horizontal concatenation. All blocks must share the row count and field.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            assert_eq!(b.field, field, "field mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.data[i * cols + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.cols;
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        assert_eq!(s.field(), self.field, "field mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|s| !s.is_zero()).count()
    }

    /// Row and column of the first nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.data.iter().position(|s| !s.is_zero()).map(|k| (k / self.cols, k % self.cols))
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(self.field.zero(), |acc, i| acc + self.get(i, i))
    }

    /// `[X, Y] = XY − YX`.
    pub fn commutator(x: &Matrix, y: &Matrix) -> Matrix {
        &(x * y) - &(y * x)
    }

    /// Kronecker product `X ⊗ Y`.
    pub fn kron(x: &Matrix, y: &Matrix) -> Matrix {
        assert_eq!(x.field, y.field, "field mismatch");
        Matrix::from_fn(x.field, x.rows * y.rows, x.cols * y.cols, |i, j| {
            x.get(i / y.rows, j / y.cols) * y.get(i % y.rows, j % y.cols)
        })
    }

    /// Entries as scalar strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect()
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn mul_rational(&self, other: &Matrix) -> Matrix {
        // Scale each row of `self` and each column of `other` to integers so an
        // output entry costs integer multiply-adds plus a single reduction.
        let rows: Vec<(Vec<BigInt>, BigInt)> =
            (0..self.rows).map(|i| integer_line(self.row(i).iter())).collect();
        let cols: Vec<(Vec<BigInt>, BigInt)> = (0..other.cols)
            .map(|j| integer_line((0..other.rows).map(|k| other.get(k, j))))
            .collect();
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for (r, rd) in &rows {
            for (c, cd) in &cols {
                let mut acc = BigInt::zero();
                for (a, b) in r.iter().zip(c) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                data.push(Scalar::from_rational(BigRational::new(acc, rd * cd)));
            }
        }
        Matrix { field: self.field, rows: self.rows, cols: other.cols, data }
    }

    fn mul_modular(&self, other: &Matrix, p: u64) -> Matrix {
        let lhs: Vec<u64> = self.data.iter().map(|s| s.residue().expect("residue")).collect();
        let rhs: Vec<u64> = other.data.iter().map(|s| s.residue().expect("residue")).collect();
        let field = self.field;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: u128 = 0;
                for k in 0..self.cols {
                    acc += lhs[i * self.cols + k] as u128 * rhs[k * other.cols + j] as u128;
                }
                data.push(field.int((acc % p as u128) as i64));
            }
        }
        Matrix { field, rows: self.rows, cols: other.cols, data }
    }
}

/// Integer numerators of a line of rationals over their common denominator.
fn integer_line<'a>(entries: impl Iterator<Item = &'a Scalar>) -> (Vec<BigInt>, BigInt) {
    let fracs: Vec<&BigRational> = entries.map(|s| s.as_rational().expect("rational")).collect();
    let den = fracs.iter().fold(BigInt::one(), |acc, f| acc.lcm(f.denom()));
    let nums = fracs.iter().map(|f| f.numer() * (&den / f.denom())).collect();
    (nums, den)
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field, "field mismatch");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        match self.field {
            Field::Rational => self.mul_rational(rhs),
            Field::Prime { p } => self.mul_modular(rhs, p),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Matrix> for Matrix {
            type Output = Matrix;
            fn $m(self, rhs: Matrix) -> Matrix { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Matrix> for Matrix {
            type Output = Matrix;
            fn $m(self, rhs: &Matrix) -> Matrix { (&self).$m(rhs) }
        }
        impl<'a> $tr<Matrix> for &'a Matrix {
            type Output = Matrix;
            fn $m(self, rhs: Matrix) -> Matrix { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ragged_and_mixed_rows_rejected() {
        let q = Field::Rational;
        let ragged = vec![vec![q.one()], vec![q.one(), q.zero()]];
        assert!(matches!(Matrix::from_rows(q, ragged), Err(Error::Dimension(_))));
        let f5 = Field::prime(5).unwrap();
        let mixed = vec![vec![q.one(), f5.one()]];
        assert!(matches!(Matrix::from_rows(q, mixed), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn rational_product_matches_entrywise_sum() {
        let q = Field::Rational;
        let a = Matrix::parse_rows(q, &[vec!["1/2", "2/3"], vec!["-1", "5/7"]]).unwrap();
        let b = Matrix::parse_rows(q, &[vec!["3", "1/4"], vec!["0", "-2/9"]]).unwrap();
        let expected = Matrix::from_fn(q, 2, 2, |i, j| {
            (0..2).fold(q.zero(), |acc, k| acc + a.get(i, k) * b.get(k, j))
        });
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn modular_product() {
        let f = Field::prime(7).unwrap();
        let a = Matrix::from_ints(f, &[[3, 4], [5, 6]]);
        let p = &a * &a;
        assert_eq!(p, Matrix::from_ints(f, &[[3 * 3 + 4 * 5, 3 * 4 + 4 * 6], [5 * 3 + 6 * 5, 5 * 4 + 6 * 6]]));
    }

    #[test]
    fn kron_and_commutator() {
        let q = Field::Rational;
        let x = Matrix::from_ints(q, &[[0, 1], [1, 0]]);
        let z = Matrix::from_ints(q, &[[1, 0], [0, -1]]);
        assert_eq!(Matrix::commutator(&z, &x), Matrix::from_ints(q, &[[0, 2], [-2, 0]]));
        let k = Matrix::kron(&x, &Matrix::identity(q, 2));
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(0, 2), &q.one());
        assert_eq!(k.nonzero_count(), 4);
    }
}
