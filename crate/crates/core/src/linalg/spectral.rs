use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

use super::{inverse, rank_kernel, Subspace};

/// The eigenvalues of a matrix that lie in its field, with eigenspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    /// Distinct eigenvalues in decreasing order with their eigenspaces.
    pub eigenpairs: Vec<(Scalar, Subspace)>,
    /// True when the eigenspaces span the whole space.
    pub diagonalizable: bool,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> Vec<Scalar> {
        self.eigenpairs.iter().map(|(t, _)| t.clone()).collect()
    }
}

/// Characteristic polynomial `det(xI − M)`, coefficients from degree 0 up,
/// by reduction to Hessenberg form.
pub fn characteristic_polynomial(m: &Matrix) -> Vec<Scalar> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let field = m.field();
    let n = m.rows();
    let mut h: Vec<Vec<Scalar>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    for col in 0..n.saturating_sub(2) {
        let m1 = col + 1;
        let Some(p) = (m1..n).find(|&i| !h[i][col].is_zero()) else {
            continue;
        };
        if p != m1 {
            h.swap(p, m1);
            for row in h.iter_mut() {
                row.swap(p, m1);
            }
        }
        let pivot_inv = h[m1][col].inv().expect("nonzero pivot");
        for i in m1 + 1..n {
            if h[i][col].is_zero() {
                continue;
            }
            let u = &h[i][col] * &pivot_inv;
            for k in 0..n {
                let t = &u * &h[m1][k];
                h[i][k] = &h[i][k] - &t;
            }
            for row in h.iter_mut() {
                let t = &u * &row[i];
                row[m1] = &row[m1] + &t;
            }
        }
    }
    // p_k = (x − h_kk) p_{k−1} − Σ_{i≥1} h_{k−i,k} (Π h_{j,j−1}) p_{k−i−1}
    let mut polys: Vec<Vec<Scalar>> = vec![vec![field.one()]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![field.zero(); k + 2];
        for (e, c) in prev.iter().enumerate() {
            next[e + 1] = &next[e + 1] + c;
            next[e] = &next[e] - &(&h[k][k] * c);
        }
        let mut t = field.one();
        for i in 1..=k {
            t = &t * &h[k - i + 1][k - i];
            let coeff = &h[k - i][k] * &t;
            if coeff.is_zero() {
                continue;
            }
            for (e, c) in polys[k - i].iter().enumerate() {
                next[e] = &next[e] - &(&coeff * c);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

fn rational_roots(poly: &[Scalar]) -> Vec<Scalar> {
    let fracs: Vec<&BigRational> = poly.iter().map(|c| c.as_rational().expect("rational")).collect();
    let den = fracs.iter().fold(BigInt::one(), |acc, f| acc.lcm(f.denom()));
    let ints: Vec<BigInt> = fracs.iter().map(|f| f.numer() * (&den / f.denom())).collect();
    let mut roots = BTreeSet::new();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(ints.len());
    if shift > 0 {
        roots.insert(BigRational::zero());
    }
    let ints = &ints[shift.min(ints.len())..];
    if ints.len() > 1 {
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
        let eval = |x: &BigRational| {
            ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
        };
        let leading = ints.last().expect("nonempty");
        for a in divisors(&ints[0]) {
            for b in divisors(leading) {
                for sign in [1, -1] {
                    let x = BigRational::new(&a * sign, b.clone());
                    if !roots.contains(&x) && eval(&x).is_zero() {
                        roots.insert(x);
                    }
                }
            }
        }
    }
    roots.into_iter().map(Scalar::from_rational).collect()
}

fn residue_roots(poly: &[Scalar], field: Field) -> Vec<Scalar> {
    let p = field.characteristic() as u128;
    let coeffs: Vec<u128> = poly.iter().map(|c| c.residue().expect("residue") as u128).collect();
    let mut roots = Vec::new();
    for x in field.elements().expect("prime field") {
        let v = x.residue().expect("residue") as u128;
        let value = coeffs.iter().rev().fold(0u128, |acc, c| (acc * v + c) % p);
        if value == 0 {
            roots.push(x);
        }
    }
    roots
}

/// All eigenvalues of `m` lying in its field, with their eigenspaces.
pub fn eigenvalues_in_field(m: &Matrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("eigenvalues of a {}x{} matrix", m.rows(), m.cols())));
    }
    let field = m.field();
    let n = m.rows();
    let poly = characteristic_polynomial(m);
    let mut roots = match field {
        Field::Rational => rational_roots(&poly),
        Field::Prime { .. } => residue_roots(&poly, field),
    };
    roots.sort_by(|a, b| b.display_cmp(a));
    let eigenpairs: Vec<(Scalar, Subspace)> = roots
        .into_iter()
        .map(|t| {
            let shifted = m - &Matrix::identity(field, n).scale(&t);
            let (_, space) = rank_kernel(&shifted);
            (t, space)
        })
        .collect();
    let total: usize = eigenpairs.iter().map(|(_, s)| s.dim()).sum();
    Ok(Spectrum { eigenpairs, diagonalizable: total == n })
}

/// The primitive idempotents `E_i = Π_{j≠i} (M − θ_j I)/(θ_i − θ_j)`.
pub fn lagrange_idempotents(m: &Matrix, thetas: &[Scalar]) -> Result<Vec<Matrix>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("idempotents of a {}x{} matrix", m.rows(), m.cols())));
    }
    let field = m.field();
    let n = m.rows();
    for t in thetas {
        field.check(t)?;
    }
    for (i, a) in thetas.iter().enumerate() {
        if thetas[..i].contains(a) {
            return Err(Error::RepeatedEigenvalue(a.to_string()));
        }
    }
    let id = Matrix::identity(field, n);
    let shifted: Vec<Matrix> = thetas.iter().map(|t| m - &id.scale(t)).collect();
    let idempotents: Vec<Matrix> = thetas
        .iter()
        .enumerate()
        .map(|(i, ti)| {
            let mut e = id.clone();
            for (j, tj) in thetas.iter().enumerate() {
                if j != i {
                    e = (&e * &shifted[j]).scale(&(ti - tj).inv().expect("distinct"));
                }
            }
            e
        })
        .collect();

    let mut sum = Matrix::zeros(field, n, n);
    let mut weighted = Matrix::zeros(field, n, n);
    for (e, t) in idempotents.iter().zip(thetas) {
        if e.is_zero() {
            return Err(Error::NotDiagonalizable);
        }
        sum = &sum + e;
        weighted = &weighted + &e.scale(t);
    }
    if sum != id || &weighted != m {
        return Err(Error::NotDiagonalizable);
    }
    for (i, ei) in idempotents.iter().enumerate() {
        for (j, ej) in idempotents.iter().enumerate() {
            let prod = ei * ej;
            let ok = if i == j { &prod == ei } else { prod.is_zero() };
            if !ok {
                return Err(Error::NotDiagonalizable);
            }
        }
    }
    Ok(idempotents)
}

/// Projections `F_i` onto each part along the sum of the others.
pub fn projectors_from_direct_sum(parts: &[Subspace]) -> Result<Vec<Matrix>> {
    let Some(first) = parts.first() else {
        return Err(Error::NotDirectSum);
    };
    let field = first.field();
    let n = first.ambient();
    for w in parts {
        field.check(&w.field().zero())?;
        if w.ambient() != n {
            return Err(Error::Dimension(format!("ambient dimensions {n} and {}", w.ambient())));
        }
    }
    let bases: Vec<&Matrix> = parts.iter().map(Subspace::basis).collect();
    let b = Matrix::hstack(field, n, &bases);
    if b.cols() != n {
        return Err(Error::NotDirectSum);
    }
    let binv = inverse(&b).map_err(|_| Error::NotDirectSum)?;
    let mut offset = 0;
    let mut out = Vec::with_capacity(parts.len());
    for w in parts {
        let block: Vec<usize> = (offset..offset + w.dim()).collect();
        out.push(&b.select_columns(&block) * &binv.select_rows(&block));
        offset += w.dim();
    }
    Ok(out)
}

/// `exp(cN) = Σ (cN)^k / k!` for nilpotent `N`.
pub fn nilpotent_exp_scaled(n: &Matrix, c: &Scalar) -> Result<Matrix> {
    if !n.is_square() {
        return Err(Error::Dimension(format!("exponential of a {}x{} matrix", n.rows(), n.cols())));
    }
    let field = n.field();
    field.check(c)?;
    let size = n.rows();
    let cn = n.scale(c);
    let mut terms = vec![Matrix::identity(field, size)];
    let mut power = Matrix::identity(field, size);
    let mut index = 0;
    for k in 1..=size {
        power = &power * n;
        if power.is_zero() {
            index = k;
            break;
        }
    }
    if size > 0 && index == 0 {
        return Err(Error::NotNilpotent);
    }
    let mut factorial = field.one();
    for k in 1..index {
        factorial = &factorial * &field.int(k as i64);
        if factorial.is_zero() {
            return Err(Error::FactorialNotInvertible(k, field));
        }
        let next = &terms[k - 1] * &cn;
        terms.push(next);
    }
    let mut sum = Matrix::zeros(field, size, size);
    let mut fact = field.one();
    for (k, t) in terms.iter().enumerate() {
        if k > 0 {
            fact = &fact * &field.int(k as i64);
        }
        sum = &sum + &t.scale(&fact.inv().expect("checked above"));
    }
    Ok(sum)
}
