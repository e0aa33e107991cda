//! Exact field elements.
//!
//! A [`Scalar`] is either a reduced big-integer fraction or a residue modulo an
//! odd prime. The two kinds never mix: combining scalars from different fields
//! is a programming error and panics. Values that come from user input go
//! through [`Field::parse`] or [`Field::check`], which report mismatches as
//! [`Error`]s instead.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest modulus accepted for prime fields. Residue products must fit in a
/// `u128` and eigenvalue search enumerates the whole field.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// The ground field: the rationals or GF(p) for an odd prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "FieldRepr")]
pub enum Field {
    Rational,
    Prime { p: u64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum FieldRepr {
    Rational,
    Prime { p: u64 },
}

impl TryFrom<FieldRepr> for Field {
    type Error = Error;

    fn try_from(repr: FieldRepr) -> Result<Self, Error> {
        match repr {
            FieldRepr::Rational => Ok(Field::Rational),
            FieldRepr::Prime { p } => Field::prime(p),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

impl Field {
    /// GF(p); `p` must be an odd prime no larger than [`MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} exceeds {MAX_PRIME}")));
        }
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not an odd prime")));
        }
        Ok(Field::Prime { p })
    }

    /// 0 for the rationals, `p` for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime { p } => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar(Repr::Rat(BigRational::from_integer(BigInt::from(n)))),
            Field::Prime { p } => Scalar(Repr::Mod(reduce_i128(n as i128, *p), *p)),
        }
    }

    /// The element `num/den`. Panics if `den` vanishes in the field.
    pub fn ratio(&self, num: i64, den: i64) -> Scalar {
        &self.int(num) / &self.int(den)
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar(Repr::Rat(BigRational::from_integer(n.clone()))),
            Field::Prime { p } => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar(Repr::Mod(r.to_u64().expect("residue fits u64"), *p))
            }
        }
    }

    /// Parses the scalar text format: `"n"` or `"n/d"` with `d > 0`.
    /// In GF(p) integers are reduced modulo `p` and `"n/d"` means `n·d⁻¹`.
    pub fn parse(&self, text: &str) -> Result<Scalar, Error> {
        let text = text.trim();
        let bad = || Error::Parse(format!("invalid scalar {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let num = parse_int(num).ok_or_else(bad)?;
        let den = match den {
            Some(d) => {
                let d = parse_int(d).ok_or_else(bad)?;
                if !d.is_positive() {
                    return Err(Error::Parse(format!(
                        "invalid scalar {text:?}: denominator must be positive"
                    )));
                }
                d
            }
            None => BigInt::one(),
        };
        match self {
            Field::Rational => Ok(Scalar(Repr::Rat(BigRational::new(num, den)))),
            Field::Prime { p } => {
                let d = self.from_bigint(&den);
                let inv = d.inv().ok_or_else(|| {
                    Error::Parse(format!("invalid scalar {text:?}: denominator vanishes mod {p}"))
                })?;
                Ok(&self.from_bigint(&num) * &inv)
            }
        }
    }

    /// Checks that `s` belongs to this field.
    pub fn check(&self, s: &Scalar) -> Result<(), Error> {
        if s.field() == *self {
            Ok(())
        } else {
            Err(Error::FieldMismatch(*self, s.field()))
        }
    }

    /// Every element of a prime field in increasing residue order; `None` for ℚ.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            Field::Rational => None,
            Field::Prime { p } => Some((0..p).map(move |v| Scalar(Repr::Mod(v, p)))),
        }
    }
}

fn parse_int(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(text).ok()
}

fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime { p } => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// `"rational"` or `"prime:<p>"`.
    fn from_str(s: &str) -> Result<Field, Error> {
        match s.trim() {
            "rational" => Ok(Field::Rational),
            other => {
                let p = other
                    .strip_prefix("prime:")
                    .and_then(|p| p.trim().parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidField(format!("unknown field {other:?}")))?;
                Field::prime(p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    /// (value, modulus) with value < modulus.
    Mod(u64, u64),
}

/// An exact element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Rat(_) => Field::Rational,
            Repr::Mod(_, p) => Field::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rat(r) => r.is_one(),
            Repr::Mod(v, _) => *v == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Rat(r) => Scalar(Repr::Rat(r.recip())),
            Repr::Mod(v, p) => Scalar(Repr::Mod(pow_mod(*v, *p - 2, *p), *p)),
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The underlying fraction for rational scalars.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(r) => Some(r),
            Repr::Mod(..) => None,
        }
    }

    /// The residue in `[0, p)` for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rat(_) => None,
            Repr::Mod(v, _) => Some(*v),
        }
    }

    pub(crate) fn from_rational(r: BigRational) -> Scalar {
        Scalar(Repr::Rat(r))
    }

    /// Total order used only to present results deterministically: rationals
    /// by value, residues by representative.
    pub fn display_cmp(&self, other: &Scalar) -> std::cmp::Ordering {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Mod(a, _), Repr::Mod(b, _)) => a.cmp(b),
            _ => panic!("field mismatch: {} vs {}", self.field(), other.field()),
        }
    }
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a + b)),
            (Repr::Mod(a, p), Repr::Mod(b, q)) if p == q => {
                let s = a + b;
                Scalar(Repr::Mod(if s >= *p { s - p } else { s }, *p))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a - b)),
            (Repr::Mod(a, p), Repr::Mod(b, q)) if p == q => {
                Scalar(Repr::Mod(if a >= b { a - b } else { a + p - b }, *p))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Scalar(Repr::Rat(a * b)),
            (Repr::Mod(a, p), Repr::Mod(b, q)) if p == q => Scalar(Repr::Mod(mul_mod(*a, *b, *p), *p)),
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    /// Panics on division by zero.
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rat(a) => Scalar(Repr::Rat(-a)),
            Repr::Mod(0, p) => Scalar(Repr::Mod(0, *p)),
            Repr::Mod(a, p) => Scalar(Repr::Mod(p - a, *p)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);
