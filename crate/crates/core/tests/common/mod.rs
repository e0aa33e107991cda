#![allow(dead_code)]

use tdpair::krawtchouk::{construct_krawtchouk, KrawtchoukParams};
use tdpair::leonard::LeonardData;
use tdpair::{Field, Scalar, TridiagonalSystem};

pub fn q() -> Field {
    Field::Rational
}

pub fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn ints(f: Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&n| f.int(n)).collect()
}

pub fn krawtchouk(field: Field, d: usize, p: &str) -> (TridiagonalSystem, LeonardData) {
    let params = KrawtchoukParams::new(d, field.parse(p).unwrap()).unwrap();
    construct_krawtchouk(&params).unwrap()
}

/// The rational grid and the GF(101) grid.
pub fn grid() -> Vec<(Field, usize, &'static str)> {
    let mut out = Vec::new();
    for d in 1..=6 {
        for p in ["1/3", "1/2", "3/4"] {
            out.push((q(), d, p));
        }
        for p in ["2", "3", "50"] {
            out.push((gf(101), d, p));
        }
    }
    out
}

/// First split sequence of a Leonard system with prescribed eigenvalue
/// sequences, built from the classification formula
/// `φ_i = φ_1 Σ_{h<i} (θ_h − θ_{d−h})/(θ_0 − θ_d) + (θ*_i − θ*_0)(θ_{i−1} − θ_d)`.
/// Whether the result is admissible is left to the verifier.
pub fn split_sequence(theta: &[Scalar], thetastar: &[Scalar], phi1: &Scalar) -> Vec<Scalar> {
    let d = theta.len() - 1;
    let span = &theta[0] - &theta[d];
    (1..=d)
        .map(|i| {
            let sum = (0..i).fold(theta[0].field().zero(), |acc, h| acc + (&theta[h] - &theta[d - h]));
            &(phi1 * &(&sum / &span)) + &(&(&thetastar[i] - &thetastar[0]) * &(&theta[i - 1] - &theta[d]))
        })
        .collect()
}

/// `θ_i = θ*_i = 2^i`: a family with `β = 5/2`.
pub fn geometric(field: Field, d: usize) -> Vec<Scalar> {
    (0..=d).map(|i| field.int(1 << i)).collect()
}
