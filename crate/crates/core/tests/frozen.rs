//! Frozen values computed independently by hand and checked against the
//! pipeline.

mod common;

use common::*;
use tdpair::bridge::{master_operator, omega};
use tdpair::leonard::{change_of_basis_reps, construct_leonard};
use tdpair::linalg::{nilpotent_exp_scaled, rank};
use tdpair::rfl::{compute_rfl, RflCoefficients};
use tdpair::split::compute_split;
use tdpair::system::{compute_relation_parameters, relatives, Relative};
use tdpair::Matrix;

#[test]
fn krawtchouk_d2_half_scalars() {
    let (sys, data) = krawtchouk(q(), 2, "1/2");
    assert_eq!(sys.shape(), &[1, 1, 1]);
    assert_eq!(data.a, ints(q(), &[0, 0, 0]));
    assert_eq!(data.x, ints(q(), &[2, 2]));
    assert_eq!(data.b, ints(q(), &[2, 1]));
    assert_eq!(data.c, ints(q(), &[1, 2]));
    assert_eq!(data.phi, ints(q(), &[-4, -4]));
    // b_0 = φ_1 τ*_0(θ*_0)/τ*_1(θ*_1) = (−4)(1)/(−2).
    assert_eq!(data.taustar[..2], ints(q(), &[1, -2])[..]);
    // a_1 = θ_1 + φ_1/(θ*_1 − θ*_0) + φ_2/(θ*_1 − θ*_2) = 0 + 2 − 2.
    let t = &data.thetastar;
    let a1 = &(&data.theta[1] + &(&data.phi[0] / &(&t[1] - &t[0]))) + &(&data.phi[1] / &(&t[1] - &t[2]));
    assert_eq!(a1, q().zero());
}

#[test]
fn krawtchouk_d3_split_sequence() {
    let (_, data) = krawtchouk(q(), 3, "1/2");
    assert_eq!(data.phi, ints(q(), &[-6, -8, -6]));
}

#[test]
fn krawtchouk_d1_maps() {
    let (sys, data) = krawtchouk(q(), 1, "1/2");
    assert_eq!(sys.a(), &Matrix::from_ints(q(), &[[0, 1], [1, 0]]));
    assert_eq!(sys.astar(), &Matrix::from_ints(q(), &[[1, 0], [0, -1]]));
    let rfl = compute_rfl(&sys).unwrap();
    assert_eq!(rfl.r, Matrix::from_ints(q(), &[[0, 0], [1, 0]]));
    assert_eq!(rfl.l, Matrix::from_ints(q(), &[[0, 1], [0, 0]]));
    assert!(rfl.f.is_zero());
    let split = compute_split(&sys).unwrap();
    assert_eq!(split.call, Matrix::from_ints(q(), &[[0, -2], [0, 0]]));
    assert_eq!(nilpotent_exp_scaled(&split.call, &q().ratio(1, 2)).unwrap(), Matrix::from_ints(q(), &[[1, -1], [0, 1]]));
    // F_0E*_1 = −½·𝓛·F_1E*_1.
    let lhs = &split.f[0] * sys.estar(1);
    let rhs = (&(&split.call * &split.f[1]) * sys.estar(1)).scale(&q().ratio(-1, 2));
    assert_eq!(lhs, rhs);
    // (θ*_0 − θ*_1)²x_1/φ_1 = −φ_1 − (θ_0 − θ_1)(θ*_0 − θ*_1): 4·1/(−2) = 2 − 4.
    assert_eq!(data.x, ints(q(), &[1]));
    assert_eq!(data.phi, ints(q(), &[-2]));
    let reps = change_of_basis_reps(&sys, &rfl, &split, &data).unwrap();
    assert_eq!(reps[2].a, Matrix::from_ints(q(), &[[0, 1], [1, 0]]));
    assert_eq!(reps[0].astar, Matrix::from_ints(q(), &[[1, 0], [0, -1]]));
    assert_eq!(&(&reps[1].basis * &Matrix::from_ints(q(), &[[0, 0], [1, 0]])) * &tdpair::linalg::inverse(&reps[1].basis).unwrap(), split.calr);
}

#[test]
fn p_half_has_zero_flat_part() {
    for d in 1..=4 {
        let (sys, _) = krawtchouk(q(), d, "1/2");
        assert!(compute_rfl(&sys).unwrap().f.is_zero());
    }
}

#[test]
fn extended_eigenvalues_and_gamma() {
    let (sys, _) = krawtchouk(q(), 2, "1/2");
    let p = compute_relation_parameters(&sys, None).unwrap();
    assert_eq!((p.theta_m1, p.theta_dp1), (q().int(4), q().int(-4)));
    let (sys, _) = construct_leonard(q(), &ints(q(), &[3, 5]), &ints(q(), &[0, 1]), &ints(q(), &[1])).unwrap();
    let p = compute_relation_parameters(&sys, Some(&q().zero())).unwrap();
    assert_eq!(p.gamma, q().int(8));
}

#[test]
fn krawtchouk_coefficients_are_minus_half() {
    let (sys, _) = krawtchouk(q(), 3, "1/3");
    let params = compute_relation_parameters(&sys, None).unwrap();
    let c = RflCoefficients::new(&sys, &params).unwrap();
    for i in 2..=3 {
        assert_eq!(c.gplus[&i], q().ratio(-1, 2));
        assert_eq!(c.gminus[&i], q().ratio(-1, 2));
    }
    for j in 2..=3 {
        assert!(omega(&sys, j).is_zero());
    }
}

#[test]
fn krawtchouk_ranks() {
    let (sys, _) = krawtchouk(q(), 2, "1/2");
    let rfl = compute_rfl(&sys).unwrap();
    assert_eq!(rank(&(&rfl.r.pow(2) * sys.estar(0))), 1);
    assert_eq!(rank(&(&(sys.estar(0) * &sys.a().pow(2)) * sys.estar(2))), 1);
    let (sys, _) = krawtchouk(q(), 3, "1/2");
    let split = compute_split(&sys).unwrap();
    assert_eq!(rank(&(&split.calr.pow(3) * &split.f[0])), 1);
}

#[test]
fn master_operator_adjacent_forms() {
    // S_{j+1,j} is 𝓡; S_{j,j} for j = 0 is θ_0 + 𝓛𝓡/(θ*_0 − θ*_1).
    let (sys, _) = krawtchouk(q(), 2, "1/2");
    let split = compute_split(&sys).unwrap();
    assert_eq!(master_operator(&sys, &split, 1, 0), split.calr);
    let flat = &sys.identity().scale(&q().int(2)) + &(&split.call * &split.calr).scale(&q().ratio(1, 2));
    assert_eq!(master_operator(&sys, &split, 0, 0), flat);
}

#[test]
fn times_relative_of_the_swap_pair() {
    let a = Matrix::from_ints(q(), &[[0, 1], [1, 0]]);
    let astar = Matrix::from_ints(q(), &[[1, 0], [0, -1]]);
    let systems = tdpair::system::verify_pair(&a, &astar).unwrap();
    assert_eq!(systems.len(), 4);
    let t = relatives(&systems[0], Relative::Times);
    assert_eq!(t.a(), &astar);
    assert_eq!(t.astar(), &a);
    let rev: Vec<_> = systems[0].theta().iter().rev().cloned().collect();
    assert_eq!(t.thetastar(), &rev[..]);
}

#[test]
fn prime_field_example() {
    let (sys, data) = krawtchouk(gf(101), 3, "2");
    assert_eq!(sys.shape(), &[1, 1, 1, 1]);
    // φ_1 = 4·2·1·(−3) = −24 ≡ 77.
    assert_eq!(data.phi[0], gf(101).int(77));
}
