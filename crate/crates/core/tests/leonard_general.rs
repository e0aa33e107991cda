mod common;

use common::*;
use tdpair::leonard::{change_of_basis_reps, construct_leonard};
use tdpair::rfl::compute_rfl;
use tdpair::split::compute_split;
use tdpair::system::compute_relation_parameters;
use tdpair::{run_suite, CheckId, Error, SuiteOptions};

#[test]
fn geometric_spectra_pass_every_check() {
    for d in 2..=5 {
        let th = geometric(q(), d);
        let phi = split_sequence(&th, &th, &q().int(5));
        let (sys, data) = construct_leonard(q(), &th, &th, &phi).unwrap();
        assert_eq!(data.phi, phi);
        let report = run_suite(sys, &SuiteOptions::default()).unwrap();
        if d >= 3 {
            assert_eq!(report.params.beta, q().ratio(5, 2));
        }
        assert!(!report.outcome(CheckId::Krawtchouk).unwrap().applicable);
        for o in report.outcomes.iter().filter(|o| o.check != CheckId::Krawtchouk) {
            assert!(o.applicable && o.passed(), "d={d} {} {:?}", o.check, o.error);
        }
    }
}

#[test]
fn geometric_spectra_over_a_prime_field() {
    let f = gf(1009);
    let th = geometric(f, 4);
    let ts: Vec<_> = th.iter().map(|t| t * &f.int(3)).collect();
    let phi = split_sequence(&th, &ts, &f.int(11));
    let (sys, _) = construct_leonard(f, &th, &ts, &phi).unwrap();
    assert!(run_suite(sys, &SuiteOptions::default()).unwrap().outcomes.iter().all(|o| o.passed()));
}

#[test]
fn generator_matches_krawtchouk() {
    for (f, d, p) in grid() {
        let (_, data) = krawtchouk(f, d, p);
        let phi1 = &(&f.int(4 * d as i64) * &(&f.one() - &f.parse(p).unwrap()));
        assert_eq!(split_sequence(&data.theta, &data.thetastar, phi1), data.phi);
    }
}

#[test]
fn bad_split_sequence_is_inadmissible() {
    let th = geometric(q(), 3);
    let mut phi = split_sequence(&th, &th, &q().int(5));
    phi[1] = &phi[1] + &q().one();
    assert!(matches!(construct_leonard(q(), &th, &th, &phi), Err(Error::Inadmissible(_))));
}

#[test]
fn representations_are_conjugate() {
    let th = geometric(q(), 3);
    let phi = split_sequence(&th, &th, &q().int(5));
    let (sys, data) = construct_leonard(q(), &th, &th, &phi).unwrap();
    let rfl = compute_rfl(&sys).unwrap();
    let split = compute_split(&sys).unwrap();
    let reps = change_of_basis_reps(&sys, &rfl, &split, &data).unwrap();
    // In the split basis the operators are the input bidiagonal matrices.
    assert_eq!(&reps[1].a, sys.a());
    assert_eq!(&reps[1].astar, sys.astar());
    compute_relation_parameters(&sys, None).unwrap();
}

#[test]
fn input_validation() {
    let th = ints(q(), &[2, 0, -2]);
    let phi = ints(q(), &[-4, -4]);
    assert!(matches!(construct_leonard(q(), &th, &th[..2], &phi), Err(Error::Inadmissible(_))));
    let rep = ints(q(), &[2, 0, 2]);
    assert!(matches!(construct_leonard(q(), &rep, &th, &phi), Err(Error::Inadmissible(_))));
    assert!(matches!(construct_leonard(gf(7), &th, &th, &phi), Err(Error::FieldMismatch(..))));
}
