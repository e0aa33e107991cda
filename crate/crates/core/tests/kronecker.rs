mod common;

use common::*;
use tdpair::krawtchouk::{kronecker_sum_candidate, KroneckerOutcome};
use tdpair::system::verify_pair;
use tdpair::{CheckId, Error, Matrix, SuiteOptions};

fn outcome(a: (usize, &str), b: (usize, &str)) -> KroneckerOutcome {
    let (s1, _) = krawtchouk(q(), a.0, a.1);
    let (s2, _) = krawtchouk(q(), b.0, b.1);
    kronecker_sum_candidate(&s1, &s2, &SuiteOptions::default()).unwrap()
}

#[test]
fn distinct_p_gives_a_shape_121_pair() {
    let KroneckerOutcome::Accepted(reports) = outcome((1, "1/2"), (1, "1/3")) else {
        panic!("expected the verifier to accept");
    };
    assert_eq!(reports.len(), 4);
    for r in &reports {
        assert_eq!(r.system.shape(), &[1, 2, 1]);
        assert!(r.leonard.is_none());
        assert!(!r.outcome(CheckId::Leonard).unwrap().applicable);
        for o in &r.outcomes {
            assert!(o.passed(), "{} {:?}", o.check, o.error);
        }
        // The min{ρ_i, ρ_j} rank formula is exercised with ρ_1 = 2.
        assert!(r.ranks().any(|e| e.expected == 2));
    }
}

#[test]
fn equal_p_is_reducible() {
    for (a, b) in [((1, "1/2"), (1, "1/2")), ((2, "1/2"), (1, "1/2"))] {
        let KroneckerOutcome::Rejected(r) = outcome(a, b) else {
            panic!("expected a rejection for {a:?} {b:?}");
        };
        assert_eq!(r.reason(), "reducible");
    }
}

#[test]
fn trivial_factor_reproduces_the_first_system() {
    let (s1, _) = krawtchouk(q(), 2, "1/3");
    let zero = Matrix::zeros(q(), 1, 1);
    let trivial = verify_pair(&zero, &zero).unwrap().remove(0);
    assert_eq!(trivial.d(), 0);
    let KroneckerOutcome::Accepted(reports) = kronecker_sum_candidate(&s1, &trivial, &SuiteOptions::default()).unwrap()
    else {
        panic!("expected acceptance");
    };
    let same = reports.iter().find(|r| r.system.theta() == s1.theta() && r.system.thetastar() == s1.thetastar()).unwrap();
    assert_eq!(same.system.a(), s1.a());
    assert_eq!(same.system.astar(), s1.astar());
    assert!(same.passed());
}

#[test]
fn field_mismatch() {
    let (s1, _) = krawtchouk(q(), 1, "1/2");
    let (s2, _) = krawtchouk(gf(7), 1, "3");
    assert!(matches!(
        kronecker_sum_candidate(&s1, &s2, &SuiteOptions::default()),
        Err(Error::FieldMismatch(..))
    ));
}
