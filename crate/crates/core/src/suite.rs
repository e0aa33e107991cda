//! Runs every check group on a tridiagonal system.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bridge::{check_descent, check_diagrams, check_master_identity, check_vanishing_sums};
use crate::error::Result;
use crate::krawtchouk::{check_krawtchouk_identities, is_krawtchouk};
use crate::leonard::{change_of_basis_reps, check_leonard_identities, derive_leonard_data, LeonardData};
use crate::residual::{CheckId, RankEntry, Residual};
use crate::rfl::{check_rank_tables, check_rfl_relations, compute_rfl, RflDecomposition};
use crate::scalar::Scalar;
use crate::split::{check_split_actions, check_split_bijectivity, compute_split, SplitDecomposition};
use crate::system::{check_tridiagonal_relations, compute_relation_parameters, RelationParameters, TridiagonalSystem};

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub checks: BTreeSet<CheckId>,
    /// Override for `β` when `d ≤ 2`.
    pub beta: Option<Scalar>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { checks: CheckId::ALL.into_iter().collect(), beta: None }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub check: CheckId,
    /// False for the Leonard and Krawtchouk groups on systems outside those
    /// classes.
    pub applicable: bool,
    pub residuals: Vec<Residual>,
    pub ranks: Vec<RankEntry>,
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.residuals.iter().all(|r| r.is_zero) && self.ranks.iter().all(RankEntry::matches)
    }
}

#[derive(Clone, Debug)]
pub struct SystemReport {
    pub system: TridiagonalSystem,
    pub params: RelationParameters,
    pub rfl: RflDecomposition,
    pub split: SplitDecomposition,
    pub leonard: Option<LeonardData>,
    /// Ordered by check id.
    pub outcomes: Vec<CheckOutcome>,
    pub setup: Duration,
}

impl SystemReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn outcome(&self, check: CheckId) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.check == check)
    }

    pub fn residuals(&self) -> impl Iterator<Item = &Residual> {
        self.outcomes.iter().flat_map(|o| &o.residuals)
    }

    pub fn ranks(&self) -> impl Iterator<Item = &RankEntry> {
        self.outcomes.iter().flat_map(|o| &o.ranks)
    }
}

fn run_one(check: CheckId, r: &SystemReport) -> CheckOutcome {
    let start = Instant::now();
    let sys = &r.system;
    let mut applicable = true;
    let mut ranks = Vec::new();
    let residuals: Result<Vec<Residual>> = match check {
        CheckId::Relations => {
            let (first, second) = check_tridiagonal_relations(sys, &r.params);
            Ok(vec![
                Residual::matrix(check, "A³A* − (β+1)A²A*A + (β+1)AA*A² − A*A³ − γ[A²,A*] − ϱ[A,A*]", &[], &first),
                Residual::matrix(check, "A*³A − (β+1)A*²AA* + (β+1)A*AA*² − AA*³ − γ*[A*²,A] − ϱ*[A*,A]", &[], &second),
            ])
        }
        CheckId::RflRelations => check_rfl_relations(sys, &r.rfl, &r.params),
        CheckId::SplitActions => Ok(check_split_actions(sys, &r.split)),
        CheckId::Descent => Ok(check_descent(sys, &r.split)),
        CheckId::Master => check_master_identity(sys, &r.split),
        CheckId::Diagrams => check_diagrams(sys, &r.split, &r.rfl),
        CheckId::VanishingSums => Ok(check_vanishing_sums(sys, &r.split, &r.params)),
        CheckId::RankTables => {
            ranks = check_rank_tables(sys, &r.rfl);
            ranks.extend(check_split_bijectivity(sys, &r.split));
            Ok(Vec::new())
        }
        CheckId::Leonard => match &r.leonard {
            Some(data) => change_of_basis_reps(sys, &r.rfl, &r.split, data)
                .and_then(|_| check_leonard_identities(sys, &r.split, data, &r.params)),
            None => {
                applicable = false;
                Ok(Vec::new())
            }
        },
        CheckId::Krawtchouk => {
            if is_krawtchouk(sys) {
                check_krawtchouk_identities(sys, &r.rfl, &r.split)
            } else {
                applicable = false;
                Ok(Vec::new())
            }
        }
    };
    let (residuals, error) = match residuals {
        Ok(v) => (v, None),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    CheckOutcome { check, applicable, residuals, ranks, error, elapsed: start.elapsed() }
}

/// Computes the relation parameters and decompositions, then runs the
/// selected check groups in parallel.
pub fn run_suite(sys: TridiagonalSystem, opts: &SuiteOptions) -> Result<SystemReport> {
    let start = Instant::now();
    let params = compute_relation_parameters(&sys, opts.beta.as_ref())?;
    let rfl = compute_rfl(&sys)?;
    let split = compute_split(&sys)?;
    let leonard = if sys.is_leonard() { Some(derive_leonard_data(&sys, &split)?) } else { None };
    let mut report = SystemReport { system: sys, params, rfl, split, leonard, outcomes: Vec::new(), setup: start.elapsed() };
    let checks: Vec<CheckId> = opts.checks.iter().copied().collect();
    let outcomes = checks.par_iter().map(|&c| run_one(c, &report)).collect();
    report.outcomes = outcomes;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::Field;
    use crate::system::verify_pair;

    #[test]
    fn swap_pair_passes_and_skips_krawtchouk_only_when_needed() {
        let q = Field::Rational;
        let a = Matrix::from_ints(q, &[[0, 1], [1, 0]]);
        let astar = Matrix::from_ints(q, &[[1, 0], [0, -1]]);
        for sys in verify_pair(&a, &astar).unwrap() {
            let krawtchouk = is_krawtchouk(&sys);
            let report = run_suite(sys, &SuiteOptions::default()).unwrap();
            assert!(report.passed());
            assert!(report.outcome(CheckId::Leonard).unwrap().applicable);
            assert_eq!(report.outcome(CheckId::Krawtchouk).unwrap().applicable, krawtchouk);
        }
    }

    #[test]
    fn selected_checks_only() {
        let q = Field::Rational;
        let a = Matrix::from_ints(q, &[[0, 1], [1, 0]]);
        let astar = Matrix::from_ints(q, &[[1, 0], [0, -1]]);
        let sys = verify_pair(&a, &astar).unwrap().remove(0);
        let opts = SuiteOptions { checks: [CheckId::Master, CheckId::Relations].into(), beta: Some(q.int(7)) };
        let report = run_suite(sys, &opts).unwrap();
        let ids: Vec<CheckId> = report.outcomes.iter().map(|o| o.check).collect();
        assert_eq!(ids, [CheckId::Relations, CheckId::Master]);
        assert_eq!(report.params.beta, q.int(7));
        assert!(report.passed());
    }
}
