//! Outcomes of individual identity and rank checks.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// The fixed vocabulary of check groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckId {
    /// The expanded tridiagonal relations.
    Relations,
    /// Relations among the raising, flat and lowering maps.
    #[serde(rename = "section5")]
    RflRelations,
    /// Split projectors against `A`, `A*` and the split maps.
    #[serde(rename = "section7")]
    SplitActions,
    /// `F_iE*_j` and `E*_iF_j` in terms of the split lowering map.
    Descent,
    /// The `F_iE*_iAE*_j` double-sum expansion.
    Master,
    /// Intertwining of `R`, `F`, `L` with the split maps through `Ψ`.
    Diagrams,
    /// Vanishing sums and cubic relations on the split summands.
    #[serde(rename = "section9")]
    VanishingSums,
    /// Rank tables for powers of `R`, `L`, `A`, `A*`.
    #[serde(rename = "section10")]
    RankTables,
    /// Scalar identities of Leonard systems.
    #[serde(rename = "section11")]
    Leonard,
    /// Identities of Krawtchouk-type systems.
    #[serde(rename = "section12")]
    Krawtchouk,
}

impl CheckId {
    pub const ALL: [CheckId; 10] = [
        CheckId::Relations,
        CheckId::RflRelations,
        CheckId::SplitActions,
        CheckId::Descent,
        CheckId::Master,
        CheckId::Diagrams,
        CheckId::VanishingSums,
        CheckId::RankTables,
        CheckId::Leonard,
        CheckId::Krawtchouk,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::Relations => "relations",
            CheckId::RflRelations => "section5",
            CheckId::SplitActions => "section7",
            CheckId::Descent => "descent",
            CheckId::Master => "master",
            CheckId::Diagrams => "diagrams",
            CheckId::VanishingSums => "section9",
            CheckId::RankTables => "section10",
            CheckId::Leonard => "section11",
            CheckId::Krawtchouk => "section12",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckId, Error> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check id {s:?}")))
    }
}

/// One evaluated identity: LHS − RHS, summarized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    #[serde(rename = "check-id")]
    pub check: CheckId,
    pub identity: String,
    pub index: Vec<usize>,
    #[serde(rename = "residual-is-zero")]
    pub is_zero: bool,
    /// Number of nonzero entries.
    #[serde(rename = "residual-norm0")]
    pub norm0: usize,
    /// Row and column of the first nonzero entry.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<[usize; 2]>,
}

impl Residual {
    pub fn matrix(check: CheckId, identity: &str, index: &[usize], m: &Matrix) -> Residual {
        let norm0 = m.nonzero_count();
        Residual {
            check,
            identity: identity.to_string(),
            index: index.to_vec(),
            is_zero: norm0 == 0,
            norm0,
            counterexample: m.first_nonzero().map(|(i, j)| [i, j]),
        }
    }

    pub fn scalar(check: CheckId, identity: &str, index: &[usize], s: &Scalar) -> Residual {
        let zero = s.is_zero();
        Residual {
            check,
            identity: identity.to_string(),
            index: index.to_vec(),
            is_zero: zero,
            norm0: usize::from(!zero),
            counterexample: (!zero).then_some([0, 0]),
        }
    }
}

/// One cell of a rank table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    pub map: String,
    pub i: usize,
    pub j: usize,
    pub rank: usize,
    pub expected: usize,
}

impl RankEntry {
    pub fn matches(&self) -> bool {
        self.rank == self.expected
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn check_ids_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(c.as_str().parse::<CheckId>().unwrap(), c);
            assert_eq!(serde_json::to_value(c).unwrap(), c.as_str());
        }
        assert!("section6".parse::<CheckId>().is_err());
    }

    #[test]
    fn residual_json_keys() {
        let q = Field::Rational;
        let m = Matrix::from_ints(q, &[[0, 0], [0, 3]]);
        let r = Residual::matrix(CheckId::Master, "x", &[1, 2], &m);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["check-id"], "master");
        assert_eq!(v["residual-is-zero"], false);
        assert_eq!(v["residual-norm0"], 1);
        assert_eq!(v["counterexample"], serde_json::json!([1, 1]));
        let z = Residual::matrix(CheckId::Master, "x", &[], &Matrix::zeros(q, 2, 2));
        assert!(serde_json::to_value(&z).unwrap().get("counterexample").is_none());
    }
}
