use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Field;

/// Which operator of a pair a diagnostic refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Operator {
    A,
    AStar,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::A => write!(f, "A"),
            Operator::AStar => write!(f, "A*"),
        }
    }
}

/// Why a matrix pair is not a tridiagonal pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    NotDiagonalizable(Operator),
    Reducible,
    /// The generated algebra is proper but no invariant subspace was found.
    IrreducibilityUndetermined,
    NoStandardOrdering(Operator),
    DiameterMismatch { d: usize, delta: usize },
}

impl Rejection {
    /// Short machine-readable reason used in reports.
    pub fn reason(&self) -> &'static str {
        match self {
            Rejection::NotDiagonalizable(_) => "not diagonalizable",
            Rejection::Reducible => "reducible",
            Rejection::IrreducibilityUndetermined => "irreducibility undetermined",
            Rejection::NoStandardOrdering(_) => "no standard ordering",
            Rejection::DiameterMismatch { .. } => "diameter mismatch",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NotDiagonalizable(op) | Rejection::NoStandardOrdering(op) => {
                write!(f, "{} ({op})", self.reason())
            }
            Rejection::DiameterMismatch { d, delta } => write!(f, "{} ({d} vs {delta})", self.reason()),
            _ => write!(f, "{}", self.reason()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("repeated eigenvalue {0}")]
    RepeatedEigenvalue(String),
    #[error("matrix is not diagonalizable with the given eigenvalues")]
    NotDiagonalizable,
    #[error("subspaces do not form a direct sum decomposition")]
    NotDirectSum,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("{0}! is not invertible in {1}")]
    FactorialNotInvertible(usize, Field),
    #[error("not a tridiagonal pair: {0}")]
    Rejected(Rejection),
    #[error("contradictory relation parameters: {0}")]
    Contradiction(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
