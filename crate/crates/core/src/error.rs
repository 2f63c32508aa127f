use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::fusion::Side;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A single failed axiom check found while validating an instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub invariant: String,
    pub location: String,
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {} (residual {:.3e})",
            self.invariant, self.location, self.residual
        )
    }
}

fn list(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| format!("  - {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("instance violates {} invariant(s):\n{}", .0.len(), list(.0))]
    Axioms(Vec<Violation>),

    #[error("side mismatch: expected {expected:?}, got {found:?}")]
    SideMismatch { expected: Side, found: Side },

    #[error("not a genuine character: {0}")]
    NonGenuine(String),

    #[error("kernel/center set {0:?} is not closed under fusion and duality; instance data is corrupted")]
    NotClosed(Vec<usize>),

    #[error("subset {members:?} has dimension {subdim}, which does not divide {dim}")]
    Indivisible {
        members: Vec<usize>,
        subdim: u64,
        dim: u64,
    },

    #[error("marginal classification of index {index}: deviation {deviation:.3e} lies between EPS and 10*EPS")]
    Marginal { index: usize, deviation: f64 },

    #[error("non-integral value {value} for {what}")]
    NonIntegral { what: String, value: f64 },

    #[error("normality criteria disagree for {members:?}: kernel criterion {kernel}, multiplicity criterion {multiplicity}")]
    NormalityMismatch {
        members: Vec<usize>,
        kernel: bool,
        multiplicity: bool,
    },

    #[error("quotient dimension mismatch: sum of squared degrees {found}, expected {expected}")]
    QuotientDimension { found: u64, expected: u64 },

    #[error("core iteration did not stabilize within {0} steps")]
    CoreDiverged(usize),

    #[error("{what}: independent routes disagree ({detail})")]
    RouteDisagreement { what: String, detail: String },

    #[error("positivity assumption violated: minimum eigenvalue {min_eig:.3e} with norm {norm:.3e}")]
    NotPositive { min_eig: f64, norm: f64 },

    #[error("central partition does not reproduce the null space: {0}")]
    SpanMismatch(String),

    #[error("double-coset partition inconsistent: {0}")]
    CosetInconsistency(String),

    #[error("{what}: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    Residual {
        what: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("theorem check ({item}) failed: {detail}")]
    TheoremCheck { item: char, detail: String },

    #[error("group table error: {0}")]
    Group(String),

    #[error("character table: {0}")]
    CharacterTable(String),

    #[error("group order {order} exceeds the bound {bound} for {what}")]
    OrderBound {
        what: &'static str,
        order: usize,
        bound: usize,
    },

    #[error("unknown label or index {0:?}")]
    UnknownLabel(String),
}

impl Error {
    /// Errors that come from bad input rather than a failed mathematical assertion.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Io(_)
                | Error::Parse(_)
                | Error::Structural(_)
                | Error::Axioms(_)
                | Error::Group(_)
                | Error::UnknownLabel(_)
                | Error::OrderBound { .. }
        )
    }
}
