use thiserror::Error;

use crate::space::Violation;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational: {0}")]
    InvalidRational(String),

    #[error("posterior undefined: the conditioning set has zero probability mass")]
    UndefinedPosterior,

    #[error("observation references event {index} but the space has {len} events")]
    InvalidObservation { index: usize, len: usize },

    #[error("invalid probability space: {}", join_violations(.0))]
    InvalidSpace(Vec<Violation>),

    #[error("invalid persuasion instance: {0}")]
    InvalidInstance(String),

    #[error("invalid exact cover instance: {0}")]
    InvalidEci(String),

    #[error("enumeration over {items} items exceeds the cap of {cap}")]
    CapExceeded { items: usize, cap: usize },

    #[error("not a strong persuasion instance: threshold is {0}, expected 1")]
    NotStrongInstance(String),

    #[error("standing assumption violated: {0}")]
    AssumptionViolated(String),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
