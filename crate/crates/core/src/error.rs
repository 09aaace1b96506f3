use thiserror::Error;

use crate::closed_form::ForbiddenSet;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),

    #[error("division by exact zero")]
    DivisionByZero,

    #[error("invalid initial conditions: {0}")]
    InvalidInitials(String),

    /// A closed-form or iteration denominator vanished.
    #[error("initial conditions lie in forbidden set {set} (denominator vanishes at n = {index})")]
    ForbiddenInitials { set: ForbiddenSet, index: i64 },

    #[error("zero denominator in ratio S({next})/S({index})", next = index + 1)]
    ZeroDenominator { index: i64 },

    #[error("ill-conditioned system: {0}")]
    IllConditioned(String),

    #[error("index {index} outside cached range -2..={n_max}")]
    OutOfRange { index: i64, n_max: i64 },

    #[error("cannot parse number {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
