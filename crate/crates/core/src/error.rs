use thiserror::Error;

use crate::numeric::SingularityReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("trivial root of unity (xi = 1) is not allowed here")]
    TrivialRoot,

    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("invalid cyclotomic order {0}, expected c >= 2")]
    InvalidOrder(u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("series shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("root-of-unity sum did not reduce to a rational number: {0}")]
    NotRational(String),

    #[error("pole at s = 1")]
    Pole,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("point lies on a singular hyperplane: {0}")]
    Singular(SingularityReport),

    #[error("outside continuation reach: {0}")]
    ContinuationReach(String),

    #[error("tolerance not met: {0}")]
    ToleranceNotMet(String),

    #[error("parse error: {0}")]
    Parse(String),
}
