use thiserror::Error;

use crate::algebra::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Power-weight functions compared or combined with exponential-weight ones,
    /// or a weight whose curvature does not match the operator's.
    #[error("weight family mismatch: {0}")]
    WeightMismatch(String),

    /// Two power weights whose exponents differ by a non-integer cannot be added
    /// inside the weighted-function class.
    #[error("weight exponents {0} and {1} do not differ by an integer")]
    IncompatibleExponents(Rational, Rational),

    /// Evaluation outside the surface chart (1 + kappa |z|^2 <= 0).
    #[error("point outside the surface domain: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    /// The Gamma ratio behind the mixed Rodrigues constant hits a pole.
    #[error("undefined Rodrigues constant for (m, n) = ({m}, {n})")]
    UndefinedConstant { m: u32, n: u32 },

    /// A construction that must collapse to a pure polynomial left a weight behind.
    #[error("weight did not cancel: residual exponent {0}")]
    NonCancellingWeight(String),

    /// Two constructions that must agree (up to a constant) did not.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
