use thiserror::Error;

use crate::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} is not supported here")]
    UnsupportedDimension(usize),
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("negative mass {value} at atom index {index}")]
    NegativeMass { index: usize, value: Rational },
    #[error("masses sum to {0}, not 1")]
    NotNormalized(Rational),
    #[error("margin {0} is degenerate (0 or 1)")]
    DegenerateMargin(Rational),
    #[error("margins are not all equal")]
    UnequalMargins,
    #[error("p = {0} is outside the supported range")]
    OutOfRange(Rational),
    #[error(
        "p = {0} exceeds 1/2; the class for p is the coordinate-wise reflection \
         of the class for 1 - p, so use 1 - p instead"
    )]
    AboveHalf(Rational),
    #[error("pmf is not a member of the Fréchet class: {0}")]
    NotAMember(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("pmf is not Σ-countermonotonic")]
    NotSigmaCm,
    #[error("invalid convex weights: {0}")]
    InvalidWeights(String),
    #[error("invalid coalition: {0}")]
    InvalidCoalition(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    /// True for the two range errors on `p`.
    pub fn is_range(&self) -> bool {
        matches!(self, Error::OutOfRange(_) | Error::AboveHalf(_))
    }
}
