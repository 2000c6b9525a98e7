use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letters must be positive integers, found 0 at position {0}")]
    ZeroLetter(usize),
    #[error("{0} is not a permutation of 1..=n")]
    NotPermutation(String),
    #[error("pattern {0} has length < 2")]
    PatternTooShort(String),
    #[error("pattern set is empty")]
    EmptyPatternSet,
    #[error("operation needs a permutation of length >= 2")]
    TooShortForHat,
    #[error("n = {n} exceeds the size cap of {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("catalan({0}) exceeds the 64-bit range supported here")]
    CatalanOverflow(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid movement sequence: {0}")]
    InvalidMovementSequence(String),
    #[error("first two letters of {0} are not consecutive integers")]
    NotConsecutive(String),
    #[error("pattern {0} is too short: kappa/mu need length >= 3")]
    PatternTooShortForKappa(String),
    #[error("n = {n} is smaller than the pattern length {k}")]
    LengthBelowPattern { n: usize, k: usize },
    #[error("pattern set {0} is not closed under swapping the first two letters; the map is not invertible")]
    NotBijective(String),
    #[error("{0} is not half-decreasing")]
    NotHalfDecreasing(String),
}

pub type Result<T> = std::result::Result<T, Error>;
