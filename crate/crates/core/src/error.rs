use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank parameter n = {0} is too small (need n >= 2)")]
    RankTooSmall(usize),
    #[error("letter {letter} is out of range for n = {n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("word is not a reduced expression for a minuscule element")]
    NotMinuscule,
    #[error("element does not have full support")]
    NotFullSupport,
    #[error("commutation orbit search exceeded the length cap ({len} > {cap})")]
    OrbitTooLarge { len: usize, cap: usize },
    #[error("no minuscule element C^{r} with upper weight {lambda} and lower weight {mu}")]
    NoSuchElement { lambda: String, mu: String, r: i64 },
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("invalid ideal boundary: {0}")]
    InvalidBoundary(String),
    #[error("boundary {0:?} is not contained in {1:?}")]
    NotContained(Vec<i64>, Vec<i64>),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("the zero element has no Q-valuation")]
    ZeroElement,
    #[error("scalar c must be nonzero")]
    ZeroScalar,
    #[error("nilpotency order m must be at least 1")]
    BadNilpotency,
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
