use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("character level {level} cannot certify its conductor (at least {lower_bound})")]
    LevelTooSmall { level: u32, lower_bound: u32 },
    #[error("galois conjugation needs a character of a quadratic extension")]
    BaseFieldCharacter,
    #[error("character is Galois-invariant")]
    GaloisInvariant,
    #[error("central character does not meet this orbit")]
    EmptySlice,
    #[error("max conductor {0} exceeds the supported cap of 4")]
    ConductorCap(u32),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("tree radius {have} is insufficient, need at least {need}")]
    RadiusInsufficient { have: u32, need: u32 },
    #[error("vertex lies outside the truncated tree")]
    OutOfRadius,
    #[error("matrix is singular")]
    Singular,
    #[error("element is central")]
    Central,
    #[error("element is not semisimple")]
    NotSemisimple,
    #[error("cost guard exceeded: {0}")]
    CostGuard(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

