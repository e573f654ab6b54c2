use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition part {part} is not positive")]
    NonPositivePart { part: i64 },
    #[error("partition sums to {sum}, expected {expected}")]
    SumMismatch { sum: i64, expected: i64 },
    #[error("partition is empty")]
    EmptyPartition,
    #[error("degree must be positive, got {0}")]
    NonPositiveDegree(i64),
    #[error("partition {index} is invalid: {reason}")]
    BadPartition { index: usize, reason: Box<Error> },
    #[error("need at least 3 branching points, got {0}")]
    TooFewBranchPoints(usize),
    #[error("Euler characteristic {chi} is odd: no closed orientable source surface")]
    OddEuler { chi: i64 },
    #[error("Euler characteristic {chi} exceeds 2")]
    ChiTooLarge { chi: i64 },
    #[error("family parameter h = {h} is too small (need h >= {min})")]
    HTooSmall { h: usize, min: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not a constellation: {0}")]
    InvalidConstellation(String),
    #[error("dessin needs exactly 3 permutations, got {0}")]
    NotThreePoint(usize),
    #[error("face {id} does not exist (dessin has {faces} faces)")]
    BadFaceId { id: usize, faces: usize },
    #[error("malformed loop: {0}")]
    MalformedLoop(String),
}
