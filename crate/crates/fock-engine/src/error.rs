use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("series has a nonzero coefficient at degree {degree} below the requested shift")]
    NonzeroLowOrder { degree: usize },
    #[error("series in the square root has a nonzero odd coefficient at degree {degree}")]
    OddPower { degree: usize },
    #[error("unknown mode `{0}`")]
    UnknownMode(String),
    #[error("duplicate mode `{0}`")]
    DuplicateMode(String),
    #[error("occupation {occupation} exceeds cutoff {cutoff} on mode `{mode}`")]
    CutoffExceeded { mode: String, occupation: usize, cutoff: u8 },
    #[error("occupation tuple has {got} entries, expected {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("{name} = {value} outside [0, 1]")]
    NotAProbability { name: &'static str, value: f64 },
    #[error("beam splitter coefficients violate t² + r² = 1 (t = {t}, r = {r})")]
    NotUnitary { t: f64, r: f64 },
    #[error("pair source supports 1..=3 pairs, got {0}")]
    PairOrder(usize),
    #[error("state has zero trace")]
    ZeroTrace,
}
