use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RateError {
    #[error("{field} = {value} is out of range ({expected})")]
    OutOfRange { field: &'static str, value: f64, expected: &'static str },
    #[error("{0}")]
    Undefined(&'static str),
    #[error("{protocol} needs nesting level n >= {min}, got {n}")]
    NestingLevel { protocol: &'static str, n: u32, min: u32 },
    #[error("no tabulated multiphoton coefficients for n = {0}")]
    NoCoefficients(u32),
    #[error("unknown protocol `{0}`")]
    UnknownProtocol(String),
}
