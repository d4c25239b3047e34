use fock_engine::FockError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChainError {
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error("{name} = {value} must lie in (0, 1]")]
    Efficiency { name: &'static str, value: f64 },
    #[error("coefficient extraction needs eta < 1, got {0}")]
    PerfectEfficiency(f64),
    #[error("nesting level {0} outside 0..=4")]
    Level(usize),
    #[error("{which}_{n} = {value} is not an integer (eta = {eta})")]
    NonInteger { which: &'static str, n: usize, value: f64, eta: f64 },
    #[error("{which}_{n} differs between eta values: {first} vs {second}")]
    EtaDependent { which: &'static str, n: usize, first: f64, second: f64 },
    #[error("fidelity constant term is {0}, expected 1")]
    ZerothOrder(f64),
}
