//! Grid optimisation of repeater protocols, crossover search against direct
//! transmission, and efficiency sweeps.

mod caps;
mod search;

pub use caps::{emission_cap, estimated_fidelity, EmissionCaps};
pub use search::{
    crossover, curve, optimize, relative_increase, sensitivity, Crossover, CurvePoint, GridMeta, OptimizationResult,
    OptimizeError, OptimizerSettings, SensitivityParam, SensitivityPoint,
};
