//! Truncated Fock-space density operators.
//!
//! Entries are generic over [`Scalar`]: plain `f64`, `Complex64`, or a truncated
//! power series in the emission probability. Channels are pure functions that
//! return new operators.

mod channels;
mod density;
mod detect;
mod error;
mod scalar;
pub mod series;
mod source;

pub use density::{FockDensity, Occupation};
pub use detect::{DetectorModel, Response};
pub use error::FockError;
pub use num_complex::Complex64;
pub use scalar::Scalar;
pub use series::{PSeries, RootSeries, Series};
pub use source::{pair_source_numeric, pair_source_state, MAX_PAIRS};

pub const STRUCTURAL_TOL: f64 = 1e-12;
pub const CHANNEL_TOL: f64 = 1e-10;
pub const CROSS_CHECK_TOL: f64 = 1e-9;

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
