//! Photon-pair source states.

use crate::density::FockDensity;
use crate::error::FockError;
use crate::series::RootSeries;

pub const MAX_PAIRS: usize = 3;

fn check_pairs(pairs: usize, cutoff: u8) -> Result<(), FockError> {
    if !(1..=MAX_PAIRS).contains(&pairs) {
        return Err(FockError::PairOrder(pairs));
    }
    if (cutoff as usize) < pairs {
        return Err(FockError::CutoffExceeded { mode: "source".into(), occupation: pairs, cutoff });
    }
    Ok(())
}

/// `(1 − p/2) Σ_{m,m' ≤ pairs} (p/2)^((m+m')/2) |mm⟩⟨m'm'|` with zero phases, as a series in `√p`.
///
/// Probabilities are exact through `p^pairs`; the missing tail is `(p/2)^(pairs+1)`.
pub fn pair_source_state(
    stored: &str,
    photonic: &str,
    pairs: usize,
    cutoff: u8,
) -> Result<FockDensity<RootSeries>, FockError> {
    check_pairs(pairs, cutoff)?;
    let lambda = std::f64::consts::FRAC_1_SQRT_2;
    let amps: Vec<_> =
        (0..=pairs).map(|m| (vec![m as u8, m as u8], RootSeries::monomial(lambda.powi(m as i32), m))).collect();
    let rho = FockDensity::from_pure(&[stored, photonic], cutoff, &amps)?;
    let norm = RootSeries::one() - RootSeries::monomial(0.5, 2);
    Ok(rho.scale_by(&norm))
}

/// Same state evaluated at a numeric `p`.
pub fn pair_source_numeric(
    stored: &str,
    photonic: &str,
    pairs: usize,
    cutoff: u8,
    p: f64,
) -> Result<FockDensity<f64>, FockError> {
    check_pairs(pairs, cutoff)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(FockError::NotAProbability { name: "p", value: p });
    }
    let lambda = (p / 2.0).sqrt();
    let amps: Vec<_> = (0..=pairs).map(|m| (vec![m as u8, m as u8], lambda.powi(m as i32))).collect();
    let rho = FockDensity::from_pure(&[stored, photonic], cutoff, &amps)?;
    Ok(rho.scale(1.0 - p / 2.0))
}
