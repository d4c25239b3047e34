use protocol_rates::{evaluate, Protocol, ProtocolParams, RateError};
use thiserror::Error;

use crate::sim::{simulate_chain, ChainModel, SimError};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Rate(#[from] RateError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("{0} has no two-per-level waiting structure to simulate")]
    Unsupported(Protocol),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub level: u32,
    /// `(3/2)^k / (P_0 Π_{i≤k} P_i)`, attempt periods.
    pub analytic: f64,
    pub mc_mean: f64,
    pub mc_std_error: f64,
    pub ratio: f64,
    pub ratio_std_error: f64,
    /// Empirical waiting factor at this level (none at level 0).
    pub f: Option<f64>,
}

/// Compare the closed-form waiting time with simulation at every nesting level up to `params.n`.
pub fn analytic_vs_mc_report(
    params: &ProtocolParams,
    protocol: Protocol,
    trials: u64,
    seed: u64,
) -> Result<Vec<ReportRow>, ReportError> {
    if matches!(protocol, Protocol::Jiang | Protocol::Zhao) {
        return Err(ReportError::Unsupported(protocol));
    }
    let b = evaluate(protocol, params)?;
    let mut rows = Vec::with_capacity(b.swap_probs.len() + 1);
    for k in 0..=b.swap_probs.len() {
        let probs = b.swap_probs[..k].to_vec();
        let analytic = 1.5f64.powi(k as i32) / (b.p0 * probs.iter().product::<f64>());
        let model = ChainModel::new(b.p0, probs)?;
        let stats = simulate_chain(&model, trials, seed.wrapping_add(k as u64))?;
        rows.push(ReportRow {
            level: k as u32,
            analytic,
            mc_mean: stats.mean_time,
            mc_std_error: stats.std_error,
            ratio: stats.mean_time / analytic,
            ratio_std_error: stats.std_error / analytic,
            f: stats.levels.last().map(|l| l.f()),
        });
    }
    Ok(rows)
}
