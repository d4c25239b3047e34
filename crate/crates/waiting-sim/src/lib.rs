//! Monte Carlo of nested heralded waiting times.
//!
//! Time is counted in elementary attempt periods. A level-`i` link needs two
//! level-`i−1` links; the swap then succeeds with `P_i` or destroys both.

mod analytic;
mod report;
mod sim;

pub use analytic::{expected_max_geometric, harmonic};
pub use report::{analytic_vs_mc_report, ReportError, ReportRow};
pub use sim::{geometric_wait, simulate_chain, ChainModel, LevelStats, SimError, WaitingStats};
