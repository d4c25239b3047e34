//! DLCZ chain in the reduced two-mode representation.
//!
//! Links are built by brute force from the Fock engine, swapped with the
//! single-click map, post-selected onto one excitation per side, and the final
//! fidelity is read off as a series in the emission probability.

mod coefficients;
mod error;
mod link;
mod mixture;
mod postselect;
mod swap;

pub use coefficients::{
    chain_levels, extract_coefficients, extract_coefficients_across, extract_coefficients_with, fidelity_series,
    reference_link, ErrorCoefficients, MAX_LEVEL,
};
pub use error::ChainError;
pub use link::{elementary_link, LinkModel, TwoModeLink, CHAIN_CUTOFF};
pub use mixture::{dlcz_mixture_weights, dlcz_post_select_probability, dlcz_swap_probability};
pub use postselect::{final_fidelity, post_select, target_state, POST_SELECT_MODES};
pub use swap::{f_lmr, swap, swap_circuit, swap_success_probability};

/// Published multiphoton coefficients for `n = 0..=4`.
pub const PUBLISHED_A: [f64; 5] = [8.0, 18.0, 56.0, 204.0, 788.0];
pub const PUBLISHED_B: [f64; 5] = [37.0, 250.0, 2966.0, 43206.0, 669702.0];
