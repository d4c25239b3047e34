//! Closed-form rate models for heralded quantum-repeater protocols.
//!
//! Distances are in km, times in seconds. Every protocol returns a
//! [`RateBreakdown`] whose factors multiply back to the closed-form total.

mod error;
mod fidelity;
mod params;
mod rates;
mod weights;

pub use error::RateError;
pub use fidelity::{fidelity_estimate, max_p_for_fidelity, FidelityForm, PCap, A_TABLE, B_TABLE};
pub use params::{
    attenuation_length_km, direct_transmission_time, transmission, ProtocolParams, SourcePrepModel,
    DEFAULT_REP_RATE_HZ, DIRECT_SOURCE_RATE_HZ, FIBER_LOSS_DB_PER_KM, SPEED_IN_FIBER_M_PER_S,
};
pub use rates::{
    chen_t_tot, dlcz_t_tot, evaluate, jiang_first_level_time, jiang_t_tot, local_preparation_time,
    pair_preparation_probability, pair_source_t_tot, simon_multimode_t_tot, sps_p_for_two_photon, sps_t_tot,
    sps_two_photon_probability, zhao_t_tot, Protocol, RateBreakdown,
};
pub use weights::LinkWeights;
