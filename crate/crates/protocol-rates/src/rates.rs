use std::fmt;
use std::str::FromStr;

use crate::error::RateError;
use crate::params::{ProtocolParams, SourcePrepModel};
use crate::weights::LinkWeights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Protocol {
    Dlcz,
    Jiang,
    Chen,
    Zhao,
    Simon,
    Sps,
    PairSource,
}

impl Protocol {
    pub const ALL: [Protocol; 7] = [
        Protocol::Dlcz,
        Protocol::Jiang,
        Protocol::Chen,
        Protocol::Zhao,
        Protocol::Simon,
        Protocol::Sps,
        Protocol::PairSource,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Protocol::Dlcz => "dlcz",
            Protocol::Jiang => "jiang",
            Protocol::Chen => "chen",
            Protocol::Zhao => "zhao",
            Protocol::Simon => "simon",
            Protocol::Sps => "sps",
            Protocol::PairSource => "pair_source",
        }
    }

    /// Elementary links are heralded by two-photon detections.
    pub fn two_photon(self) -> bool {
        matches!(self, Protocol::Chen | Protocol::Zhao | Protocol::PairSource)
    }
}

impl fmt::Display for Protocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Protocol {
    type Err = RateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Protocol::ALL.into_iter().find(|p| p.label() == key).ok_or_else(|| RateError::UnknownProtocol(s.to_string()))
    }
}

/// Success probabilities and the resulting mean time for one entangled pair.
#[derive(Clone, Debug, PartialEq)]
pub struct RateBreakdown {
    pub protocol: Protocol,
    pub n: u32,
    pub p0: f64,
    /// `P_1 .. P_n`.
    pub swap_probs: Vec<f64>,
    pub p_ps: f64,
    /// Product of the per-level waiting factors.
    pub waiting_factor: f64,
    /// Duration of one elementary attempt: `L0/c` plus any local preparation time.
    pub cycle_s: f64,
    pub t_prep_s: Option<f64>,
    pub t_s: Option<f64>,
    pub t_tot: f64,
    pub lower_bound: bool,
    pub approximate: bool,
    pub warnings: Vec<String>,
}

impl RateBreakdown {
    /// `waiting_factor · cycle / (P_0 · Π P_i · P_ps)`.
    pub fn product_form(&self) -> f64 {
        let prod: f64 = self.swap_probs.iter().product();
        self.waiting_factor * self.cycle_s / (self.p0 * prod * self.p_ps)
    }
}

fn require(cond: bool, msg: &'static str) -> Result<(), RateError> {
    if cond {
        Ok(())
    } else {
        Err(RateError::Undefined(msg))
    }
}

fn pow3(k: i32) -> f64 {
    3f64.powi(k)
}

fn breakdown(protocol: Protocol, params: &ProtocolParams) -> RateBreakdown {
    RateBreakdown {
        protocol,
        n: params.n,
        p0: 0.0,
        swap_probs: Vec::new(),
        p_ps: 0.0,
        waiting_factor: 1.0,
        cycle_s: params.l0_over_c(),
        t_prep_s: None,
        t_s: None,
        t_tot: 0.0,
        lower_bound: false,
        approximate: false,
        warnings: Vec::new(),
    }
}

/// Single-click DLCZ chain.
pub fn dlcz_t_tot(params: &ProtocolParams) -> Result<RateBreakdown, RateError> {
    params.validate()?;
    let eta = params.eta();
    require(eta > 0.0, "eta_m * eta_d = 0: no link can be heralded")?;
    require(params.p > 0.0, "p = 0: no excitation is ever emitted")?;
    let n = params.n as i32;
    let eta_t = params.eta_t();
    let mut b = breakdown(Protocol::Dlcz, params);
    b.p0 = params.p * params.eta_d * eta_t;
    let mut alpha = 1.0;
    for _ in 0..n {
        b.swap_probs.push(alpha * eta * (1.0 - alpha * eta / 2.0));
        alpha /= 2.0 - alpha * eta;
    }
    b.p_ps = alpha * alpha * eta * eta / 2.0;
    b.waiting_factor = 1.5f64.powi(n + 1);
    let prod: f64 = (1..=n).map(|k| 2f64.powi(k) - (2f64.powi(k) - 1.0) * eta).product();
    b.t_tot = pow3(n + 1) * b.cycle_s * prod / (params.eta_d * eta_t * params.p * eta.powi(n + 2));
    Ok(b)
}

/// DLCZ with `N_m` temporal modes per memory.
pub fn simon_multimode_t_tot(params: &ProtocolParams) -> Result<RateBreakdown, RateError> {
    let mut b = dlcz_t_tot(params)?;
    b.protocol = Protocol::Simon;
    let nm = params.n_modes as f64;
    b.p0 *= nm;
    b.t_tot /= nm;
    if b.p0 > 0.1 {
        b.warnings.push(format!("N_m * P_0 = {:.3} is not small; the 1/N_m speed-up overestimates", b.p0));
    }
    Ok(b)
}

/// Photon pairs from ensembles, two-photon swaps, four-fold first level.
pub fn jiang_t_tot(params: &ProtocolParams) -> Result<RateBreakdown, RateError> {
    params.validate()?;
    if params.n < 1 {
        return Err(RateError::NestingLevel { protocol: "jiang", n: params.n, min: 1 });
    }
    let eta = params.eta();
    require(eta > 0.0, "eta_m * eta_d = 0: no swap can succeed")?;
    require(params.p > 0.0, "p = 0: no excitation is ever emitted")?;
    let n = params.n as i32;
    let eta_t = params.eta_t();
    let mut b = breakdown(Protocol::Jiang, params);
    b.p0 = params.p * eta_t * params.eta_d;
    let d2 = (2.0 - eta).powi(2);
    b.swap_probs.push(eta * eta * d2 / 8.0);
    for _ in 1..n {
        b.swap_probs.push(eta * eta / (2.0 * d2));
    }
    b.p_ps = eta * eta / d2;
    b.waiting_factor = 25.0 / 12.0 * 1.5f64.powi(n - 1);
    b.t_tot = 50.0 / 3.0 * pow3(n - 1) * b.cycle_s * (2.0 - eta).powi(2 * (n - 1))
        / (params.p * eta_t * params.eta_d * eta.powi(2 * n + 2));
    Ok(b)
}

/// Mean time for the four elementary links of the first level to be ready.
pub fn jiang_first_level_time(params: &ProtocolParams) -> Result<f64, RateError> {
    let b = jiang_t_tot(params)?;
    Ok(25.0 / 12.0 * b.cycle_s / b.p0)
}

/// `25/(12 r p η_d)`: mean time to load a local pair from a probabilistic source.
pub fn local_preparation_time(params: &ProtocolParams) -> Result<f64, RateError> {
    require(params.p > 0.0, "p = 0: the local source never fires")?;
    require(params.eta_d > 0.0, "eta_d = 0: the local source is never heralded")?;
    Ok(25.0 / (12.0 * params.rep_rate_hz * params.p * params.eta_d))
}

/// Two-photon heralded links from locally prepared single photons (lower bound).
pub fn chen_t_tot(params: &ProtocolParams) -> Result<RateBreakdown, RateError> {
    params.validate()?;
    let eta = params.eta();
    require(eta > 0.0, "eta_m * eta_d = 0: no link can be heralded")?;
    let n = params.n as i32;
    let eta_t = params.eta_t();
    let x = eta * eta_t;
    let mut b = breakdown(Protocol::Chen, params);
    let t_prep = local_preparation_time(params)?;
    b.t_prep_s = Some(t_prep);
    b.cycle_s += t_prep;
    let w = LinkWeights::chen(eta, eta_t);
    b.p0 = x * x * (2.0 - x).powi(2) / 8.0;
    b.swap_probs = vec![w.swap_success(eta); n as usize];
    b.p_ps = eta * eta * w.swap_amplitude().powi(2);
    b.waiting_factor = 1.5f64.powi(n);
    b.t_tot = 8.0 * pow3(n) * b.cycle_s * (2.0 - x).powi(2 * n) / (eta_t * eta_t * eta.powi(2 * n + 4));
    b.lower_bound = true;
    Ok(b)
}

/// `2η²α⁴(1−α²η)^k` with `k` from the preparation model.
pub fn pair_preparation_probability(params: &ProtocolParams) -> f64 {
    let eta = params.eta();
    let k = match params.source_prep {
        SourcePrepModel::SinglePower => 1,
        SourcePrepModel::Displayed => 2,
    };
    2.0 * eta * eta * params.alpha2 * params.alpha2 * (1.0 - params.alpha2 * eta).powi(k)
}

/// Conditionally prepared local entangled pairs with two-photon swaps.
pub fn pair_source_t_tot(params: &ProtocolParams) -> Result<RateBreakdown, RateError> {
    params.validate()?;
    let eta = params.eta();
    require(eta > 0.0, "eta_m * eta_d = 0: no pair can be prepared")?;
    require(params.alpha2 > 0.0, "alpha2 = 0: the local pair is never heralded")?;
    require(params.alpha2 < 1.0, "alpha2 = 1: no photon leaves the node")?;
    let n = params.n as i32;
    let eta_t = params.eta_t();
    let beta2 = params.beta2();
    let mut b = breakdown(Protocol::PairSource, params);
    let t_eta = local_preparation_time(params)?;
    let t_s = 1.5 * t_eta / pair_preparation_probability(params);
    b.t_prep_s = Some(t_eta);
    b.t_s = Some(t_s);
    b.cycle_s += t_s;
    let w = LinkWeights::pair_source(eta, params.alpha2);
    let s = w.swap_amplitude();
    b.p0 = eta_t * eta_t * eta * eta * s * s / 2.0;
    b.swap_probs = vec![w.swap_success(eta); n as usize];
    b.p_ps = eta * eta * s * s;
    b.waiting_factor = 1.5f64.powi(n);
    let m = 2 * (n + 2);
    b.t_tot =
        2.0 * pow3(n) * b.cycle_s * (1.0 - params.alpha2 * eta).powi(m) / (eta_t * eta_t * eta.powi(m) * beta2.powi(m));
    Ok(b)
}

/// Two-photon heralding with probabilistic pair emission: the pair-source time scaled by `1/p²`.
pub fn zhao_t_tot(params: &ProtocolParams) -> Result<RateBreakdown, RateError> {
    require(params.p > 0.0, "p = 0: no pair is ever emitted")?;
    let mut b = pair_source_t_tot(params)?;
    b.protocol = Protocol::Zhao;
    let s = 1.0 / (params.p * params.p);
    b.t_tot *= s;
    b.p0 /= s;
    b.approximate = true;
    b.warnings.push("order-of-magnitude scaling model".to_string());
    Ok(b)
}

/// Single-photon sources split on a beam splitter, single-click swaps.
pub fn sps_t_tot(params: &ProtocolParams) -> Result<RateBreakdown, RateError> {
    params.validate()?;
    let eta = params.eta();
    let beta2 = params.beta2();
    require(eta > 0.0, "eta_m * eta_d = 0: no link can be heralded")?;
    require(params.p1 > 0.0, "p_1 = 0: the source never fires")?;
    require(beta2 > 0.0, "beta2 = 0: no photon is sent")?;
    require(params.alpha2 > 0.0, "alpha2 = 0: nothing is stored")?;
    let n = params.n as i32;
    let eta_t = params.eta_t();
    let x = params.p1 * params.alpha2 * eta;
    let g = |i: i32| 2f64.powi(i) - (2f64.powi(i) - 1.0) * x;
    let mut b = breakdown(Protocol::Sps, params);
    b.p0 = 2.0 * params.p1 * beta2 * eta_t * params.eta_d;
    require(b.p0 <= 1.0, "2 p_1 beta2 eta_t eta_d > 1: first-order heralding probability out of range")?;
    b.swap_probs = (1..=n).map(|i| x / 2.0 * g(i) / g(i - 1).powi(2)).collect();
    b.p_ps = eta * eta / 2.0 * (params.p1 * params.alpha2).powi(2) / g(n).powi(2);
    b.waiting_factor = 1.5f64.powi(n + 1);
    let prod: f64 = (1..=n).map(g).product();
    b.t_tot = pow3(n + 1) / 2.0 * b.cycle_s * prod
        / (params.eta_d * eta_t * params.p1.powi(n + 3) * beta2 * params.alpha2.powi(n + 2) * eta.powi(n + 2));
    Ok(b)
}

/// Two-photon emission amplitude of the heralded single-photon source, `2p(1−η_d)η_m`.
pub fn sps_two_photon_probability(p: f64, eta_d: f64, eta_m: f64) -> f64 {
    2.0 * p * (1.0 - eta_d) * eta_m
}

/// Emission probability giving two-photon amplitude `p2`.
pub fn sps_p_for_two_photon(p2: f64, eta_d: f64, eta_m: f64) -> f64 {
    p2 / (2.0 * (1.0 - eta_d) * eta_m)
}

pub fn evaluate(protocol: Protocol, params: &ProtocolParams) -> Result<RateBreakdown, RateError> {
    match protocol {
        Protocol::Dlcz => dlcz_t_tot(params),
        Protocol::Jiang => jiang_t_tot(params),
        Protocol::Chen => chen_t_tot(params),
        Protocol::Zhao => zhao_t_tot(params),
        Protocol::Simon => simon_multimode_t_tot(params),
        Protocol::Sps => sps_t_tot(params),
        Protocol::PairSource => pair_source_t_tot(params),
    }
}
