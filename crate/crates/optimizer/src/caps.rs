use protocol_rates::{fidelity_estimate, max_p_for_fidelity, FidelityForm, PCap, Protocol, ProtocolParams, RateError};

/// Calibration points for protocols whose multiphoton error is only published at one setting.
/// Each protocol's error budget is taken linear in the number of links and in `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmissionCaps {
    /// `(links, p, 1 − η)` at the published photon-pair-from-ensembles point.
    pub jiang_reference: (f64, f64, f64),
    /// `(links, p)` at the published local-pair point.
    pub pair_reference: (f64, f64),
    /// Infidelity the references correspond to.
    pub reference_infidelity: f64,
}

impl Default for EmissionCaps {
    fn default() -> Self {
        Self { jiang_reference: (4.0, 0.037, 0.19), pair_reference: (8.0, 0.013), reference_infidelity: 0.1 }
    }
}

impl EmissionCaps {
    /// `1 − F = κ N p (1 − η)`.
    fn jiang_kappa(&self) -> f64 {
        let (links, p, loss) = self.jiang_reference;
        self.reference_infidelity / (links * p * loss)
    }

    /// `1 − F = κ N p`.
    fn pair_kappa(&self) -> f64 {
        let (links, p) = self.pair_reference;
        self.reference_infidelity / (links * p)
    }
}

/// Largest emission probability meeting `params.f_target` at nesting level `n`.
pub fn emission_cap(
    protocol: Protocol,
    n: u32,
    params: &ProtocolParams,
    form: FidelityForm,
    caps: &EmissionCaps,
) -> Result<PCap, RateError> {
    let eta = params.eta();
    let budget = 1.0 - params.f_target;
    let links = (1u64 << n) as f64;
    Ok(match protocol {
        Protocol::Dlcz | Protocol::Simon => max_p_for_fidelity(n, eta, params.f_target, form)?,
        Protocol::Jiang => {
            if eta >= 1.0 {
                PCap::Unconstrained
            } else {
                PCap::Bounded(budget / (caps.jiang_kappa() * links * (1.0 - eta)))
            }
        }
        Protocol::PairSource | Protocol::Zhao => PCap::Bounded(budget / (caps.pair_kappa() * links)),
        Protocol::Chen | Protocol::Sps => PCap::Unconstrained,
    })
}

/// Fidelity predicted by the same error model that produced the cap, where one exists.
pub fn estimated_fidelity(
    protocol: Protocol,
    n: u32,
    params: &ProtocolParams,
    form: FidelityForm,
    caps: &EmissionCaps,
) -> Result<Option<f64>, RateError> {
    let links = (1u64 << n) as f64;
    let eta = params.eta();
    Ok(match protocol {
        Protocol::Dlcz | Protocol::Simon => Some(fidelity_estimate(n, eta, params.p, form)?),
        Protocol::Jiang => Some(1.0 - caps.jiang_kappa() * links * params.p * (1.0 - eta)),
        Protocol::PairSource | Protocol::Zhao => Some(1.0 - caps.pair_kappa() * links * params.p),
        Protocol::Chen | Protocol::Sps => None,
    })
}
