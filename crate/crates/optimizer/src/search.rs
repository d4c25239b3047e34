use protocol_rates::{
    direct_transmission_time, evaluate, FidelityForm, PCap, Protocol, ProtocolParams, RateBreakdown, RateError,
    DIRECT_SOURCE_RATE_HZ, FIBER_LOSS_DB_PER_KM,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::caps::{emission_cap, estimated_fidelity, EmissionCaps};

pub const CROSSOVER_BRACKET_KM: (f64, f64) = (100.0, 2000.0);
pub const CURVE_RANGE_KM: (f64, f64) = (100.0, 2500.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizeError {
    #[error(transparent)]
    Rate(#[from] RateError),
    #[error("no feasible parameters for {protocol} at {l_km} km")]
    Infeasible { protocol: Protocol, l_km: f64 },
    #[error("distance {0} km outside the supported range")]
    Distance(f64),
    #[error("invalid grid: {0}")]
    Grid(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerSettings {
    pub n_max: u32,
    pub link_cap: u64,
    pub alpha2_step: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub p_points: usize,
    pub fidelity_form: FidelityForm,
    pub caps: EmissionCaps,
    /// In memory-efficiency sweeps the ensemble-based single-photon source follows `η_m`.
    pub sps_source_tracks_memory: bool,
    pub direct_source_rate_hz: f64,
    pub direct_db_per_km: f64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            n_max: 4,
            link_cap: 16,
            alpha2_step: 0.01,
            p_min: 1e-4,
            p_max: 0.2,
            p_points: 200,
            fidelity_form: FidelityForm::Quadratic,
            caps: EmissionCaps::default(),
            sps_source_tracks_memory: true,
            direct_source_rate_hz: DIRECT_SOURCE_RATE_HZ,
            direct_db_per_km: FIBER_LOSS_DB_PER_KM,
        }
    }
}

impl OptimizerSettings {
    pub fn p_grid(&self) -> Vec<f64> {
        if self.p_points < 2 {
            return vec![self.p_max];
        }
        let (lo, hi) = (self.p_min.ln(), self.p_max.ln());
        let step = (hi - lo) / (self.p_points - 1) as f64;
        (0..self.p_points).map(|i| (lo + step * i as f64).exp()).collect()
    }

    pub fn alpha2_grid(&self) -> Vec<f64> {
        let steps = (1.0 / self.alpha2_step).round() as usize;
        (1..steps).map(|i| i as f64 / steps as f64).collect()
    }

    pub fn direct_time(&self, l_km: f64) -> f64 {
        direct_transmission_time(l_km, self.direct_source_rate_hz, self.direct_db_per_km)
    }

    fn validate(&self) -> Result<(), OptimizeError> {
        if !(self.p_min > 0.0 && self.p_min < self.p_max && self.p_max <= 1.0) {
            return Err(OptimizeError::Grid("need 0 < p_min < p_max <= 1"));
        }
        if !(self.alpha2_step > 0.0 && self.alpha2_step < 1.0) {
            return Err(OptimizeError::Grid("alpha2 step must lie in (0, 1)"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridMeta {
    pub n_values: Vec<u32>,
    pub p_candidates: usize,
    pub alpha2_candidates: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizationResult {
    pub protocol: Protocol,
    pub l_km: f64,
    pub n: u32,
    pub p: f64,
    pub alpha2: Option<f64>,
    pub t_tot: f64,
    /// `p` sits at the multiphoton cap.
    pub constraint_active: bool,
    pub p_cap: Option<f64>,
    pub fidelity: Option<f64>,
    pub params: ProtocolParams,
    pub breakdown: RateBreakdown,
    pub grid: GridMeta,
}

impl OptimizationResult {
    pub fn links(&self) -> u64 {
        1u64 << self.n
    }
}

fn uses_alpha(protocol: Protocol) -> bool {
    matches!(protocol, Protocol::Sps | Protocol::PairSource | Protocol::Zhao)
}

fn p_candidates(protocol: Protocol, cap: PCap, template: &ProtocolParams, settings: &OptimizerSettings) -> Vec<f64> {
    if protocol == Protocol::Sps {
        return vec![template.p];
    }
    match cap {
        PCap::Unconstrained => settings.p_grid(),
        PCap::Bounded(c) => {
            let mut v: Vec<f64> = settings.p_grid().into_iter().filter(|&p| p < c).collect();
            if (settings.p_min..=settings.p_max).contains(&c) {
                v.push(c);
            }
            v
        }
    }
}

/// Minimise the distribution time over nesting level, emission probability and, where free, `α²`.
pub fn optimize(
    protocol: Protocol,
    l_km: f64,
    template: &ProtocolParams,
    settings: &OptimizerSettings,
) -> Result<OptimizationResult, OptimizeError> {
    settings.validate()?;
    if l_km.is_nan() || l_km <= 0.0 {
        return Err(OptimizeError::Distance(l_km));
    }
    let base = ProtocolParams { l_km, ..template.clone() };
    base.validate()?;
    let n_min = if protocol == Protocol::Jiang { 1 } else { 0 };
    let n_values: Vec<u32> = (n_min..=settings.n_max).filter(|&n| (1u64 << n) <= settings.link_cap).collect();
    let alphas = if uses_alpha(protocol) { settings.alpha2_grid() } else { vec![base.alpha2] };
    let mut best: Option<OptimizationResult> = None;
    let mut max_p = 0;
    for &n in &n_values {
        let at_n = base.with_n(n);
        let cap = emission_cap(protocol, n, &at_n, settings.fidelity_form, &settings.caps)?;
        let ps = p_candidates(protocol, cap, &at_n, settings);
        max_p = max_p.max(ps.len());
        for &p in &ps {
            for &alpha2 in &alphas {
                let params = ProtocolParams { p, alpha2, ..at_n.clone() };
                let b = match evaluate(protocol, &params) {
                    Ok(b) => b,
                    Err(RateError::Undefined(_)) => continue,
                    Err(e) => return Err(e.into()),
                };
                if !b.t_tot.is_finite() {
                    continue;
                }
                if best.as_ref().is_some_and(|r| b.t_tot >= r.t_tot) {
                    continue;
                }
                let cap_value = match cap {
                    PCap::Bounded(c) => Some(c),
                    PCap::Unconstrained => None,
                };
                let fidelity = estimated_fidelity(protocol, n, &params, settings.fidelity_form, &settings.caps)?;
                let result = OptimizationResult {
                    protocol,
                    l_km,
                    n,
                    p,
                    alpha2: uses_alpha(protocol).then_some(alpha2),
                    t_tot: b.t_tot,
                    constraint_active: cap_value == Some(p),
                    p_cap: cap_value,
                    fidelity,
                    params,
                    breakdown: b,
                    grid: GridMeta { n_values: Vec::new(), p_candidates: 0, alpha2_candidates: alphas.len() },
                };
                best = Some(result);
            }
        }
    }
    let mut result = best.ok_or(OptimizeError::Infeasible { protocol, l_km })?;
    result.grid.n_values = n_values;
    result.grid.p_candidates = max_p;
    Ok(result)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Crossover {
    At {
        l_km: f64,
        t_tot: f64,
    },
    /// The sign of `log T − log T_direct` does not change over the bracket.
    NoneInBracket,
}

fn log_gap(
    protocol: Protocol,
    l_km: f64,
    template: &ProtocolParams,
    settings: &OptimizerSettings,
) -> Result<f64, OptimizeError> {
    let t = match optimize(protocol, l_km, template, settings) {
        Ok(r) => r.t_tot,
        Err(OptimizeError::Infeasible { .. }) => f64::INFINITY,
        Err(e) => return Err(e),
    };
    Ok(t.log10() - settings.direct_time(l_km).log10())
}

/// Distance beyond which the optimised protocol beats direct transmission, to 1 km.
pub fn crossover(
    protocol: Protocol,
    template: &ProtocolParams,
    settings: &OptimizerSettings,
) -> Result<Crossover, OptimizeError> {
    let (mut lo, mut hi) = CROSSOVER_BRACKET_KM;
    let g_lo = log_gap(protocol, lo, template, settings)?;
    let g_hi = log_gap(protocol, hi, template, settings)?;
    if !(g_lo > 0.0 && g_hi < 0.0) {
        return Ok(Crossover::NoneInBracket);
    }
    while hi - lo > 1.0 {
        let mid = 0.5 * (lo + hi);
        if log_gap(protocol, mid, template, settings)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let l_km = (0.5 * (lo + hi)).round();
    let t_tot = optimize(protocol, l_km, template, settings)?.t_tot;
    Ok(Crossover::At { l_km, t_tot })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint {
    pub l_km: f64,
    /// Optimised time per protocol, `None` where infeasible.
    pub times: Vec<(Protocol, Option<f64>)>,
    pub direct_s: f64,
}

/// Independently optimised times over a distance grid, ascending in distance.
pub fn curve(
    protocols: &[Protocol],
    l_grid: &[f64],
    template: &ProtocolParams,
    settings: &OptimizerSettings,
) -> Result<Vec<CurvePoint>, OptimizeError> {
    let mut grid = l_grid.to_vec();
    if let Some(&bad) = grid.iter().find(|&&l| !(CURVE_RANGE_KM.0..=CURVE_RANGE_KM.1).contains(&l)) {
        return Err(OptimizeError::Distance(bad));
    }
    grid.sort_by(f64::total_cmp);
    grid.par_iter()
        .map(|&l_km| {
            let times = protocols
                .iter()
                .map(|&pr| match optimize(pr, l_km, template, settings) {
                    Ok(r) => Ok((pr, Some(r.t_tot))),
                    Err(OptimizeError::Infeasible { .. }) => Ok((pr, None)),
                    Err(e) => Err(e),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CurvePoint { l_km, times, direct_s: settings.direct_time(l_km) })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SensitivityParam {
    EtaM,
    EtaD,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SensitivityPoint {
    pub value: f64,
    pub t_tot: f64,
    pub n: u32,
    pub alpha2: Option<f64>,
}

fn with_value(
    protocol: Protocol,
    param: SensitivityParam,
    value: f64,
    template: &ProtocolParams,
    settings: &OptimizerSettings,
) -> ProtocolParams {
    let mut p = template.clone();
    match param {
        SensitivityParam::EtaM => {
            p.eta_m = value;
            if protocol == Protocol::Sps && settings.sps_source_tracks_memory {
                p.p1 = value;
            }
        }
        SensitivityParam::EtaD => p.eta_d = value,
    }
    p
}

/// Re-optimised time as one efficiency is varied.
pub fn sensitivity(
    protocol: Protocol,
    l_km: f64,
    param: SensitivityParam,
    values: &[f64],
    template: &ProtocolParams,
    settings: &OptimizerSettings,
) -> Result<Vec<SensitivityPoint>, OptimizeError> {
    values
        .par_iter()
        .map(|&v| {
            let params = with_value(protocol, param, v, template, settings);
            let r = optimize(protocol, l_km, &params, settings)?;
            Ok(SensitivityPoint { value: v, t_tot: r.t_tot, n: r.n, alpha2: r.alpha2 })
        })
        .collect()
}

/// `T(to)/T(from) − 1` with re-optimisation at both points.
pub fn relative_increase(
    protocol: Protocol,
    l_km: f64,
    param: SensitivityParam,
    from: f64,
    to: f64,
    template: &ProtocolParams,
    settings: &OptimizerSettings,
) -> Result<f64, OptimizeError> {
    let pts = sensitivity(protocol, l_km, param, &[from, to], template, settings)?;
    Ok(pts[1].t_tot / pts[0].t_tot - 1.0)
}
