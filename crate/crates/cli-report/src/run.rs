use std::fmt::Write as _;

use dlcz_chain::{extract_coefficients_across, ChainError, MAX_LEVEL};
use optimizer::{
    crossover, curve, optimize, sensitivity, Crossover, OptimizationResult, OptimizeError, OptimizerSettings,
};
use protocol_rates::{evaluate, Protocol, ProtocolParams, RateBreakdown, RateError};
use thiserror::Error;
use waiting_sim::{analytic_vs_mc_report, ReportError};

use crate::config::{Command, ConfigError, RunConfig};
use crate::format::{grid, sig4};

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error("infeasible: no parameters for {protocol} at {l_km} km meet F = {f_target}")]
    Infeasible { protocol: Protocol, l_km: f64, f_target: f64 },
    #[error(transparent)]
    Rate(#[from] RateError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error(transparent)]
    Optimize(OptimizeError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Usage(_) => 2,
            RunError::Infeasible { .. } => 3,
            _ => 1,
        }
    }

    fn from_optimize(e: OptimizeError, f_target: f64) -> Self {
        match e {
            OptimizeError::Infeasible { protocol, l_km } => RunError::Infeasible { protocol, l_km, f_target },
            OptimizeError::Distance(_) | OptimizeError::Grid(_) => RunError::Usage(e.to_string()),
            other => RunError::Optimize(other),
        }
    }
}

pub fn settings(cfg: &RunConfig) -> OptimizerSettings {
    OptimizerSettings { n_max: cfg.n_max, direct_source_rate_hz: cfg.source_rate_hz, ..OptimizerSettings::default() }
}

fn optimized(cfg: &RunConfig) -> Result<OptimizationResult, RunError> {
    optimize(cfg.protocol, cfg.params.l_km, &cfg.params, &settings(cfg))
        .map_err(|e| RunError::from_optimize(e, cfg.params.f_target))
}

/// Parameters and breakdown for `rate` and `mc`.
fn operating_point(cfg: &RunConfig) -> Result<(ProtocolParams, RateBreakdown), RunError> {
    if cfg.optimize {
        let r = optimized(cfg)?;
        Ok((r.params, r.breakdown))
    } else {
        Ok((cfg.params.clone(), evaluate(cfg.protocol, &cfg.params)?))
    }
}

/// Execute the configured command and return its rendered output.
pub fn run(cfg: &RunConfig) -> Result<String, RunError> {
    cfg.validate()?;
    match cfg.command {
        Command::Rate => rate(cfg),
        Command::Compare => compare(cfg),
        Command::Crossover => crossover_report(cfg),
        Command::Coeffs => coeffs(cfg),
        Command::Mc => mc(cfg),
        Command::Sweep => sweep(cfg),
    }
}

fn rate(cfg: &RunConfig) -> Result<String, RunError> {
    let (params, b) = operating_point(cfg)?;
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "protocol          {}", b.protocol).unwrap();
    writeln!(w, "distance          {} km", params.l_km).unwrap();
    writeln!(w, "nesting level     n = {} ({} links, L0 = {} km)", b.n, params.links(), sig4(params.l0_km())).unwrap();
    writeln!(w, "emission p        {}", sig4(params.p)).unwrap();
    if matches!(b.protocol, Protocol::Sps | Protocol::PairSource | Protocol::Zhao) {
        writeln!(w, "alpha^2           {}", sig4(params.alpha2)).unwrap();
    }
    writeln!(w, "P0                {}", sig4(b.p0)).unwrap();
    for (i, p) in b.swap_probs.iter().enumerate() {
        writeln!(w, "P{:<16} {}", i + 1, sig4(*p)).unwrap();
    }
    writeln!(w, "P_ps              {}", sig4(b.p_ps)).unwrap();
    writeln!(w, "waiting factor    {}", sig4(b.waiting_factor)).unwrap();
    writeln!(w, "cycle             {} s", sig4(b.cycle_s)).unwrap();
    if let Some(t) = b.t_prep_s {
        writeln!(w, "T_prep            {} s", sig4(t)).unwrap();
    }
    if let Some(t) = b.t_s {
        writeln!(w, "T_s               {} s", sig4(t)).unwrap();
    }
    writeln!(w, "T_tot             {} s", sig4(b.t_tot)).unwrap();
    writeln!(w, "direct            {} s", sig4(settings(cfg).direct_time(params.l_km))).unwrap();
    if b.lower_bound {
        writeln!(w, "note              lower bound").unwrap();
    }
    if b.approximate {
        writeln!(w, "note              approximate model").unwrap();
    }
    for warning in &b.warnings {
        writeln!(w, "warning           {warning}").unwrap();
    }
    Ok(s)
}

fn compare(cfg: &RunConfig) -> Result<String, RunError> {
    let ls = grid(cfg.l_min_km, cfg.l_max_km, cfg.l_step_km);
    let pts = curve(&cfg.protocols, &ls, &cfg.params, &settings(cfg))
        .map_err(|e| RunError::from_optimize(e, cfg.params.f_target))?;
    let mut s = String::from("L_km");
    for p in &cfg.protocols {
        write!(s, ",{}_s", p.label()).unwrap();
    }
    s.push_str(",direct_transmission_s\n");
    for pt in pts {
        write!(s, "{}", pt.l_km).unwrap();
        for (_, t) in &pt.times {
            write!(s, ",{}", t.map_or("nan".to_string(), sig4)).unwrap();
        }
        writeln!(s, ",{}", sig4(pt.direct_s)).unwrap();
    }
    Ok(s)
}

fn crossover_report(cfg: &RunConfig) -> Result<String, RunError> {
    let c = crossover(cfg.protocol, &cfg.params, &settings(cfg))
        .map_err(|e| RunError::from_optimize(e, cfg.params.f_target))?;
    Ok(match c {
        Crossover::At { l_km, t_tot } => {
            format!("{}: crossover at {} km, T_tot = {} s\n", cfg.protocol, l_km, sig4(t_tot))
        }
        Crossover::NoneInBracket => format!("{}: no crossover in [100, 2000] km\n", cfg.protocol),
    })
}

fn coeffs(cfg: &RunConfig) -> Result<String, RunError> {
    let top = (cfg.n_max as usize).min(MAX_LEVEL);
    let mut s = String::from("n,A_n,B_n\n");
    for n in 0..=top {
        let c = extract_coefficients_across(n, &cfg.coeff_etas)?;
        writeln!(s, "{},{},{}", n, c.a, c.b).unwrap();
    }
    Ok(s)
}

fn mc(cfg: &RunConfig) -> Result<String, RunError> {
    if cfg.trials == 0 {
        return Err(RunError::Usage("trials must be at least 1".into()));
    }
    if matches!(cfg.protocol, Protocol::Jiang | Protocol::Zhao) {
        return Err(RunError::Usage(format!("mc does not support {}", cfg.protocol)));
    }
    let (params, _) = operating_point(cfg)?;
    let rows = analytic_vs_mc_report(&params, cfg.protocol, cfg.trials, cfg.seed)?;
    let mut s = String::from("level,analytic_periods,mc_mean_periods,mc_std_error_periods,ratio,f\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{}",
            r.level,
            sig4(r.analytic),
            sig4(r.mc_mean),
            sig4(r.mc_std_error),
            sig4(r.ratio),
            r.f.map_or("nan".to_string(), sig4)
        )
        .unwrap();
    }
    Ok(s)
}

fn sweep(cfg: &RunConfig) -> Result<String, RunError> {
    let values = grid(cfg.sweep_min, cfg.sweep_max, cfg.sweep_step);
    let st = settings(cfg);
    let columns = cfg
        .protocols
        .iter()
        .map(|&p| sensitivity(p, cfg.params.l_km, cfg.sweep_param, &values, &cfg.params, &st))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| RunError::from_optimize(e, cfg.params.f_target))?;
    let name = match cfg.sweep_param {
        optimizer::SensitivityParam::EtaM => "eta_m",
        optimizer::SensitivityParam::EtaD => "eta_d",
    };
    let mut s = String::from(name);
    for p in &cfg.protocols {
        write!(s, ",{}_s", p.label()).unwrap();
    }
    s.push('\n');
    for (i, v) in values.iter().enumerate() {
        write!(s, "{v}").unwrap();
        for col in &columns {
            write!(s, ",{}", sig4(col[i].t_tot)).unwrap();
        }
        s.push('\n');
    }
    Ok(s)
}
