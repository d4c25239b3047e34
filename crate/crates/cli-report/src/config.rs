use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use optimizer::SensitivityParam;
use protocol_rates::{Protocol, ProtocolParams, RateError};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Command {
    #[default]
    Rate,
    Compare,
    Crossover,
    Coeffs,
    Mc,
    Sweep,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Rate => "rate",
            Command::Compare => "compare",
            Command::Crossover => "crossover",
            Command::Coeffs => "coeffs",
            Command::Mc => "mc",
            Command::Sweep => "sweep",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as clap::ValueEnum>::from_str(s, true)
    }
}

/// Line 0 marks a value that came from a command-line flag or a cross-field check.
fn at(line: usize) -> String {
    if line == 0 {
        "command line".into()
    } else {
        format!("line {line}")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{}: expected `key = value`", at(*line))]
    Syntax { line: usize },
    #[error("{}: unknown key `{key}`", at(*line))]
    Unknown { line: usize, key: String },
    #[error("{}: duplicate key `{key}` (first set on line {first})", at(*line))]
    Duplicate { line: usize, key: String, first: usize },
    #[error("{}: cannot parse `{value}` for `{key}`", at(*line))]
    Value { line: usize, key: String, value: String },
    #[error("{}: {key} = {value} out of range, expected {expected}", at(*line))]
    Range { line: usize, key: String, value: String, expected: &'static str },
    #[error("invalid parameters: {0}")]
    Params(#[from] RateError),
}

/// Everything a single invocation needs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub protocol: Protocol,
    /// Protocols for `compare` and `sweep`.
    pub protocols: Vec<Protocol>,
    pub params: ProtocolParams,
    /// Optimise `n`, `p` and `α²` for `rate` and `mc`; otherwise use `params` as given.
    pub optimize: bool,
    pub n_max: u32,
    pub seed: u64,
    pub trials: u64,
    pub out: Option<PathBuf>,
    pub l_min_km: f64,
    pub l_max_km: f64,
    pub l_step_km: f64,
    pub sweep_param: SensitivityParam,
    pub sweep_min: f64,
    pub sweep_max: f64,
    pub sweep_step: f64,
    pub source_rate_hz: f64,
    pub coeff_etas: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::default(),
            protocol: Protocol::Dlcz,
            protocols: Protocol::ALL.to_vec(),
            params: ProtocolParams::default(),
            optimize: true,
            n_max: 4,
            seed: 1,
            trials: 100_000,
            out: None,
            l_min_km: 100.0,
            l_max_km: 1500.0,
            l_step_km: 50.0,
            sweep_param: SensitivityParam::EtaM,
            sweep_min: 0.8,
            sweep_max: 1.0,
            sweep_step: 0.01,
            source_rate_hz: protocol_rates::DIRECT_SOURCE_RATE_HZ,
            coeff_etas: vec![0.5, 0.81, 0.9],
        }
    }
}

const KEYS: &[&str] = &[
    "command",
    "protocol",
    "protocols",
    "L_km",
    "n",
    "n_max",
    "eta_m",
    "eta_d",
    "p",
    "p1",
    "alpha2",
    "nm",
    "f_target",
    "rep_rate_hz",
    "L_att_km",
    "optimize",
    "seed",
    "trials",
    "out",
    "L_min_km",
    "L_max_km",
    "L_step_km",
    "sweep_param",
    "sweep_min",
    "sweep_max",
    "sweep_step",
    "source_rate_hz",
    "coeff_etas",
];

fn param_name(p: SensitivityParam) -> &'static str {
    match p {
        SensitivityParam::EtaM => "eta_m",
        SensitivityParam::EtaD => "eta_d",
    }
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(",")
}

struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

impl Entry<'_> {
    fn value_error(&self) -> ConfigError {
        ConfigError::Value { line: self.line, key: self.key.to_string(), value: self.value.to_string() }
    }

    fn range(&self, expected: &'static str) -> ConfigError {
        ConfigError::Range { line: self.line, key: self.key.to_string(), value: self.value.to_string(), expected }
    }

    fn parse<T: FromStr>(&self) -> Result<T, ConfigError> {
        self.value.parse().map_err(|_| self.value_error())
    }

    fn float(&self) -> Result<f64, ConfigError> {
        let v: f64 = self.parse()?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.range("a finite number"))
        }
    }

    fn unit(&self) -> Result<f64, ConfigError> {
        let v = self.float()?;
        if (0.0..=1.0).contains(&v) {
            Ok(v)
        } else {
            Err(self.range("[0, 1]"))
        }
    }

    fn open_unit(&self) -> Result<f64, ConfigError> {
        let v = self.float()?;
        if v > 0.0 && v < 1.0 {
            Ok(v)
        } else {
            Err(self.range("(0, 1)"))
        }
    }

    fn positive(&self) -> Result<f64, ConfigError> {
        let v = self.float()?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(self.range("> 0"))
        }
    }

    fn protocol(&self, s: &str) -> Result<Protocol, ConfigError> {
        s.trim().parse().map_err(|_| self.value_error())
    }
}

impl RunConfig {
    /// Apply one `key = value` setting with range checks.
    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
        let e = Entry { line, key, value };
        match key {
            "command" => self.command = e.parse()?,
            "protocol" => self.protocol = e.protocol(value)?,
            "protocols" => {
                let list = value.split(',').map(|s| e.protocol(s)).collect::<Result<Vec<_>, _>>()?;
                if list.is_empty() {
                    return Err(e.range("at least one protocol"));
                }
                self.protocols = list;
            }
            "L_km" => self.params.l_km = e.positive()?,
            "n" => {
                let n: u32 = e.parse()?;
                if n > 4 {
                    return Err(e.range("0..=4"));
                }
                self.params.n = n;
            }
            "n_max" => {
                let n: u32 = e.parse()?;
                if n > 4 {
                    return Err(e.range("0..=4"));
                }
                self.n_max = n;
            }
            "eta_m" => self.params.eta_m = e.unit()?,
            "eta_d" => self.params.eta_d = e.unit()?,
            "p" => self.params.p = e.open_unit()?,
            "p1" => self.params.p1 = e.unit()?,
            "alpha2" => self.params.alpha2 = e.open_unit()?,
            "nm" => {
                let n: u32 = e.parse()?;
                if n == 0 {
                    return Err(e.range(">= 1"));
                }
                self.params.n_modes = n;
            }
            "f_target" => self.params.f_target = e.open_unit()?,
            "rep_rate_hz" => self.params.rep_rate_hz = e.positive()?,
            "L_att_km" => self.params.l_att_km = e.positive()?,
            "optimize" => self.optimize = e.parse()?,
            "seed" => self.seed = e.parse()?,
            "trials" => {
                let t: u64 = e.parse()?;
                if t == 0 {
                    return Err(e.range(">= 1"));
                }
                self.trials = t;
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "L_min_km" => self.l_min_km = e.positive()?,
            "L_max_km" => self.l_max_km = e.positive()?,
            "L_step_km" => self.l_step_km = e.positive()?,
            "sweep_param" => {
                self.sweep_param = match value {
                    "eta_m" => SensitivityParam::EtaM,
                    "eta_d" => SensitivityParam::EtaD,
                    _ => return Err(e.value_error()),
                }
            }
            "sweep_min" => self.sweep_min = e.unit()?,
            "sweep_max" => self.sweep_max = e.unit()?,
            "sweep_step" => self.sweep_step = e.positive()?,
            "source_rate_hz" => self.source_rate_hz = e.positive()?,
            "coeff_etas" => {
                let list = value
                    .split(',')
                    .map(|s| Entry { line, key, value: s.trim() }.open_unit())
                    .collect::<Result<Vec<_>, _>>()?;
                self.coeff_etas = list;
            }
            _ => return Err(ConfigError::Unknown { line, key: key.to_string() }),
        }
        Ok(())
    }

    /// Cross-field checks that no single key can violate.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.params.validate()?;
        let bad = |key: &str, value: String, expected| {
            Err(ConfigError::Range { line: 0, key: key.to_string(), value, expected })
        };
        if self.l_min_km > self.l_max_km {
            return bad("L_min_km", self.l_min_km.to_string(), "<= L_max_km");
        }
        if self.sweep_min > self.sweep_max {
            return bad("sweep_min", self.sweep_min.to_string(), "<= sweep_max");
        }
        Ok(())
    }

    /// Lines that re-parse to an identical config.
    pub fn dump(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let mut kv = |k: &str, v: String| writeln!(s, "{k} = {v}").expect("write to string");
        kv("command", self.command.name().into());
        kv("protocol", self.protocol.label().into());
        kv("protocols", join(&self.protocols, |p| p.label().to_string()));
        kv("L_km", p.l_km.to_string());
        kv("n", p.n.to_string());
        kv("n_max", self.n_max.to_string());
        kv("eta_m", p.eta_m.to_string());
        kv("eta_d", p.eta_d.to_string());
        kv("p", p.p.to_string());
        kv("p1", p.p1.to_string());
        kv("alpha2", p.alpha2.to_string());
        kv("nm", p.n_modes.to_string());
        kv("f_target", p.f_target.to_string());
        kv("rep_rate_hz", p.rep_rate_hz.to_string());
        kv("L_att_km", p.l_att_km.to_string());
        kv("optimize", self.optimize.to_string());
        kv("seed", self.seed.to_string());
        kv("trials", self.trials.to_string());
        if let Some(out) = &self.out {
            kv("out", out.display().to_string());
        }
        kv("L_min_km", self.l_min_km.to_string());
        kv("L_max_km", self.l_max_km.to_string());
        kv("L_step_km", self.l_step_km.to_string());
        kv("sweep_param", param_name(self.sweep_param).into());
        kv("sweep_min", self.sweep_min.to_string());
        kv("sweep_max", self.sweep_max.to_string());
        kv("sweep_step", self.sweep_step.to_string());
        kv("source_rate_hz", self.source_rate_hz.to_string());
        kv("coeff_etas", join(&self.coeff_etas, f64::to_string));
        s
    }
}

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let mut seen: Vec<(&str, usize)> = Vec::new();
    let known: HashSet<&str> = KEYS.iter().copied().collect();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(ConfigError::Syntax { line });
        }
        if !known.contains(key) {
            return Err(ConfigError::Unknown { line, key: key.to_string() });
        }
        if let Some(&(_, first)) = seen.iter().find(|(k, _)| *k == key) {
            return Err(ConfigError::Duplicate { line, key: key.to_string(), first });
        }
        seen.push((key, line));
        cfg.set(key, value, line)?;
    }
    cfg.validate()?;
    Ok(cfg)
}
