use crate::error::RateError;

pub const SPEED_IN_FIBER_M_PER_S: f64 = 2e8;
pub const FIBER_LOSS_DB_PER_KM: f64 = 0.2;
pub const DEFAULT_REP_RATE_HZ: f64 = 1e7;
pub const DIRECT_SOURCE_RATE_HZ: f64 = 1e10;

/// Length over which power drops by `1/e` for a loss of `db_per_km`.
pub fn attenuation_length_km(db_per_km: f64) -> f64 {
    10.0 / (db_per_km * std::f64::consts::LN_10)
}

/// How the pair-source preparation probability enters the source waiting time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SourcePrepModel {
    /// `2η²α⁴(1−α²η)`.
    #[default]
    SinglePower,
    /// `2η²α⁴(1−α²η)²`.
    Displayed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolParams {
    /// Total distance, km.
    pub l_km: f64,
    /// Nesting level; `2^n` elementary links.
    pub n: u32,
    pub l_att_km: f64,
    pub c_m_per_s: f64,
    pub eta_m: f64,
    pub eta_d: f64,
    /// Emission probability.
    pub p: f64,
    /// Single-photon source efficiency.
    pub p1: f64,
    /// Reflectivity `α²`; `β² = 1 − α²`.
    pub alpha2: f64,
    /// Temporal modes per memory.
    pub n_modes: u32,
    /// Local repetition rate, Hz.
    pub rep_rate_hz: f64,
    pub f_target: f64,
    pub source_prep: SourcePrepModel,
}

impl Default for ProtocolParams {
    fn default() -> Self {
        Self {
            l_km: 600.0,
            n: 2,
            l_att_km: attenuation_length_km(FIBER_LOSS_DB_PER_KM),
            c_m_per_s: SPEED_IN_FIBER_M_PER_S,
            eta_m: 0.9,
            eta_d: 0.9,
            p: 0.01,
            p1: 0.9,
            alpha2: 0.84,
            n_modes: 1,
            rep_rate_hz: DEFAULT_REP_RATE_HZ,
            f_target: 0.9,
            source_prep: SourcePrepModel::default(),
        }
    }
}

fn unit(field: &'static str, value: f64) -> Result<(), RateError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(RateError::OutOfRange { field, value, expected: "[0, 1]" })
    }
}

fn positive(field: &'static str, value: f64) -> Result<(), RateError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(RateError::OutOfRange { field, value, expected: "> 0" })
    }
}

impl ProtocolParams {
    pub fn validate(&self) -> Result<(), RateError> {
        positive("L_km", self.l_km)?;
        positive("L_att_km", self.l_att_km)?;
        positive("c_m_per_s", self.c_m_per_s)?;
        positive("rep_rate_hz", self.rep_rate_hz)?;
        unit("eta_m", self.eta_m)?;
        unit("eta_d", self.eta_d)?;
        unit("p", self.p)?;
        unit("p_1", self.p1)?;
        unit("alpha2", self.alpha2)?;
        unit("F_target", self.f_target)?;
        if self.n_modes == 0 {
            return Err(RateError::OutOfRange { field: "N_m", value: 0.0, expected: ">= 1" });
        }
        if self.n > 30 {
            return Err(RateError::OutOfRange { field: "n", value: self.n as f64, expected: "<= 30" });
        }
        Ok(())
    }

    pub fn links(&self) -> u64 {
        1u64 << self.n
    }

    pub fn l0_km(&self) -> f64 {
        self.l_km / self.links() as f64
    }

    pub fn eta(&self) -> f64 {
        self.eta_m * self.eta_d
    }

    pub fn beta2(&self) -> f64 {
        1.0 - self.alpha2
    }

    pub fn eta_t(&self) -> f64 {
        transmission(self.l0_km(), self.l_att_km)
    }

    /// Elementary-link communication time `L0/c`, seconds.
    pub fn l0_over_c(&self) -> f64 {
        self.l0_km() * 1e3 / self.c_m_per_s
    }

    pub fn with_n(&self, n: u32) -> Self {
        Self { n, ..self.clone() }
    }
}

/// `exp(−L0 / (2 L_att))`.
pub fn transmission(l0_km: f64, l_att_km: f64) -> f64 {
    (-l0_km / (2.0 * l_att_km)).exp()
}

/// Time per pair for a single-photon source sent straight through the fiber.
pub fn direct_transmission_time(l_km: f64, source_rate_hz: f64, db_per_km: f64) -> f64 {
    10f64.powf(db_per_km * l_km / 10.0) / source_rate_hz
}
