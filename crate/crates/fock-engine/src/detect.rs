//! Number-resolving photodetection.

use std::collections::BTreeMap;

use crate::binomial;
use crate::density::{FockDensity, Occupation};
use crate::error::FockError;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Response {
    /// `C(n,k) η^k (1−η)^(n−k)`.
    #[default]
    Exact,
    /// Leading order in `η`: `C(n,k) η^k`, so one click from `n` photons weighs `nη` and no click weighs 1.
    LowEfficiencyLinear,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectorModel {
    efficiency: f64,
    response: Response,
}

impl DetectorModel {
    pub fn new(efficiency: f64, response: Response) -> Result<Self, FockError> {
        if !(0.0..=1.0).contains(&efficiency) {
            return Err(FockError::NotAProbability { name: "efficiency", value: efficiency });
        }
        Ok(Self { efficiency, response })
    }

    pub fn exact(efficiency: f64) -> Result<Self, FockError> {
        Self::new(efficiency, Response::Exact)
    }

    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }

    pub fn response(&self) -> Response {
        self.response
    }

    /// Probability of registering `k` photons when `n` arrive.
    pub fn outcome_probability(&self, n: usize, k: usize) -> f64 {
        if k > n {
            return 0.0;
        }
        let e = self.efficiency;
        match self.response {
            Response::Exact => binomial(n, k) * e.powi(k as i32) * (1.0 - e).powi((n - k) as i32),
            Response::LowEfficiencyLinear => binomial(n, k) * e.powi(k as i32),
        }
    }

    /// Single-click probability `p_n = n η (1−η)^(n−1)` for the exact response.
    pub fn click_probability(&self, n: usize) -> f64 {
        self.outcome_probability(n, 1)
    }
}

impl<S: Scalar> FockDensity<S> {
    /// Condition on registering `k` photons in mode `m`, removing the mode.
    /// Returns the unnormalized conditioned state and its trace.
    pub fn detect(&self, m: &str, k: usize, det: &DetectorModel) -> Result<(Self, S), FockError> {
        let i = self.mode_index(m)?;
        let modes: Vec<String> = self.modes().iter().filter(|x| *x != m).cloned().collect();
        let mut out: BTreeMap<(Occupation, Occupation), S> = BTreeMap::new();
        for (ket, bra, v) in self.entries() {
            if ket[i] != bra[i] {
                continue;
            }
            let w = det.outcome_probability(ket[i] as usize, k);
            if w == 0.0 {
                continue;
            }
            let mut k2 = ket.clone();
            k2.remove(i);
            let mut b2 = bra.clone();
            b2.remove(i);
            let add = v.scale(w);
            out.entry((k2, b2)).and_modify(|e| *e = e.clone() + add.clone()).or_insert(add);
        }
        let rho = Self::from_parts(modes, self.cutoff(), out);
        let prob = rho.trace();
        Ok((rho, prob))
    }

    pub fn detect_one(&self, m: &str, det: &DetectorModel) -> Result<(Self, S), FockError> {
        self.detect(m, 1, det)
    }

    pub fn detect_none(&self, m: &str, det: &DetectorModel) -> Result<(Self, S), FockError> {
        self.detect(m, 0, det)
    }
}
