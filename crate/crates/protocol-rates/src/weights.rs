/// Entangled, single-excitation and vacuum weights of a two-photon link state,
/// normalised as `c2 + 4c1 + c0 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinkWeights {
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl LinkWeights {
    pub fn new(c2: f64, c1: f64, c0: f64) -> Self {
        Self { c2, c1, c0 }
    }

    /// The stationary point with the given entangled weight: `√c0 = 1 − √c2`, `c1 = √(c0 c2)/2`.
    pub fn stationary(c2: f64) -> Self {
        let r0 = 1.0 - c2.sqrt();
        Self { c2, c1: r0 * c2.sqrt() / 2.0, c0: r0 * r0 }
    }

    /// Links of the photon-pair-from-ensembles protocol: `c2 = 1/(2−η)²`.
    pub fn jiang(eta: f64) -> Self {
        let d = 2.0 - eta;
        Self { c2: 1.0 / (d * d), c1: (1.0 - eta) / (2.0 * d * d), c0: (1.0 - eta).powi(2) / (d * d) }
    }

    /// Links of the two-photon-heralded protocol: `c2 = 1/(2−ηη_t)²`.
    pub fn chen(eta: f64, eta_t: f64) -> Self {
        Self::jiang(eta * eta_t)
    }

    /// Conditionally prepared local pairs: `c2 = β⁴/(1−α²η)²`.
    pub fn pair_source(eta: f64, alpha2: f64) -> Self {
        let beta2 = 1.0 - alpha2;
        let d = 1.0 - alpha2 * eta;
        let v = alpha2 * (1.0 - eta);
        Self { c2: beta2 * beta2 / (d * d), c1: beta2 * v / (2.0 * d * d), c0: v * v / (d * d) }
    }

    pub fn normalization(&self) -> f64 {
        self.c2 + 4.0 * self.c1 + self.c0
    }

    pub fn stationarity_defect(&self) -> f64 {
        (self.c0 * self.c2 - 4.0 * self.c1 * self.c1).abs()
    }

    /// `s = c2 + 2c1`; a swap succeeds with probability `η² s² / 2`.
    pub fn swap_amplitude(&self) -> f64 {
        self.c2 + 2.0 * self.c1
    }

    pub fn swap_success(&self, eta: f64) -> f64 {
        let s = self.swap_amplitude();
        eta * eta * s * s / 2.0
    }

    /// Weights after one two-photon swap between two links with these weights.
    pub fn after_swap(&self) -> Self {
        let s2 = self.swap_amplitude().powi(2);
        Self { c2: self.c2 * self.c2 / s2, c1: self.c2 * self.c1 / s2, c0: 4.0 * self.c1 * self.c1 / s2 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jiang_perfect_efficiency() {
        let w = LinkWeights::jiang(1.0);
        assert_eq!((w.c2, w.c1, w.c0), (1.0, 0.0, 0.0));
    }

    #[test]
    fn pair_source_endpoint() {
        let w = LinkWeights::pair_source(0.81, 0.0);
        assert_eq!(w.c2, 1.0);
    }

    #[test]
    fn stationary_matches_named() {
        let a = LinkWeights::jiang(0.7);
        let b = LinkWeights::stationary(a.c2);
        assert!((a.c1 - b.c1).abs() < 1e-15 && (a.c0 - b.c0).abs() < 1e-15);
    }
}
