use crate::error::RateError;

/// Multiphoton error coefficients of `F = 1 − A_n x + B_n x²`, `x = p(1−η)`.
pub const A_TABLE: [f64; 5] = [8.0, 18.0, 56.0, 204.0, 788.0];
pub const B_TABLE: [f64; 5] = [37.0, 250.0, 2966.0, 43206.0, 669702.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FidelityForm {
    /// `1 − A_n x`.
    Linear,
    /// `1 − A_n x + B_n x²`.
    #[default]
    Quadratic,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PCap {
    Bounded(f64),
    /// No multiphoton error at `η = 1`.
    Unconstrained,
}

impl PCap {
    pub fn clamp(self, hi: f64) -> f64 {
        match self {
            PCap::Bounded(p) => p.min(hi),
            PCap::Unconstrained => hi,
        }
    }
}

fn coefficients(n: u32) -> Result<(f64, f64), RateError> {
    let i = n as usize;
    if i >= A_TABLE.len() {
        return Err(RateError::NoCoefficients(n));
    }
    Ok((A_TABLE[i], B_TABLE[i]))
}

pub fn fidelity_estimate(n: u32, eta: f64, p: f64, form: FidelityForm) -> Result<f64, RateError> {
    let (a, b) = coefficients(n)?;
    let x = p * (1.0 - eta);
    Ok(match form {
        FidelityForm::Linear => 1.0 - a * x,
        FidelityForm::Quadratic => 1.0 - a * x + b * x * x,
    })
}

/// Largest `p` whose estimated fidelity stays at or above `f_target`.
///
/// For the quadratic form this is the smaller root; if the parabola never reaches
/// `f_target` its minimum is returned.
pub fn max_p_for_fidelity(n: u32, eta: f64, f_target: f64, form: FidelityForm) -> Result<PCap, RateError> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(RateError::OutOfRange { field: "eta", value: eta, expected: "[0, 1]" });
    }
    if !(0.0..=1.0).contains(&f_target) {
        return Err(RateError::OutOfRange { field: "F_target", value: f_target, expected: "[0, 1]" });
    }
    let (a, b) = coefficients(n)?;
    if eta == 1.0 {
        return Ok(PCap::Unconstrained);
    }
    let e = 1.0 - f_target;
    let (a, b) = (a * (1.0 - eta), b * (1.0 - eta).powi(2));
    let p = match form {
        FidelityForm::Linear => e / a,
        FidelityForm::Quadratic => {
            let disc = a * a - 4.0 * b * e;
            if disc >= 0.0 {
                // rationalised smaller root, stable as e → 0
                2.0 * e / (a + disc.sqrt())
            } else {
                a / (2.0 * b)
            }
        }
    };
    Ok(PCap::Bounded(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_cap_example() {
        let PCap::Bounded(p) = max_p_for_fidelity(2, 0.81, 0.9, FidelityForm::Linear).unwrap() else { panic!() };
        assert!((p - 0.0094).abs() < 1e-4);
    }

    #[test]
    fn quadratic_root_meets_target() {
        let PCap::Bounded(p) = max_p_for_fidelity(2, 0.81, 0.9, FidelityForm::Quadratic).unwrap() else { panic!() };
        let f = fidelity_estimate(2, 0.81, p, FidelityForm::Quadratic).unwrap();
        assert!((f - 0.9).abs() < 1e-12);
    }

    #[test]
    fn perfect_target_forbids_emission() {
        for form in [FidelityForm::Linear, FidelityForm::Quadratic] {
            assert_eq!(max_p_for_fidelity(1, 0.81, 1.0, form).unwrap(), PCap::Bounded(0.0));
        }
    }

    #[test]
    fn perfect_memories_unconstrained() {
        assert_eq!(max_p_for_fidelity(3, 1.0, 0.9, FidelityForm::Linear).unwrap(), PCap::Unconstrained);
    }

    #[test]
    fn table_bounds() {
        assert!(max_p_for_fidelity(5, 0.8, 0.9, FidelityForm::Linear).is_err());
    }
}
