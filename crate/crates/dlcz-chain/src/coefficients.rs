use fock_engine::PSeries;

use crate::error::ChainError;
use crate::link::{elementary_link, LinkModel, TwoModeLink};
use crate::postselect::{final_fidelity, post_select};
use crate::swap::swap;

pub const MAX_LEVEL: usize = 4;
const INTEGER_TOL: f64 = 1e-6;

/// `F(n) = 1 − A_n p(1−η) + B_n p²(1−η)²`.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorCoefficients {
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub eta_checked: Vec<f64>,
}

/// Link used for coefficient extraction: the low-efficiency heralding approximation.
pub fn reference_link() -> Result<TwoModeLink, ChainError> {
    elementary_link(1.0, 0.1, LinkModel::LowEfficiency)
}

/// Levels `0..=n` of a chain built from identical links.
pub fn chain_levels(n: usize, eta: f64, link: &TwoModeLink) -> Result<Vec<TwoModeLink>, ChainError> {
    let mut levels = vec![link.clone()];
    for _ in 0..n {
        let last = levels.last().expect("non-empty");
        let next = swap(last, last, eta)?;
        levels.push(next);
    }
    Ok(levels)
}

/// Final fidelity after `n` swap levels and post-selection, as a series in `p`.
pub fn fidelity_series(n: usize, eta: f64, link: &TwoModeLink) -> Result<PSeries, ChainError> {
    if n > MAX_LEVEL {
        return Err(ChainError::Level(n));
    }
    let top = chain_levels(n, eta, link)?.pop().expect("non-empty");
    let (sigma, _) = post_select(&top, &top, eta)?;
    final_fidelity(&sigma)
}

fn integral(which: &'static str, n: usize, value: f64, eta: f64) -> Result<f64, ChainError> {
    if (value - value.round()).abs() > INTEGER_TOL {
        return Err(ChainError::NonInteger { which, n, value, eta });
    }
    Ok(value)
}

pub fn extract_coefficients_with(n: usize, eta: f64, link: &TwoModeLink) -> Result<ErrorCoefficients, ChainError> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(if eta == 1.0 {
            ChainError::PerfectEfficiency(eta)
        } else {
            ChainError::Efficiency { name: "eta", value: eta }
        });
    }
    let f = fidelity_series(n, eta, link)?;
    if (f.coeff(0) - 1.0).abs() > INTEGER_TOL {
        return Err(ChainError::ZerothOrder(f.coeff(0)));
    }
    let a = integral("A", n, -f.coeff(1) / (1.0 - eta), eta)?;
    let b = integral("B", n, f.coeff(2) / (1.0 - eta).powi(2), eta)?;
    Ok(ErrorCoefficients { n, a, b, eta_checked: vec![eta] })
}

pub fn extract_coefficients(n: usize, eta: f64) -> Result<ErrorCoefficients, ChainError> {
    extract_coefficients_with(n, eta, &reference_link()?)
}

/// Extract at each `eta` and require agreement within the integrality tolerance.
pub fn extract_coefficients_across(n: usize, etas: &[f64]) -> Result<ErrorCoefficients, ChainError> {
    let link = reference_link()?;
    let mut result: Option<ErrorCoefficients> = None;
    for &eta in etas {
        let c = extract_coefficients_with(n, eta, &link)?;
        match result.as_mut() {
            None => result = Some(c),
            Some(r) => {
                if (r.a - c.a).abs() > INTEGER_TOL {
                    return Err(ChainError::EtaDependent { which: "A", n, first: r.a, second: c.a });
                }
                if (r.b - c.b).abs() > INTEGER_TOL {
                    return Err(ChainError::EtaDependent { which: "B", n, first: r.b, second: c.b });
                }
                r.eta_checked.push(eta);
            }
        }
    }
    result.ok_or(ChainError::Efficiency { name: "eta", value: f64::NAN })
}
