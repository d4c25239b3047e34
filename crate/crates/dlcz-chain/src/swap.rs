use std::collections::BTreeMap;

use fock_engine::{factorial, DetectorModel, FockDensity, Occupation, PSeries};

use crate::error::ChainError;
use crate::link::{TwoModeLink, CHAIN_CUTOFF};

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// `Σ_q (−1)^q / (q!(l−q)!(q+m−r)!(r−q)!)`, terms with a negative factorial argument dropped.
pub fn f_lmr(l: usize, m: usize, r: usize) -> f64 {
    let mut s = 0.0;
    for q in 0..=l {
        if q > r || q + m < r {
            continue;
        }
        let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
        s += sign / (factorial(q) * factorial(l - q) * factorial(q + m - r) * factorial(r - q));
    }
    s
}

/// Weight of `ρ^{AB}_{kl,k'l'} ρ^{CD}_{mn,m'n'}` in a single-click swap, one branch.
fn kernel(l: usize, m: usize, l2: usize, m2: usize, eta: f64) -> f64 {
    let s = l + m;
    if s == 0 || s != l2 + m2 {
        return 0.0;
    }
    let sum: f64 =
        (1..=s).map(|r| r as f64 * factorial(r) * factorial(s - r) * f_lmr(l, m, r) * f_lmr(l2, m2, r)).sum();
    eta * (1.0 - eta).powi(s as i32 - 1)
        * 0.5f64.powi(s as i32)
        * (factorial(l) * factorial(m) * factorial(l2) * factorial(m2)).sqrt()
        * sum
}

fn check_eta(eta: f64) -> Result<(), ChainError> {
    if eta > 0.0 && eta <= 1.0 {
        Ok(())
    } else {
        Err(ChainError::Efficiency { name: "eta", value: eta })
    }
}

/// Entanglement swap of `left = (A,B)` and `right = (C,D)` by a click on the mixed `B`, `C` modes.
/// Both click branches are summed after a π correction on `D` that maps `ψ+ ⊗ ψ+` to `ψ+`;
/// the result is unnormalized.
pub fn swap(left: &TwoModeLink, right: &TwoModeLink, eta: f64) -> Result<TwoModeLink, ChainError> {
    check_eta(eta)?;
    let mut out: BTreeMap<(Occupation, Occupation), PSeries> = BTreeMap::new();
    for (kl, kl2, v1) in left.rho().entries() {
        let (k, l, k2, l2) = (kl[0], kl[1] as usize, kl2[0], kl2[1] as usize);
        for (mn, mn2, v2) in right.rho().entries() {
            let (m, n, m2, n2) = (mn[0] as usize, mn[1], mn2[0] as usize, mn2[1]);
            let parity = if (n + n2) % 2 == 0 { 1.0 } else { -1.0 };
            let w = 2.0 * parity * kernel(l, m, l2, m2, eta);
            if w == 0.0 {
                continue;
            }
            let add = (*v1 * *v2).scale(w);
            *out.entry((vec![k, n], vec![k2, n2])).or_default() += add;
        }
    }
    let rho = FockDensity::from_entries(&["A", "B"], CHAIN_CUTOFF, out.into_iter().map(|((k, b), v)| (k, b, v)))?;
    TwoModeLink::new(rho)
}

/// The same swap built as an explicit circuit: readout loss `eta_m` on `B` and `C`,
/// balanced beam splitter, exact detectors of efficiency `eta_d`, and a π phase on `D`
/// after a click in the second output.
pub fn swap_circuit(
    left: &TwoModeLink,
    right: &TwoModeLink,
    eta_m: f64,
    eta_d: f64,
) -> Result<TwoModeLink, ChainError> {
    check_eta(eta_m)?;
    check_eta(eta_d)?;
    let l = left.rho().relabel(&["A", "B"])?;
    let r = right.rho().relabel(&["C", "D"])?;
    let cutoff = 2 * CHAIN_CUTOFF;
    let joint = l
        .tensor(&r)?
        .with_cutoff(cutoff)?
        .apply_loss("B", eta_m)?
        .apply_loss("C", eta_m)?
        .apply_beam_splitter("B", "C", H, H)?;
    let det = DetectorModel::exact(eta_d)?;
    let (first, _) = joint.detect_one("B", &det)?;
    let (first, _) = first.detect_none("C", &det)?;
    let (second, _) = joint.detect_one("C", &det)?;
    let (second, _) = second.detect_none("B", &det)?;
    let second = second.apply_phase_flip("D")?;
    let rho = first.add(&second)?.with_cutoff(CHAIN_CUTOFF)?;
    TwoModeLink::new(rho)
}

/// Success probability of a swap relative to the input traces.
pub fn swap_success_probability(left: &TwoModeLink, right: &TwoModeLink, eta: f64) -> Result<PSeries, ChainError> {
    let out = swap(left, right, eta)?;
    Ok(out.trace().try_div(&(left.trace() * right.trace()))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_small_values() {
        assert_eq!(f_lmr(0, 0, 0), 1.0);
        assert_eq!(f_lmr(1, 0, 1), -1.0);
        assert_eq!(f_lmr(1, 0, 0), 1.0);
        assert_eq!(f_lmr(0, 1, 0), 1.0);
        assert_eq!(f_lmr(0, 1, 1), 1.0);
        assert_eq!(f_lmr(1, 1, 1), 0.0);
    }

    #[test]
    fn kernel_vanishes_without_photons() {
        assert_eq!(kernel(0, 0, 0, 0, 0.9), 0.0);
    }
}
