use std::collections::BTreeMap;

use fock_engine::{DetectorModel, FockDensity, Occupation, PSeries};

use crate::error::ChainError;
use crate::link::TwoModeLink;

pub const POST_SELECT_MODES: [&str; 4] = ["a1", "a2", "z1", "z2"];

/// `(|1001⟩ + |0110⟩)/√2` over `(a1, a2, z1, z2)`.
pub fn target_state() -> Vec<(Occupation, PSeries)> {
    let h = PSeries::constant(std::f64::consts::FRAC_1_SQRT_2);
    vec![(vec![1, 0, 0, 1], h), (vec![0, 1, 1, 0], h)]
}

/// Project two chains `(A1, Z1)` and `(A2, Z2)` onto one click per side.
///
/// Each matrix element carries `√(p_{k+l} p_{m+n} p_{k'+l'} p_{m'+n'})` with `p_n` the
/// single-click probability at efficiency `eta`, so populations get `p_{k+l} p_{m+n}`.
/// Returns `σ` over `(a1, a2, z1, z2)` and the success probability relative to the input traces.
pub fn post_select(
    pair1: &TwoModeLink,
    pair2: &TwoModeLink,
    eta: f64,
) -> Result<(FockDensity<PSeries>, PSeries), ChainError> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(ChainError::Efficiency { name: "eta", value: eta });
    }
    let det = DetectorModel::exact(eta)?;
    let p = |n: u8| det.click_probability(n as usize);
    let mut out: BTreeMap<(Occupation, Occupation), PSeries> = BTreeMap::new();
    for (km, km2, v1) in pair1.rho().entries() {
        for (ln, ln2, v2) in pair2.rho().entries() {
            let (k, m, k2, m2) = (km[0], km[1], km2[0], km2[1]);
            let (l, n, l2, n2) = (ln[0], ln[1], ln2[0], ln2[1]);
            let w = (p(k + l) * p(m + n) * p(k2 + l2) * p(m2 + n2)).sqrt();
            if w == 0.0 {
                continue;
            }
            *out.entry((vec![k, l, m, n], vec![k2, l2, m2, n2])).or_default() += (*v1 * *v2).scale(w);
        }
    }
    let cutoff = pair1.rho().cutoff().max(pair2.rho().cutoff());
    let sigma = FockDensity::from_entries(&POST_SELECT_MODES, cutoff, out.into_iter().map(|((k, b), v)| (k, b, v)))?;
    let prob = sigma.trace().try_div(&(pair1.trace() * pair2.trace()));
    let prob = match prob {
        Ok(v) => v,
        Err(_) => PSeries::zero(),
    };
    Ok((sigma, prob))
}

/// Overlap of the normalized `σ` with the target state.
pub fn final_fidelity(sigma: &FockDensity<PSeries>) -> Result<PSeries, ChainError> {
    Ok(sigma.fidelity(&target_state())?)
}
