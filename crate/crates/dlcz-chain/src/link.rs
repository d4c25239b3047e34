use fock_engine::{pair_source_state, DetectorModel, FockDensity, PSeries, Response, RootSeries, STRUCTURAL_TOL};

use crate::error::ChainError;

/// Per-mode cutoff for chain states.
pub const CHAIN_CUTOFF: u8 = 4;
const GENERATION_CUTOFF: u8 = 6;
const SOURCE_PAIRS: usize = 3;
const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Detection model used when heralding an elementary link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LinkModel {
    /// Fiber loss followed by an exact number-resolving detector.
    Exact,
    /// `p_1 ≈ η`, `p_2 ≈ 2η`, second output ignored.
    #[default]
    LowEfficiency,
}

/// Two stored modes `A`, `B`; the state is the heralded operator divided by `p`,
/// so its trace is the success probability over `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeLink {
    rho: FockDensity<PSeries>,
}

impl TwoModeLink {
    pub fn new(rho: FockDensity<PSeries>) -> Result<Self, ChainError> {
        if rho.modes().len() != 2 {
            return Err(fock_engine::FockError::ShapeMismatch { expected: 2, got: rho.modes().len() }.into());
        }
        Ok(Self { rho: rho.relabel(&["A", "B"])? })
    }

    pub fn rho(&self) -> &FockDensity<PSeries> {
        &self.rho
    }

    pub fn into_rho(self) -> FockDensity<PSeries> {
        self.rho
    }

    /// Trace as a series; for an elementary link this is `P_0 / p`.
    pub fn trace(&self) -> PSeries {
        self.rho.trace()
    }

    /// `(α, β)` of the normalized order-`p⁰` state `α|ψ+⟩⟨ψ+| + β|00⟩⟨00|`.
    pub fn zeroth_order_mixture(&self) -> (f64, f64) {
        let r0 = self.rho.map(|v| v.coeff(0));
        let tr = r0.trace();
        let alpha = (r0.get(&[0, 1], &[0, 1]) + r0.get(&[1, 0], &[1, 0])) / tr;
        let beta = r0.get(&[0, 0], &[0, 0]) / tr;
        (alpha, beta)
    }
}

fn check_efficiency(name: &'static str, value: f64) -> Result<(), ChainError> {
    if value > 0.0 && value <= 1.0 {
        Ok(())
    } else {
        Err(ChainError::Efficiency { name, value })
    }
}

/// Convert a heralded `√p` series state into the `1/p`-scaled `p` series link.
fn reduce(rho: &FockDensity<RootSeries>) -> Result<FockDensity<PSeries>, ChainError> {
    let mut entries = Vec::with_capacity(rho.len());
    for (k, b, v) in rho.entries() {
        let in_p: fock_engine::Series<4> = v.square_variable(STRUCTURAL_TOL)?;
        entries.push((k.clone(), b.clone(), in_p.shift_down(1, STRUCTURAL_TOL)?.resize::<3>()));
    }
    let out = FockDensity::from_entries(rho.modes(), rho.cutoff(), entries)?;
    Ok(out)
}

/// Heralded elementary link from two pair sources, a balanced beam splitter and
/// a single click in either output, with the π correction on `s_b` after a `d̃` click.
pub fn elementary_link(eta_d: f64, eta_t: f64, model: LinkModel) -> Result<TwoModeLink, ChainError> {
    check_efficiency("eta_d", eta_d)?;
    check_efficiency("eta_t", eta_t)?;
    let s1 = pair_source_state("s_a", "a", SOURCE_PAIRS, GENERATION_CUTOFF)?;
    let s2 = pair_source_state("s_b", "b", SOURCE_PAIRS, GENERATION_CUTOFF)?;
    let mut state = s1.tensor(&s2)?;
    let det = match model {
        LinkModel::Exact => {
            state = state.apply_loss("a", eta_t)?.apply_loss("b", eta_t)?;
            DetectorModel::exact(eta_d)?
        }
        LinkModel::LowEfficiency => DetectorModel::new(eta_d * eta_t, Response::LowEfficiencyLinear)?,
    };
    let mixed = state.apply_beam_splitter("a", "b", H, H)?;
    let (d_click, _) = mixed.detect_one("a", &det)?;
    let (d_click, _) = d_click.detect_none("b", &det)?;
    let (dt_click, _) = mixed.detect_one("b", &det)?;
    let (dt_click, _) = dt_click.detect_none("a", &det)?;
    let dt_click = dt_click.apply_phase_flip("s_b")?;
    let heralded = d_click.add(&dt_click)?;
    let rho = reduce(&heralded)?.with_cutoff(CHAIN_CUTOFF)?;
    TwoModeLink::new(rho)
}
