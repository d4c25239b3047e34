use dlcz_chain::*;
use fock_engine::{FockDensity, PSeries};

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn ideal_link() -> TwoModeLink {
    let h = PSeries::constant(H);
    let rho = FockDensity::from_pure(&["A", "B"], CHAIN_CUTOFF, &[(vec![0, 1], h), (vec![1, 0], h)]).unwrap();
    TwoModeLink::new(rho).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn zeroth_order_is_psi_plus() {
    for model in [LinkModel::Exact, LinkModel::LowEfficiency] {
        let link = elementary_link(0.9, 0.05, model).unwrap();
        let r0 = link.rho().map(|v| v.coeff(0)).normalize().unwrap();
        let psi = FockDensity::from_pure(&["A", "B"], CHAIN_CUTOFF, &[(vec![0, 1], H), (vec![1, 0], H)]).unwrap();
        assert!(r0.max_abs_diff(&psi).unwrap() < 1e-12, "{model:?}");
    }
}

#[test]
fn double_excitation_weight_is_half_p() {
    let link = reference_link().unwrap();
    let tr0 = link.trace().coeff(0);
    let e = link.rho().get(&[1, 1], &[1, 1]);
    assert_eq!(e.coeff(0), 0.0);
    assert!(close(e.coeff(1) / tr0, 0.5, 1e-12));
}

#[test]
fn exact_link_success_probability() {
    let (eta_d, eta_t) = (0.9, 0.0365);
    let link = elementary_link(eta_d, eta_t, LinkModel::Exact).unwrap();
    assert!(close(link.trace().coeff(0), eta_d * eta_t, 1e-15));
    let p = 1e-5;
    let p0 = p * link.trace().eval(p);
    assert!(close(p0, p * eta_d * eta_t, 1e-9));
}

#[test]
fn elementary_link_rejects_zero_efficiency() {
    assert!(elementary_link(0.9, 0.0, LinkModel::Exact).is_err());
    assert!(elementary_link(0.0, 0.5, LinkModel::LowEfficiency).is_err());
}

#[test]
fn ideal_swap_halves_probability() {
    let l = ideal_link();
    let out = swap(&l, &l, 1.0).unwrap();
    assert!(close(out.trace().coeff(0), 0.5, 1e-15));
    let norm = out.rho().normalize().unwrap();
    let d = norm.max_abs_diff(l.rho()).unwrap();
    assert!(d < 1e-12, "{d} {norm:?}");
}

#[test]
fn vacuum_swap_never_clicks() {
    let vac = TwoModeLink::new(FockDensity::<PSeries>::vacuum(&["A", "B"], CHAIN_CUTOFF).unwrap()).unwrap();
    let out = swap(&vac, &vac, 0.8).unwrap();
    assert!(out.trace().is_zero());
}

#[test]
fn one_swap_vacuum_ratio() {
    let eta = 0.81;
    let l = reference_link().unwrap();
    let (alpha, beta) = swap(&l, &l, eta).unwrap().zeroth_order_mixture();
    assert!(close(beta / alpha, 1.0 - eta, 1e-12));
}

#[test]
fn ideal_post_selection() {
    let l = ideal_link();
    let (sigma, prob) = post_select(&l, &l, 1.0).unwrap();
    assert!(close(prob.coeff(0), 0.5, 1e-15));
    let target = FockDensity::from_pure(&POST_SELECT_MODES, CHAIN_CUTOFF, &target_state()).unwrap();
    assert!(sigma.normalize().unwrap().max_abs_diff(&target).unwrap() < 1e-15);
}

#[test]
fn post_selection_matches_closed_form() {
    let eta = 0.81;
    let levels = chain_levels(3, eta, &reference_link().unwrap()).unwrap();
    for (n, link) in levels.iter().enumerate() {
        let (_, prob) = post_select(link, link, eta).unwrap();
        assert!(close(prob.coeff(0), dlcz_post_select_probability(n, eta), 1e-12), "n = {n}");
    }
}

#[test]
fn one_sided_chain_never_post_selects() {
    let only_a = FockDensity::from_pure(&["A", "B"], CHAIN_CUTOFF, &[(vec![1, 0], PSeries::one())]).unwrap();
    let l = TwoModeLink::new(only_a).unwrap();
    let (sigma, prob) = post_select(&l, &l, 0.9).unwrap();
    assert!(prob.is_zero());
    assert!(sigma.is_empty());
}

#[test]
fn coefficient_examples() {
    let c0 = extract_coefficients(0, 0.81).unwrap();
    assert!(close(c0.a, 8.0, 1e-6) && close(c0.b, 37.0, 1e-6));
    let c2 = extract_coefficients(2, 0.81).unwrap();
    assert!(close(c2.a, 56.0, 1e-6) && close(c2.b, 2966.0, 1e-6));
}

#[test]
fn perfect_memories_remove_all_errors() {
    let link = reference_link().unwrap();
    for n in 0..=MAX_LEVEL {
        let f = fidelity_series(n, 1.0, &link).unwrap();
        assert!(close(f.coeff(0), 1.0, 1e-12));
        assert!(f.coeff(1).abs() < 1e-9 && f.coeff(2).abs() < 1e-9, "n = {n}: {f}");
    }
}

#[test]
fn extraction_domain() {
    assert!(matches!(extract_coefficients(5, 0.8), Err(ChainError::Level(5))));
    assert!(matches!(extract_coefficients(1, 1.0), Err(ChainError::PerfectEfficiency(_))));
}

#[test]
fn mixture_weights_examples() {
    let eta = 0.7;
    let (a1, b1) = dlcz_mixture_weights(1, eta);
    assert!(close(a1, 1.0 / (2.0 - eta), 1e-15) && close(b1, (1.0 - eta) / (2.0 - eta), 1e-15));
    let (a3, b3) = dlcz_mixture_weights(3, 0.81);
    assert!(close(b3 / a3, 0.19 * 7.0, 1e-12));
    assert_eq!(dlcz_mixture_weights(4, 1.0).1, 0.0);
}
