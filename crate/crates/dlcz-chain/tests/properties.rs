use dlcz_chain::*;
use proptest::prelude::*;

#[test]
fn coefficients_are_published_integers_at_every_eta() {
    for n in 0..=MAX_LEVEL {
        let c = extract_coefficients_across(n, &[0.5, 0.81, 0.9]).unwrap();
        assert!((c.a - PUBLISHED_A[n]).abs() < 1e-6, "A_{n} = {}", c.a);
        assert!((c.b - PUBLISHED_B[n]).abs() < 1e-6, "B_{n} = {}", c.b);
        assert_eq!(c.eta_checked.len(), 3);
    }
}

#[test]
fn coefficient_scaling_converges() {
    let ra = |n: usize| PUBLISHED_A[n] / 4f64.powi(n as i32);
    let rb = |n: usize| PUBLISHED_B[n] / 16f64.powi(n as i32);
    assert!((ra(4) / ra(3) - 1.0).abs() < 0.05);
    assert!((rb(4) / rb(3) - 1.0).abs() < 0.05);
}

#[test]
fn mixture_consistency_and_support() {
    let eta = 0.81;
    let levels = chain_levels(4, eta, &reference_link().unwrap()).unwrap();
    for (n, link) in levels.iter().enumerate() {
        let (alpha, beta) = link.zeroth_order_mixture();
        let (a, b) = dlcz_mixture_weights(n, eta);
        assert!((alpha - a).abs() < 1e-12 && (beta - b).abs() < 1e-12, "n = {n}");
        assert!((beta / alpha - (1.0 - eta) * (2f64.powi(n as i32) - 1.0)).abs() < 1e-9);
        assert!(link.rho().max_total_occupation() <= 3);
        assert!(link.rho().hermiticity_defect() < 1e-12);
    }
}

#[test]
fn cutoff_five_changes_nothing() {
    let eta = 0.81;
    let link = reference_link().unwrap();
    let wide = TwoModeLink::new(link.rho().with_cutoff(5).unwrap()).unwrap();
    let a = swap(&link, &link, eta).unwrap();
    let b = swap(&wide, &wide, eta).unwrap();
    assert_eq!(a.rho().max_abs_diff(b.rho()).unwrap(), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduced_swap_matches_circuit(eta_m in 0.3f64..=1.0, eta_d in 0.3f64..=1.0, exact in any::<bool>()) {
        let model = if exact { LinkModel::Exact } else { LinkModel::LowEfficiency };
        let l0 = elementary_link(0.9, 0.2, model).unwrap();
        let eta = eta_m * eta_d;
        let l1 = swap(&l0, &l0, eta).unwrap();
        for link in [&l0, &l1] {
            let reduced = swap(link, link, eta).unwrap();
            let circuit = swap_circuit(link, link, eta_m, eta_d).unwrap();
            prop_assert!(reduced.rho().max_abs_diff(circuit.rho()).unwrap() < 1e-9);
        }
    }

    #[test]
    fn swap_probability_recursion(eta in 0.05f64..=1.0) {
        let levels = chain_levels(3, eta, &reference_link().unwrap()).unwrap();
        for i in 1..levels.len() {
            let p = swap_success_probability(&levels[i - 1], &levels[i - 1], eta).unwrap().coeff(0);
            prop_assert!((p - dlcz_swap_probability(i, eta)).abs() < 1e-12);
            prop_assert!(p > 0.0 && p <= 1.0);
        }
    }

    #[test]
    fn swap_preserves_hermiticity(eta in 0.05f64..=1.0) {
        let l = elementary_link(0.8, 0.3, LinkModel::Exact).unwrap();
        let out = swap(&l, &l, eta).unwrap();
        prop_assert!(out.rho().hermiticity_defect() < 1e-12);
    }
}
