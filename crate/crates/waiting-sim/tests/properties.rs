use proptest::prelude::*;
use waiting_sim::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn waiting_factor_bracket(p0 in 0.01f64..0.5, p1 in 0.2f64..=1.0, p2 in 0.2f64..=1.0, seed in any::<u64>()) {
        let model = ChainModel::new(p0, vec![p1, p2]).unwrap();
        let s = simulate_chain(&model, 20_000, seed).unwrap();
        for l in &s.levels {
            prop_assert!(l.f() >= 1.0 - 3.0 * l.f_std_error());
            prop_assert!(l.f() <= 2.0 + 3.0 * l.f_std_error());
        }
    }

    #[test]
    fn max_geometric_is_monotone(k in 1u32..8, p in 0.001f64..1.0) {
        let a = expected_max_geometric(k, p);
        prop_assert!(expected_max_geometric(k + 1, p) >= a);
        prop_assert!(a >= 1.0 / p - 1e-9);
    }
}
