use optimizer::{
    crossover, curve, optimize, sensitivity, Crossover, OptimizeError, OptimizerSettings, SensitivityParam,
};
use protocol_rates::{Protocol, ProtocolParams};

fn within(x: f64, want: f64, rel: f64) -> bool {
    (x / want - 1.0).abs() <= rel
}

#[test]
fn dlcz_630_km_uses_four_links() {
    let r = optimize(Protocol::Dlcz, 630.0, &ProtocolParams::default(), &OptimizerSettings::default()).unwrap();
    assert_eq!(r.n, 2);
    assert!((r.p - 0.01).abs() < 0.002, "p = {}", r.p);
    assert!(r.constraint_active);
    assert!(within(r.t_tot, 340.0, 0.10), "T = {}", r.t_tot);
}

#[test]
fn pair_source_560_km() {
    let r = optimize(Protocol::PairSource, 560.0, &ProtocolParams::default(), &OptimizerSettings::default()).unwrap();
    assert_eq!(r.links(), 8);
    assert!((r.p - 0.013).abs() < 1e-9);
    let a = r.alpha2.unwrap();
    assert!((a - 0.26).abs() <= 0.02, "alpha2 = {a}");
    assert!(within(r.t_tot, 15.0, 0.10));
}

#[test]
fn sps_580_km() {
    let r = optimize(Protocol::Sps, 580.0, &ProtocolParams::default(), &OptimizerSettings::default()).unwrap();
    assert_eq!(r.links(), 4);
    assert!((1.0 - r.alpha2.unwrap() - 0.16).abs() <= 0.02);
    assert!(within(r.t_tot, 44.0, 0.10));
}

#[test]
fn jiang_speedup_matches_the_anchor_times() {
    let (t, s) = (ProtocolParams::default(), OptimizerSettings::default());
    let d = optimize(Protocol::Dlcz, 610.0, &t, &s).unwrap().t_tot;
    let j = optimize(Protocol::Jiang, 610.0, &t, &s).unwrap();
    assert_eq!(j.links(), 4);
    let ratio = d / j.t_tot;
    assert!((1.4..=2.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn dlcz_crossover_near_630() {
    let c = crossover(Protocol::Dlcz, &ProtocolParams::default(), &OptimizerSettings::default()).unwrap();
    let Crossover::At { l_km, .. } = c else { panic!("{c:?}") };
    assert!((l_km - 630.0).abs() <= 20.0, "{l_km}");
}

#[test]
fn simon_crossover_near_510() {
    let t = ProtocolParams { n_modes: 100, ..ProtocolParams::default() };
    let Crossover::At { l_km, .. } = crossover(Protocol::Simon, &t, &OptimizerSettings::default()).unwrap() else {
        panic!()
    };
    assert!((l_km - 510.0).abs() <= 20.0, "{l_km}");
}

#[test]
fn faster_reference_source_moves_crossover_out() {
    let t = ProtocolParams::default();
    let at = |rate: f64| {
        let s = OptimizerSettings { direct_source_rate_hz: rate, ..OptimizerSettings::default() };
        crossover(Protocol::Dlcz, &t, &s).unwrap()
    };
    let (Crossover::At { l_km: a, .. }, Crossover::At { l_km: b, .. }) = (at(1e10), at(1e12)) else { panic!() };
    assert!(b > a);
    assert_eq!(at(1e300), Crossover::NoneInBracket);
}

#[test]
fn curve_is_monotone_and_ordered() {
    let grid: Vec<f64> = (0..10).rev().map(|i| 200.0 + 200.0 * i as f64).collect();
    let pts = curve(&Protocol::ALL, &grid, &ProtocolParams::default(), &OptimizerSettings::default()).unwrap();
    assert!(pts.windows(2).all(|w| w[0].l_km < w[1].l_km));
    for (i, pr) in Protocol::ALL.iter().enumerate() {
        let times: Vec<f64> = pts.iter().map(|p| p.times[i].1.unwrap()).collect();
        assert!(times.windows(2).all(|w| w[1] > w[0]), "{pr} not monotone");
    }
}

#[test]
fn curve_rejects_out_of_range_distances() {
    let err = curve(&[Protocol::Dlcz], &[50.0], &ProtocolParams::default(), &OptimizerSettings::default()).unwrap_err();
    assert_eq!(err, OptimizeError::Distance(50.0));
}

#[test]
fn impossible_target_is_infeasible() {
    let t = ProtocolParams { f_target: 1.0, ..ProtocolParams::default() };
    let err = optimize(Protocol::PairSource, 600.0, &t, &OptimizerSettings::default()).unwrap_err();
    assert!(matches!(err, OptimizeError::Infeasible { .. }));
}

#[test]
fn perfect_efficiency_is_the_fastest_point() {
    let values = [0.8, 0.85, 0.9, 0.95, 1.0];
    for param in [SensitivityParam::EtaM, SensitivityParam::EtaD] {
        let pts = sensitivity(
            Protocol::Sps,
            600.0,
            param,
            &values,
            &ProtocolParams::default(),
            &OptimizerSettings::default(),
        )
        .unwrap();
        let last = pts.last().unwrap();
        assert!(last.t_tot.is_finite());
        assert!(pts.iter().all(|p| p.t_tot >= last.t_tot));
    }
}

#[test]
fn cap_below_the_grid_is_infeasible() {
    let t = ProtocolParams { f_target: 0.99999, ..ProtocolParams::default() };
    let err = optimize(Protocol::Jiang, 600.0, &t, &OptimizerSettings::default()).unwrap_err();
    assert!(matches!(err, OptimizeError::Infeasible { protocol: Protocol::Jiang, .. }));
}
