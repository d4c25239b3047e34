use fock_engine::{pair_source_state, DetectorModel, FockDensity, FockError, PSeries, Response, RootSeries};

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[test]
fn source_vacuum_limit() {
    let rho = pair_source_state("s", "a", 1, 2).unwrap();
    let at_zero = rho.map(|v| v.eval(0.0));
    let vac = FockDensity::from_pure(&["s", "a"], 2, &[(vec![0, 0], 1.0)]).unwrap();
    assert_eq!(at_zero.max_abs_diff(&vac).unwrap(), 0.0);
}

#[test]
fn source_one_pair_weight_is_half_p() {
    let rho = pair_source_state("s", "a", 1, 2).unwrap();
    let e: PSeries = rho.get(&[1, 1], &[1, 1]).square_variable(0.0).unwrap();
    assert_eq!(e.coeff(0), 0.0);
    assert!((e.coeff(1) - 0.5).abs() < 1e-15);
}

#[test]
fn source_two_pair_weight_is_quarter_p_squared() {
    let rho = pair_source_state("s", "a", 2, 4).unwrap();
    let e: PSeries = rho.get(&[2, 2], &[2, 2]).square_variable(0.0).unwrap();
    assert_eq!(e.coeff(1), 0.0);
    assert!((e.coeff(2) - 0.25).abs() < 1e-15);
}

#[test]
fn source_order_bounds() {
    assert_eq!(pair_source_state("s", "a", 4, 8).unwrap_err(), FockError::PairOrder(4));
    assert_eq!(pair_source_state("s", "a", 0, 8).unwrap_err(), FockError::PairOrder(0));
}

#[test]
fn source_trace_is_one_through_order() {
    for pairs in 1..=3 {
        let rho = pair_source_state("s", "a", pairs, 3).unwrap();
        let tr = rho.trace();
        assert_eq!(tr.coeff(0), 1.0);
        for k in 1..=2 * pairs + 1 {
            assert!(tr.coeff(k).abs() < 1e-15, "pairs {pairs} degree {k}: {}", tr.coeff(k));
        }
    }
}

#[test]
fn hong_ou_mandel() {
    let rho = FockDensity::from_pure(&["a", "b"], 2, &[(vec![1, 1], 1.0)]).unwrap();
    let out = rho.apply_beam_splitter("a", "b", H, H).unwrap();
    assert_eq!(out.get(&[1, 1], &[1, 1]), 0.0);
    assert!((out.get(&[2, 0], &[2, 0]) - 0.5).abs() < 1e-15);
    assert!((out.get(&[0, 2], &[0, 2]) - 0.5).abs() < 1e-15);
}

#[test]
fn identity_beam_splitter() {
    let rho = FockDensity::from_pure(&["a", "b"], 3, &[(vec![1, 2], 0.6), (vec![0, 1], 0.8)]).unwrap();
    let out = rho.apply_beam_splitter("a", "b", 1.0, 0.0).unwrap();
    // b† → −b† under t = 1, which is a phase on the second mode only
    let flipped = rho.apply_phase_flip("b").unwrap();
    assert!(out.max_abs_diff(&flipped).unwrap() < 1e-15);
}

#[test]
fn loss_examples() {
    let one = FockDensity::from_pure(&["a"], 2, &[(vec![1], 1.0)]).unwrap();
    assert_eq!(one.apply_loss("a", 1.0).unwrap(), one);
    let half = one.apply_loss("a", 0.5).unwrap();
    assert!((half.get(&[1], &[1]) - 0.5).abs() < 1e-15);
    assert!((half.get(&[0], &[0]) - 0.5).abs() < 1e-15);

    let eta = 0.3;
    let two = FockDensity::from_pure(&["a"], 2, &[(vec![2], 1.0)]).unwrap().apply_loss("a", eta).unwrap();
    assert!((two.get(&[2], &[2]) - eta * eta).abs() < 1e-15);
    assert!((two.get(&[1], &[1]) - 2.0 * eta * (1.0 - eta)).abs() < 1e-15);
    assert!((two.get(&[0], &[0]) - (1.0 - eta).powi(2)).abs() < 1e-15);
    assert!(one.apply_loss("a", 1.5).is_err());
}

#[test]
fn detection_examples() {
    let det1 = DetectorModel::exact(1.0).unwrap();
    let one = FockDensity::from_pure(&["a", "b"], 2, &[(vec![1, 0], 1.0)]).unwrap();
    let (_, p) = one.detect_one("a", &det1).unwrap();
    assert_eq!(p, 1.0);

    let eta = 0.7;
    let det = DetectorModel::exact(eta).unwrap();
    let two = FockDensity::from_pure(&["a"], 2, &[(vec![2], 1.0)]).unwrap();
    let (_, p) = two.detect_one("a", &det).unwrap();
    assert!((p - 2.0 * eta * (1.0 - eta)).abs() < 1e-15);

    let vac = FockDensity::<f64>::vacuum(&["a", "b"], 2).unwrap();
    let (cond, p) = vac.detect_one("a", &det).unwrap();
    assert_eq!(p, 0.0);
    assert!(cond.is_empty());
    assert_eq!(cond.modes(), &["b".to_string()]);
}

#[test]
fn detection_keeps_other_modes_coherent() {
    let rho = FockDensity::from_pure(&["a", "b"], 2, &[(vec![1, 0], H), (vec![1, 1], H)]).unwrap();
    let det = DetectorModel::exact(1.0).unwrap();
    let (cond, p) = rho.detect_one("a", &det).unwrap();
    assert!((p - 1.0).abs() < 1e-15);
    assert!((cond.get(&[0], &[1]) - 0.5).abs() < 1e-15);
}

#[test]
fn linear_detector_ignores_other_photons() {
    let rho = FockDensity::from_pure(&["a"], 3, &[(vec![3], 1.0)]).unwrap();
    let det = DetectorModel::new(0.01, Response::LowEfficiencyLinear).unwrap();
    let (_, p) = rho.detect_one("a", &det).unwrap();
    assert!((p - 0.03).abs() < 1e-15);
}

#[test]
fn fidelity_with_itself_is_one() {
    let psi = vec![(vec![0, 1], RootSeries::constant(H)), (vec![1, 0], RootSeries::constant(H))];
    let rho = FockDensity::from_pure(&["a", "b"], 1, &psi).unwrap();
    let f = rho.fidelity(&psi).unwrap();
    assert!((f.coeff(0) - 1.0).abs() < 1e-15);
    assert!(f.coeffs()[1..].iter().all(|&c| c.abs() < 1e-15));
}

#[test]
fn partial_trace_of_product() {
    let a = FockDensity::from_pure(&["a"], 2, &[(vec![0], 0.6), (vec![2], 0.8)]).unwrap();
    let b = FockDensity::from_pure(&["b"], 2, &[(vec![1], H), (vec![0], H)]).unwrap();
    let ab = a.tensor(&b).unwrap();
    assert!(ab.partial_trace(&["a"]).unwrap().max_abs_diff(&b).unwrap() < 1e-15);
    assert!(ab.partial_trace(&["b"]).unwrap().max_abs_diff(&a).unwrap() < 1e-15);
}

#[test]
fn complex_backend_works() {
    use fock_engine::Complex64;
    let i = Complex64::new(0.0, H);
    let rho = FockDensity::from_pure(&["a", "b"], 2, &[(vec![1, 0], Complex64::new(H, 0.0)), (vec![0, 1], i)]).unwrap();
    let out = rho.apply_beam_splitter("a", "b", H, H).unwrap().apply_loss("a", 0.4).unwrap();
    assert!(out.hermiticity_defect() < 1e-12);
    let tr = out.trace();
    assert!((tr.re - 1.0).abs() < 1e-12 && tr.im.abs() < 1e-12);
}
