/// `(α_n, β_n)` with `α_0 = 1`, `α_i = α_{i−1}/(2 − α_{i−1}η)`, `β_n = 1 − α_n`.
pub fn dlcz_mixture_weights(n: usize, eta: f64) -> (f64, f64) {
    let mut alpha = 1.0;
    for _ in 0..n {
        alpha /= 2.0 - alpha * eta;
    }
    (alpha, 1.0 - alpha)
}

/// `P_i = α_{i−1} η (1 − α_{i−1} η / 2)` for the swap producing level `i ≥ 1`.
pub fn dlcz_swap_probability(i: usize, eta: f64) -> f64 {
    let (a, _) = dlcz_mixture_weights(i.saturating_sub(1), eta);
    a * eta * (1.0 - a * eta / 2.0)
}

/// `α_n² η² / 2`.
pub fn dlcz_post_select_probability(n: usize, eta: f64) -> f64 {
    let (a, _) = dlcz_mixture_weights(n, eta);
    a * a * eta * eta / 2.0
}
