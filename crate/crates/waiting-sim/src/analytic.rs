/// `H_k = 1 + 1/2 + ... + 1/k`.
pub fn harmonic(k: u32) -> f64 {
    (1..=k).map(|j| 1.0 / j as f64).sum()
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Exact mean of the maximum of `k` independent geometric variables with success `p`:
/// `Σ_{j=1}^{k} (−1)^{j+1} C(k,j) / (1 − (1−p)^j)`.
pub fn expected_max_geometric(k: u32, p: f64) -> f64 {
    assert!(p > 0.0 && p <= 1.0, "success probability must lie in (0, 1]");
    let log_q = (-p).ln_1p();
    (1..=k)
        .map(|j| {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            let denom = -(j as f64 * log_q).exp_m1();
            sign * binomial(k, j) / denom
        })
        .sum()
}
