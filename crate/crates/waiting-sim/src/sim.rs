use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;
use thiserror::Error;

/// Trials are split over this many independent streams regardless of thread count.
const SHARDS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("at least one trial is required")]
    ZeroTrials,
    #[error("{name} = {value} must lie in (0, 1]")]
    Probability { name: String, value: f64 },
}

/// Number of attempts up to and including the first success.
pub fn geometric_wait<R: Rng + ?Sized>(p: f64, rng: &mut R) -> u64 {
    Geometric::new(p).expect("probability in (0, 1]").sample(rng) + 1
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainModel {
    p0: f64,
    swap_probs: Vec<f64>,
}

fn check(name: impl Into<String>, value: f64) -> Result<(), SimError> {
    if value > 0.0 && value <= 1.0 {
        Ok(())
    } else {
        Err(SimError::Probability { name: name.into(), value })
    }
}

impl ChainModel {
    pub fn new(p0: f64, swap_probs: Vec<f64>) -> Result<Self, SimError> {
        check("P_0", p0)?;
        for (i, &p) in swap_probs.iter().enumerate() {
            check(format!("P_{}", i + 1), p)?;
        }
        Ok(Self { p0, swap_probs })
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn swap_probs(&self) -> &[f64] {
        &self.swap_probs
    }

    pub fn levels(&self) -> usize {
        self.swap_probs.len()
    }
}

/// Running moments of `(max(X, Y), (X + Y)/2)` over swap attempts at one level.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LevelStats {
    pub attempts: u64,
    sum_m: f64,
    sum_c: f64,
    sum_mm: f64,
    sum_cc: f64,
    sum_mc: f64,
}

impl LevelStats {
    fn record(&mut self, m: f64, c: f64) {
        self.attempts += 1;
        self.sum_m += m;
        self.sum_c += c;
        self.sum_mm += m * m;
        self.sum_cc += c * c;
        self.sum_mc += m * c;
    }

    fn merge(&mut self, o: &Self) {
        self.attempts += o.attempts;
        self.sum_m += o.sum_m;
        self.sum_c += o.sum_c;
        self.sum_mm += o.sum_mm;
        self.sum_cc += o.sum_cc;
        self.sum_mc += o.sum_mc;
    }

    /// `⟨max of two⟩ / ⟨one⟩`.
    pub fn f(&self) -> f64 {
        self.sum_m / self.sum_c
    }

    /// Ratio-estimator standard error.
    pub fn f_std_error(&self) -> f64 {
        let f = self.f();
        let resid = self.sum_mm - 2.0 * f * self.sum_mc + f * f * self.sum_cc;
        resid.max(0.0).sqrt() / self.sum_c
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WaitingStats {
    pub trials: u64,
    /// Mean completion time in attempt periods.
    pub mean_time: f64,
    pub std_error: f64,
    /// Per-level moments, level 1 first.
    pub levels: Vec<LevelStats>,
}

impl WaitingStats {
    pub fn empirical_f(&self) -> Vec<f64> {
        self.levels.iter().map(LevelStats::f).collect()
    }
}

#[derive(Clone, Debug, Default)]
struct Accumulator {
    trials: u64,
    sum_t: f64,
    sum_tt: f64,
    levels: Vec<LevelStats>,
}

fn sample_level<R: Rng>(model: &ChainModel, level: usize, rng: &mut R, levels: &mut [LevelStats]) -> u64 {
    if level == 0 {
        return geometric_wait(model.p0, rng);
    }
    let p = model.swap_probs[level - 1];
    let mut t = 0;
    loop {
        let x = sample_level(model, level - 1, rng, levels);
        let y = sample_level(model, level - 1, rng, levels);
        let m = x.max(y);
        levels[level - 1].record(m as f64, (x + y) as f64 / 2.0);
        t += m;
        if p >= 1.0 || rng.random::<f64>() < p {
            return t;
        }
    }
}

fn run_shard(model: &ChainModel, trials: u64, seed: u64, shard: u64) -> Accumulator {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    let mut acc = Accumulator { levels: vec![LevelStats::default(); model.levels()], ..Default::default() };
    for _ in 0..trials {
        let t = sample_level(model, model.levels(), &mut rng, &mut acc.levels) as f64;
        acc.trials += 1;
        acc.sum_t += t;
        acc.sum_tt += t * t;
    }
    acc
}

/// Simulate `trials` independent chains; the result depends only on `model`, `trials` and `seed`.
pub fn simulate_chain(model: &ChainModel, trials: u64, seed: u64) -> Result<WaitingStats, SimError> {
    if trials == 0 {
        return Err(SimError::ZeroTrials);
    }
    let base = trials / SHARDS;
    let extra = trials % SHARDS;
    let shards: Vec<Accumulator> =
        (0..SHARDS).into_par_iter().map(|s| run_shard(model, base + u64::from(s < extra), seed, s)).collect();
    let mut total = Accumulator { levels: vec![LevelStats::default(); model.levels()], ..Default::default() };
    for a in &shards {
        total.trials += a.trials;
        total.sum_t += a.sum_t;
        total.sum_tt += a.sum_tt;
        for (t, l) in total.levels.iter_mut().zip(&a.levels) {
            t.merge(l);
        }
    }
    let n = total.trials as f64;
    let mean = total.sum_t / n;
    let var = if total.trials > 1 { (total.sum_tt - n * mean * mean).max(0.0) / (n - 1.0) } else { 0.0 };
    Ok(WaitingStats { trials: total.trials, mean_time: mean, std_error: (var / n).sqrt(), levels: total.levels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certain_success_takes_one_attempt() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!((0..100).all(|_| geometric_wait(1.0, &mut rng) == 1));
    }

    #[test]
    fn invalid_model_rejected() {
        assert!(ChainModel::new(0.0, vec![]).is_err());
        assert!(ChainModel::new(0.5, vec![1.5]).is_err());
    }

    #[test]
    fn zero_trials_rejected() {
        let m = ChainModel::new(0.5, vec![]).unwrap();
        assert_eq!(simulate_chain(&m, 0, 1).unwrap_err(), SimError::ZeroTrials);
    }
}
