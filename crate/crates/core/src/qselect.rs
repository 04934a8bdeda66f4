//! Relay selection by tabular Q-learning over a gain-ratio reward matrix.
//!
//! States and actions are both relays: taking action `a` in state `s` moves
//! the agent to relay `a` and pays `RW[s][a] = g_a / g_s`, or zero when that
//! ratio is below one. The relay with the largest relay-to-IRS gain is
//! therefore the only column that pays in every row, and the greedy policy of
//! the trained table converges on it.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::seed::SimRng;

/// Power gain of a relay-to-IRS channel, summed over elements.
pub fn relay_gain(h_relay_irs: &[Complex64]) -> f64 {
    h_relay_irs.iter().map(|h| h.norm_sqr()).sum()
}

/// Index of the largest value; ties go to the lowest index.
fn argmax(values: impl IntoIterator<Item = f64>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

pub fn greedy_max_gain_relay(gains: &[f64]) -> Result<usize> {
    argmax(gains.iter().copied()).ok_or_else(|| Error::invalid("cannot select from an empty relay set"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewardMatrix {
    size: usize,
    entries: Vec<f64>,
    gains: Vec<f64>,
}

impl RewardMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, state: usize, action: usize) -> f64 {
        self.entries[state * self.size + action]
    }

    pub fn row(&self, state: usize) -> &[f64] {
        &self.entries[state * self.size..(state + 1) * self.size]
    }

    pub fn gains(&self) -> &[f64] {
        &self.gains
    }

    pub fn max_entry(&self) -> f64 {
        self.entries.iter().copied().fold(0.0, f64::max)
    }
}

pub fn build_reward_matrix(gains: &[f64]) -> Result<RewardMatrix> {
    if gains.is_empty() {
        return Err(Error::invalid("reward matrix needs at least one relay"));
    }
    if let Some(i) = gains.iter().position(|g| !(*g > 0.0) || !g.is_finite()) {
        return Err(Error::invalid(format!("relay {i} has non-positive gain {}", gains[i])));
    }
    let size = gains.len();
    let mut entries = Vec::with_capacity(size * size);
    for gi in gains {
        entries.extend(gains.iter().map(|gj| {
            let ratio = gj / gi;
            if ratio < 1.0 {
                0.0
            } else {
                ratio
            }
        }));
    }
    // the diagonal must be exactly 1 even when g/g rounds
    for i in 0..size {
        entries[i * size + i] = 1.0;
    }
    Ok(RewardMatrix { size, entries, gains: gains.to_vec() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QLearnConfig {
    pub learning_rate: f64,
    pub discount: f64,
    pub explore_prob: f64,
    pub episodes: usize,
    pub seed: u64,
}

impl Default for QLearnConfig {
    fn default() -> Self {
        QLearnConfig { learning_rate: 0.5, discount: 0.8, explore_prob: 0.7, episodes: 10_000, seed: 0 }
    }
}

impl QLearnConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("learning rate", self.learning_rate),
            ("discount factor", self.discount),
            ("exploration probability", self.explore_prob),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::invalid(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        if self.episodes == 0 {
            return Err(Error::invalid("Q-learning needs at least one episode"));
        }
        Ok(())
    }
}

/// State-action values, rows are the current relay and columns the next.
#[derive(Debug, Clone, PartialEq)]
pub struct QTable {
    size: usize,
    values: Vec<f64>,
}

impl QTable {
    pub fn zeros(size: usize) -> Self {
        QTable { size, values: vec![0.0; size * size] }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, s: usize, a: usize) -> f64 {
        self.values[s * self.size + a]
    }

    pub fn set(&mut self, s: usize, a: usize, value: f64) {
        self.values[s * self.size + a] = value;
    }

    pub fn row(&self, s: usize) -> &[f64] {
        &self.values[s * self.size..(s + 1) * self.size]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn greedy_action(&self, s: usize) -> usize {
        argmax(self.row(s).iter().copied()).unwrap_or(0)
    }

    fn max_value(&self, s: usize) -> f64 {
        self.row(s).iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// One temporal-difference step:
/// `Q(s,a) += lr * (reward + discount * max_a' Q(s',a') - Q(s,a))`.
pub fn q_update(q: &mut QTable, s: usize, a: usize, reward: f64, s_next: usize, learning_rate: f64, discount: f64) {
    let target = reward + discount * q.max_value(s_next);
    let old = q.get(s, a);
    q.set(s, a, old + learning_rate * (target - old));
}

pub fn train(rw: &RewardMatrix, config: &QLearnConfig) -> Result<QTable> {
    train_observed(rw, config, 0, |_, _| {})
}

/// Trains like [`train`] and hands the table to `checkpoint` after every
/// `every` episodes (never, when `every` is zero). The random sequence does
/// not depend on `every`.
pub fn train_observed(
    rw: &RewardMatrix,
    config: &QLearnConfig,
    every: usize,
    mut checkpoint: impl FnMut(usize, &QTable),
) -> Result<QTable> {
    config.validate()?;
    let r = rw.size();
    let mut q = QTable::zeros(r);
    let mut rng = SimRng::seed_from_u64(config.seed);
    for episode in 1..=config.episodes {
        let s = rng.random_range(0..r);
        let explore = rng.random::<f64>() < config.explore_prob;
        let a = if explore { rng.random_range(0..r) } else { q.greedy_action(s) };
        // the chosen relay becomes the next state
        q_update(&mut q, s, a, rw.get(s, a), a, config.learning_rate, config.discount);
        if every > 0 && episode % every == 0 {
            checkpoint(episode, &q);
        }
    }
    Ok(q)
}

/// The action holding the largest value from any state; ties go to the
/// lowest index.
pub fn select_relay(q: &QTable) -> usize {
    let col_max = (0..q.size()).map(|a| (0..q.size()).map(|s| q.get(s, a)).fold(f64::NEG_INFINITY, f64::max));
    argmax(col_max).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn relay_gain_examples() {
        assert_eq!(relay_gain(&[Complex64::new(1.0, 0.0); 256]), 256.0);
        assert_eq!(relay_gain(&[Complex64::new(0.0, 0.0); 4]), 0.0);
        let h = [Complex64::new(0.5, -1.0), Complex64::new(2.0, 0.25)];
        let c = Complex64::new(-1.5, 3.0);
        let scaled: Vec<_> = h.iter().map(|x| x * c).collect();
        assert!((relay_gain(&scaled) - c.norm_sqr() * relay_gain(&h)).abs() < 1e-12);
    }

    #[test]
    fn reward_matrix_examples() {
        let rw = build_reward_matrix(&[2.0, 1.0, 4.0]).unwrap();
        assert_eq!(rw.row(0), &[1.0, 0.0, 2.0]);
        assert_eq!(rw.row(1), &[2.0, 1.0, 4.0]);
        assert_eq!(rw.row(2), &[0.0, 0.0, 1.0]);
        let rw = build_reward_matrix(&[3.0; 4]).unwrap();
        assert!((0..4).all(|i| rw.row(i).iter().all(|&x| x == 1.0)));
        assert_eq!(build_reward_matrix(&[7.0]).unwrap().row(0), &[1.0]);
        assert!(build_reward_matrix(&[1.0, 0.0]).is_err());
        assert!(build_reward_matrix(&[1.0, -2.0]).is_err());
        assert!(build_reward_matrix(&[]).is_err());
    }

    #[test]
    fn q_update_examples() {
        let mut q = QTable::zeros(3);
        q_update(&mut q, 0, 1, 0.0, 1, 0.5, 0.8);
        assert_eq!(q, QTable::zeros(3));

        q_update(&mut q, 0, 1, 2.0, 1, 0.5, 0.8);
        assert_eq!(q.get(0, 1), 1.0);
        assert!(q.values().iter().enumerate().all(|(i, &v)| i == 1 || v == 0.0));

        let before = q.clone();
        q_update(&mut q, 2, 2, 100.0, 0, 0.0, 0.8);
        assert_eq!(q, before);
    }

    #[test]
    fn single_relay() {
        let rw = build_reward_matrix(&[3.0]).unwrap();
        let q = train(&rw, &QLearnConfig::default()).unwrap();
        assert_eq!(q.size(), 1);
        assert!(q.get(0, 0) >= 0.0);
        assert_eq!(select_relay(&q), 0);
    }

    #[test]
    fn training_is_deterministic() {
        let rw = build_reward_matrix(&[2.0, 1.0, 4.0, 0.5]).unwrap();
        let cfg = QLearnConfig { seed: 42, ..Default::default() };
        assert_eq!(train(&rw, &cfg).unwrap(), train(&rw, &cfg).unwrap());
    }

    #[test]
    fn checkpoints_do_not_perturb_training() {
        let rw = build_reward_matrix(&[2.0, 1.0, 4.0]).unwrap();
        let cfg = QLearnConfig { seed: 3, episodes: 1000, ..Default::default() };
        let mut seen = vec![];
        let q = train_observed(&rw, &cfg, 100, |ep, _| seen.push(ep)).unwrap();
        assert_eq!(q, train(&rw, &cfg).unwrap());
        assert_eq!(seen, (1..=10).map(|k| k * 100).collect::<Vec<_>>());
    }

    #[test]
    fn learns_max_gain_relay_across_seeds() {
        let rw = build_reward_matrix(&[2.0, 1.0, 4.0]).unwrap();
        let hits = (0..100)
            .filter(|&seed| select_relay(&train(&rw, &QLearnConfig { seed, ..Default::default() }).unwrap()) == 2)
            .count();
        assert!(hits >= 95, "{hits}/100");
    }

    #[test]
    fn strictly_dominant_column_wins() {
        let rw = build_reward_matrix(&[1.0, 5.0, 4.9]).unwrap();
        let hits = (0..100)
            .filter(|&seed| select_relay(&train(&rw, &QLearnConfig { seed, ..Default::default() }).unwrap()) == 1)
            .count();
        assert!(hits >= 95, "{hits}/100");
    }

    #[test]
    fn select_relay_examples() {
        assert_eq!(select_relay(&QTable::zeros(4)), 0);
        let mut q = QTable::zeros(4);
        q.set(3, 2, 9.0);
        q.set(0, 1, 8.0);
        assert_eq!(select_relay(&q), 2);
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_max_gain_relay(&[2.0, 1.0, 4.0]).unwrap(), 2);
        assert_eq!(greedy_max_gain_relay(&[3.0, 3.0]).unwrap(), 0);
        assert!(greedy_max_gain_relay(&[]).is_err());
    }

    #[test]
    fn rejects_bad_config() {
        let rw = build_reward_matrix(&[1.0, 2.0]).unwrap();
        assert!(train(&rw, &QLearnConfig { discount: 1.5, ..Default::default() }).is_err());
        assert!(train(&rw, &QLearnConfig { episodes: 0, ..Default::default() }).is_err());
    }

    fn gains() -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(1e-3f64..1e3, 1..10)
    }

    proptest! {
        #[test]
        fn reward_matrix_invariants(g in gains()) {
            let rw = build_reward_matrix(&g).unwrap();
            for i in 0..g.len() {
                prop_assert_eq!(rw.get(i, i), 1.0);
                for j in 0..g.len() {
                    let e = rw.get(i, j);
                    prop_assert!(e == 0.0 || e >= 1.0);
                    if e > 0.0 {
                        prop_assert!(g[j] >= g[i]);
                    }
                }
            }
        }

        #[test]
        fn reward_matrix_scale_free(g in gains(), k in 1e-3f64..1e3) {
            let scaled: Vec<f64> = g.iter().map(|x| x * k).collect();
            let a = build_reward_matrix(&g).unwrap();
            let b = build_reward_matrix(&scaled).unwrap();
            for (x, y) in a.entries.iter().zip(&b.entries) {
                prop_assert!((x - y).abs() <= 1e-12 * x.max(*y).max(1.0));
            }
            prop_assert_eq!(greedy_max_gain_relay(&g).unwrap(), greedy_max_gain_relay(&scaled).unwrap());
        }

        #[test]
        fn trained_values_bounded(g in gains(), seed in 0u64..1000) {
            let rw = build_reward_matrix(&g).unwrap();
            let cfg = QLearnConfig { seed, episodes: 2000, ..Default::default() };
            let q = train(&rw, &cfg).unwrap();
            let bound = rw.max_entry() / (1.0 - cfg.discount) * (1.0 + 1e-9);
            prop_assert!(q.values().iter().all(|v| v.is_finite() && *v >= 0.0 && *v <= bound));
        }
    }
}
