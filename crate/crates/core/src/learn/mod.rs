//! The improper and proper private learners, their sample budgets and
//! privacy accounting.

mod improper;
mod proper;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::concept::Dataset;
use crate::error::{invalid, Error, Result};
use crate::mech::{
    advanced_composition, parallel_composition, ChoosingConfig, ExponentialMedian, MedianBackend,
    PrivacyParams, RandomSource,
};

pub use improper::{improper_learn, ImproperTrace, Learner, Representative};
pub use proper::{proper_learn, ProperStep, ProperTrace, StepCase};

/// Multipliers behind every asymptotic bound, with their defaults.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Constants {
    /// `t` must satisfy `t ≥ gate/ε · ln(4t/(βεδ))`.
    pub gate: f64,
    /// Quantile slack of the private median over subset depths.
    pub median_alpha: f64,
    /// Leading factor of the per-subset size `⌈(s/α)(10·ln(s·e/α) + ln(5/β))⌉`.
    pub subset_scale: f64,
    /// Leading factor of `N2 = ⌈c·(ln(1/α) + ln(1/β)) / (α²ε)⌉`.
    pub proper_scale: f64,
    pub choosing: ChoosingConfig,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            gate: 16.0,
            median_alpha: 1.0 / 3.0,
            subset_scale: 48.0,
            proper_scale: 16.0,
            choosing: ChoosingConfig::default(),
        }
    }
}

/// Accuracy, confidence and privacy targets of a learner run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnParams {
    pub alpha: f64,
    pub beta: f64,
    pub privacy: PrivacyParams,
    /// Slack of the advanced-composition bound for the proper stage.
    pub delta_prime: f64,
    #[serde(default)]
    pub constants: Constants,
}

impl LearnParams {
    /// Parameters with default constants and `δ' = δ`.
    pub fn new(alpha: f64, beta: f64, epsilon: f64, delta: f64) -> Result<Self> {
        let p = LearnParams {
            alpha,
            beta,
            privacy: PrivacyParams { epsilon, delta },
            delta_prime: delta,
            constants: Constants::default(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("delta_prime", self.delta_prime)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(invalid(format!("{name} must lie in (0, 1), got {v}")));
            }
        }
        self.privacy.validate()?;
        if self.privacy.delta <= 0.0 {
            return Err(invalid("delta must be positive"));
        }
        let m = self.constants.median_alpha;
        if !(m > 0.0 && m <= 0.5) {
            return Err(invalid(format!("median_alpha must lie in (0, 1/2], got {m}")));
        }
        Ok(())
    }
}

/// Sample sizes derived from [`LearnParams`] and a depth bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleBudget {
    /// Number of disjoint subsets in the improper stage.
    pub t: usize,
    pub per_subset: usize,
    /// Improper-stage size, `t · per_subset`.
    pub n1: usize,
    /// Proper-stage size.
    pub n2: usize,
    /// Iteration cap of the proper stage, `⌈2/α⌉`.
    pub loop_bound: usize,
}

impl SampleBudget {
    pub fn total(&self) -> usize {
        self.n1 + self.n2
    }
}

/// Least integer `t ≥ 1` with `t ≥ c/ε · ln(4t/(βεδ))`, found by iterating
/// `t ← ⌈c/ε · ln(4t/(βεδ))⌉` upward from 1.
fn gate_size(c: f64, beta: f64, privacy: PrivacyParams) -> usize {
    let rhs = |t: f64| c / privacy.epsilon * (4.0 * t / (beta * privacy.epsilon * privacy.delta)).ln();
    let mut t = 1.0f64;
    loop {
        let next = rhs(t).ceil().max(1.0);
        if next <= t {
            return t as usize;
        }
        t = next;
    }
}

pub fn sample_budget(params: &LearnParams, depth_bound: usize) -> SampleBudget {
    let LearnParams { alpha, beta, privacy, constants: c, .. } = *params;
    let eps = privacy.epsilon;
    let n_med = ExponentialMedian.required_size(depth_bound as u64 + 1, c.median_alpha, beta, privacy) as usize;
    let t = n_med.max(gate_size(c.gate, beta, privacy));
    let s = c.subset_scale;
    let per_subset =
        (s / alpha * (10.0 * (s * std::f64::consts::E / alpha).ln() + (5.0 / beta).ln())).ceil() as usize;
    let n2 = (c.proper_scale * ((1.0 / alpha).ln() + (1.0 / beta).ln()) / (alpha * alpha * eps)).ceil() as usize;
    SampleBudget { t, per_subset, n1: t * per_subset, n2, loop_bound: (2.0 / alpha).ceil() as usize }
}

/// Shuffles `data` and deals it round-robin into `t` subsets.
///
/// The shuffle permutes the round-robin slot labels rather than the
/// examples, which yields the same distribution over partitions while
/// keeping each subset in input order.
pub fn partition(data: &Dataset, t: usize, rng: &mut RandomSource) -> Result<Vec<Dataset>> {
    if t == 0 {
        return Err(invalid("cannot partition into zero subsets"));
    }
    if data.len() < t {
        return Err(Error::InsufficientData { needed: t, got: data.len() });
    }
    let mut slot: Vec<u32> = (0..t as u32).cycle().take(data.len()).collect();
    slot.shuffle(rng);
    let mut parts: Vec<Dataset> = (0..t)
        .map(|i| Dataset::new(Vec::with_capacity(data.len() / t + usize::from(i < data.len() % t))))
        .collect();
    for (e, &s) in data.examples.iter().zip(&slot) {
        parts[s as usize].examples.push(*e);
    }
    Ok(parts)
}

/// Privacy of the proper stage's loop: `(√(2T·ln(1/δ'))·2ε, δ')`.
pub fn loop_privacy(params: &LearnParams, budget: &SampleBudget) -> PrivacyParams {
    advanced_composition(2.0 * params.privacy.epsilon, 0.0, budget.loop_bound as u64, params.delta_prime)
}

/// End-to-end privacy of [`proper_learn`].
///
/// The improper stage costs `(2ε, 2δ)`. It reads only the first `N1`
/// examples and the loop only the rest, so the two combine by the
/// coordinatewise maximum. With `T = 0` only the improper stage remains.
pub fn total_privacy(params: &LearnParams, budget: &SampleBudget) -> PrivacyParams {
    let eps = params.privacy.epsilon;
    let improper = PrivacyParams { epsilon: 2.0 * eps, delta: 2.0 * params.privacy.delta };
    if budget.loop_bound == 0 {
        return improper;
    }
    parallel_composition(&[improper, loop_privacy(params, budget)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> LearnParams {
        LearnParams::new(0.2, 0.2, 1.0, 1e-5).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(LearnParams::new(0.0, 0.2, 1.0, 1e-5).is_err());
        assert!(LearnParams::new(0.2, 1.0, 1.0, 1e-5).is_err());
        assert!(LearnParams::new(0.2, 0.2, 0.0, 1e-5).is_err());
        assert!(LearnParams::new(0.2, 0.2, 1.0, 0.0).is_err());
    }

    #[test]
    fn gate_size_is_least_fixed_point() {
        let p = params();
        let t = gate_size(16.0, 0.2, p.privacy);
        let rhs = |t: f64| 16.0 * (4.0 * t / (0.2 * 1e-5)).ln();
        assert!(t as f64 >= rhs(t as f64));
        assert!(((t - 1) as f64) < rhs((t - 1) as f64));
    }

    #[test]
    fn halving_alpha_at_least_doubles_n1() {
        let a = sample_budget(&params(), 64);
        let mut p = params();
        p.alpha = 0.1;
        let b = sample_budget(&p, 64);
        assert!(b.n1 >= 2 * a.n1);
        assert_eq!(b.loop_bound, 20);
    }

    #[test]
    fn larger_epsilon_fewer_subsets() {
        let a = sample_budget(&params(), 64);
        let mut p = params();
        p.privacy.epsilon = 1.5;
        assert!(sample_budget(&p, 64).t < a.t);
    }

    #[test]
    fn partition_sizes() {
        let data = Dataset::from_pairs(&(0..10).map(|i| (i, i % 2 == 0)).collect::<Vec<_>>());
        let parts = partition(&data, 3, &mut RandomSource::new(1)).unwrap();
        assert_eq!(parts.iter().map(Dataset::len).collect::<Vec<_>>(), vec![4, 3, 3]);
        let mut all: Vec<_> = parts.iter().flat_map(|p| p.examples.clone()).collect();
        all.sort();
        let mut orig = data.examples.clone();
        orig.sort();
        assert_eq!(all, orig);

        let one = partition(&data, 1, &mut RandomSource::new(1)).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].len(), 10);

        let again = partition(&data, 3, &mut RandomSource::new(1)).unwrap();
        assert_eq!(again, parts);
        assert!(partition(&data, 11, &mut RandomSource::new(1)).is_err());
    }

    #[test]
    fn privacy_accounting() {
        let mut p = LearnParams::new(0.25, 0.2, 0.1, 1e-6).unwrap();
        p.delta_prime = 1e-6;
        let b = SampleBudget { t: 1, per_subset: 1, n1: 1, n2: 1, loop_bound: 8 };
        let l = loop_privacy(&p, &b);
        assert!((l.epsilon - (16.0 * 1e6f64.ln()).sqrt() * 0.2).abs() < 1e-12);
        assert_eq!(l.delta, 1e-6);
        let tot = total_privacy(&p, &b);
        assert_eq!(tot.epsilon, l.epsilon);
        assert_eq!(tot.delta, 2e-6);

        let zero = SampleBudget { loop_bound: 0, ..b };
        assert_eq!(total_privacy(&p, &zero), PrivacyParams { epsilon: 0.2, delta: 2e-6 });

        let more = SampleBudget { loop_bound: 9, ..b };
        assert!(total_privacy(&p, &more).epsilon > tot.epsilon);
    }
}
