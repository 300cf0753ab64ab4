use serde::{Deserialize, Serialize};

use super::{exponential_mechanism, laplace_sample, PrivacyParams, RandomSource};
use crate::error::{invalid, Result};

/// Scores of a k-bounded quality function over candidate solutions `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoosingInstance {
    pub scores: Vec<u64>,
    pub k: u64,
    pub n: u64,
}

impl ChoosingInstance {
    pub fn new(scores: Vec<u64>, k: u64, n: u64) -> Self {
        ChoosingInstance { scores, k, n }
    }

    pub fn best(&self) -> u64 {
        self.scores.iter().copied().max().unwrap_or(0)
    }

    /// `ln(4kn / (βεδ))`, the log factor shared by the gate and the utility bound.
    fn log_term(&self, privacy: PrivacyParams, beta: f64) -> f64 {
        let kn = (self.k.max(1) * self.n.max(1)) as f64;
        (4.0 * kn / (beta * privacy.epsilon * privacy.delta)).ln()
    }
}

/// Constants of the gate-then-choose construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ChoosingConfig {
    /// Gate threshold is `gate_constant / ε · ln(4kn/(βεδ))`.
    pub gate_constant: f64,
    /// Gate noise is `Laplace(gate_noise / ε)`.
    pub gate_noise: f64,
    /// Fraction of ε handed to the exponential mechanism.
    pub selection_share: f64,
}

impl Default for ChoosingConfig {
    fn default() -> Self {
        ChoosingConfig { gate_constant: 8.0, gate_noise: 4.0, selection_share: 0.5 }
    }
}

/// Selection step used by the improper learner.
pub trait ChoosingBackend: Send + Sync {
    fn choose(
        &self,
        inst: &ChoosingInstance,
        privacy: PrivacyParams,
        beta: f64,
        rng: &mut RandomSource,
    ) -> Result<Option<usize>>;
}

/// The default noisy choosing mechanism.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ChoosingMechanism {
    pub config: ChoosingConfig,
}

impl ChoosingBackend for ChoosingMechanism {
    fn choose(
        &self,
        inst: &ChoosingInstance,
        privacy: PrivacyParams,
        beta: f64,
        rng: &mut RandomSource,
    ) -> Result<Option<usize>> {
        privacy.validate()?;
        let eps = privacy.epsilon;
        if eps >= 2.0 || privacy.delta <= 0.0 {
            return Err(invalid("choosing mechanism needs epsilon in (0, 2) and delta > 0"));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(invalid(format!("beta must lie in (0, 1), got {beta}")));
        }
        let cfg = self.config;
        let threshold = cfg.gate_constant / eps * inst.log_term(privacy, beta);
        let noisy_best = inst.best() as f64 + laplace_sample(cfg.gate_noise / eps, rng)?;
        if noisy_best < threshold {
            return Ok(None);
        }
        let active: Vec<(usize, f64)> = inst
            .scores
            .iter()
            .enumerate()
            .filter(|(_, &s)| s >= 1)
            .map(|(i, &s)| (i, s as f64))
            .collect();
        if active.is_empty() {
            return Ok(None);
        }
        exponential_mechanism(&active, 1.0, cfg.selection_share * eps, rng).map(Some)
    }
}

/// Runs the default choosing mechanism. `None` is the ⊥ outcome.
pub fn choosing_mechanism(
    inst: &ChoosingInstance,
    privacy: PrivacyParams,
    beta: f64,
    rng: &mut RandomSource,
) -> Result<Option<usize>> {
    ChoosingMechanism::default().choose(inst, privacy, beta, rng)
}

/// Additive utility loss `16/ε · ln(4kn/(βεδ))` tolerated with probability `1-β`.
pub fn choosing_utility_gap(inst: &ChoosingInstance, privacy: PrivacyParams, beta: f64) -> f64 {
    16.0 / privacy.epsilon * inst.log_term(privacy, beta)
}
