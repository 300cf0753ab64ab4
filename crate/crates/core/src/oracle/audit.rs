use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};

use crate::error::{invalid, Result};
use crate::mech::RandomSource;

/// Quantile bins used by [`dp_audit_real`].
pub const REAL_BINS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AuditConfig {
    /// Runs of the mechanism on each of the two inputs.
    pub trials: usize,
    /// Additive slack of the claimed budget.
    pub delta: f64,
    /// One-sided level of each Clopper-Pearson bound.
    pub confidence: f64,
    pub seed: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { trials: 100_000, delta: 0.0, confidence: 0.95, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub trials: usize,
    pub delta: f64,
    pub confidence: f64,
    /// Distinct outcomes observed across both inputs.
    pub outcomes: usize,
    /// Statistical lower bound on the privacy loss; 0 when nothing is detected.
    pub epsilon_hat: f64,
    /// Number of outcomes in the event attaining `epsilon_hat`.
    pub event_size: usize,
}

impl AuditReport {
    /// The audit contradicts a claimed ε.
    pub fn refutes(&self, claimed_epsilon: f64) -> bool {
        self.epsilon_hat > claimed_epsilon
    }
}

/// One-sided Clopper-Pearson bounds `(lower, upper)` for `k` successes in `n` trials.
pub fn clopper_pearson(k: u64, n: u64, confidence: f64) -> (f64, f64) {
    let tail = 1.0 - confidence;
    let (kf, nf) = (k as f64, n as f64);
    let lower = if k == 0 {
        0.0
    } else {
        Beta::new(kf, nf - kf + 1.0).expect("positive shape").inverse_cdf(tail)
    };
    let upper = if k == n {
        1.0
    } else {
        Beta::new(kf + 1.0, nf - kf).expect("positive shape").inverse_cdf(confidence)
    };
    (lower, upper)
}

fn check(cfg: &AuditConfig) -> Result<()> {
    if cfg.trials == 0 {
        return Err(invalid("audit needs at least one trial"));
    }
    if !(0.0..1.0).contains(&cfg.delta) {
        return Err(invalid(format!("audit delta must lie in [0, 1), got {}", cfg.delta)));
    }
    if !(cfg.confidence > 0.5 && cfg.confidence < 1.0) {
        return Err(invalid(format!("confidence must lie in (1/2, 1), got {}", cfg.confidence)));
    }
    Ok(())
}

fn run<I, O, F>(mechanism: &F, d: &I, d_prime: &I, cfg: &AuditConfig) -> Result<(Vec<O>, Vec<O>)>
where
    I: Sync,
    O: Send,
    F: Fn(&I, &mut RandomSource) -> Result<O> + Sync,
{
    let side = |input: &I, offset: u64| {
        (0..cfg.trials as u64)
            .into_par_iter()
            .map(|i| mechanism(input, &mut RandomSource::stream(cfg.seed, 2 * i + offset)))
            .collect::<Result<Vec<O>>>()
    };
    Ok((side(d, 0)?, side(d_prime, 1)?))
}

/// Empirical privacy-loss lower bound for a mechanism with finite outcomes,
/// from `trials` runs on each of two neighbouring inputs.
///
/// Candidate events are single outcomes and the prefixes of outcomes sorted
/// by likelihood ratio, in both directions. For each event the lower
/// confidence bound on one side is compared with the upper bound on the
/// other: `ε̂ = max ln((p_lo − δ) / q_hi)`.
pub fn dp_audit<I, O, F>(mechanism: F, d: &I, d_prime: &I, cfg: &AuditConfig) -> Result<AuditReport>
where
    I: Sync,
    O: Ord + Send,
    F: Fn(&I, &mut RandomSource) -> Result<O> + Sync,
{
    check(cfg)?;
    let (a, b) = run(&mechanism, d, d_prime, cfg)?;
    let mut counts: BTreeMap<O, (u64, u64)> = BTreeMap::new();
    for o in a {
        counts.entry(o).or_default().0 += 1;
    }
    for o in b {
        counts.entry(o).or_default().1 += 1;
    }
    Ok(estimate(counts.into_values().collect(), cfg))
}

/// [`dp_audit`] for real-valued outputs, discretized into 64 bins at the
/// quantiles of the pooled outputs.
pub fn dp_audit_real<I, F>(mechanism: F, d: &I, d_prime: &I, cfg: &AuditConfig) -> Result<AuditReport>
where
    I: Sync,
    F: Fn(&I, &mut RandomSource) -> Result<f64> + Sync,
{
    check(cfg)?;
    let (a, b) = run(&mechanism, d, d_prime, cfg)?;
    let mut pooled: Vec<f64> = a.iter().chain(&b).copied().collect();
    pooled.sort_by(f64::total_cmp);
    let mut edges: Vec<f64> = (1..REAL_BINS).map(|i| pooled[i * pooled.len() / REAL_BINS]).collect();
    edges.dedup();
    let bin = |x: f64| edges.partition_point(|&e| e <= x);
    let mut counts = vec![(0u64, 0u64); edges.len() + 1];
    a.iter().for_each(|&x| counts[bin(x)].0 += 1);
    b.iter().for_each(|&x| counts[bin(x)].1 += 1);
    counts.retain(|&(x, y)| x + y > 0);
    Ok(estimate(counts, cfg))
}

fn estimate(counts: Vec<(u64, u64)>, cfg: &AuditConfig) -> AuditReport {
    let n = cfg.trials as u64;
    let mut best = (0.0f64, 0usize);
    for flip in [false, true] {
        let mut pairs: Vec<(u64, u64)> = counts.iter().map(|&(x, y)| if flip { (y, x) } else { (x, y) }).collect();
        let mut consider = |p: u64, q: u64, size: usize| {
            let (p_lo, _) = clopper_pearson(p, n, cfg.confidence);
            let (_, q_hi) = clopper_pearson(q, n, cfg.confidence);
            let num = p_lo - cfg.delta;
            if num > 0.0 {
                let eps = (num / q_hi).ln();
                if eps > best.0 {
                    best = (eps, size);
                }
            }
        };
        for &(p, q) in &pairs {
            consider(p, q, 1);
        }
        let ratio = |&(p, q): &(u64, u64)| (p as f64 + 0.5) / (q as f64 + 0.5);
        pairs.sort_by(|x, y| ratio(y).total_cmp(&ratio(x)));
        let (mut p, mut q) = (0, 0);
        for (i, &(x, y)) in pairs.iter().enumerate() {
            p += x;
            q += y;
            consider(p, q, i + 1);
        }
    }
    AuditReport {
        trials: cfg.trials,
        delta: cfg.delta,
        confidence: cfg.confidence,
        outcomes: counts.len(),
        epsilon_hat: best.0,
        event_size: best.1,
    }
}
