use super::{exponential_mechanism, PrivacyParams, RandomSource};
use crate::error::{invalid, Error, Result};

/// Largest ordered domain the default backend will enumerate.
pub const MEDIAN_DOMAIN_LIMIT: u64 = 1 << 24;

/// A differentially private α-median procedure over `[0, domain_max]`.
pub trait MedianBackend: Send + Sync {
    fn median(
        &self,
        values: &[u64],
        domain_max: u64,
        alpha: f64,
        privacy: PrivacyParams,
        beta: f64,
        rng: &mut RandomSource,
    ) -> Result<u64>;

    /// Sample size at which `median` meets its α-median guarantee.
    fn required_size(&self, domain_max: u64, alpha: f64, beta: f64, privacy: PrivacyParams) -> u64;
}

/// Exponential mechanism over the ordered domain with a rank-deficit utility.
///
/// The utility of `m` is `-max(0, ⌈(1/2 - α/2)·n⌉ - min(#{v ≤ m}, #{v ≥ m}))`,
/// which has sensitivity 1 and is 0 at the true median.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExponentialMedian;

impl MedianBackend for ExponentialMedian {
    fn median(
        &self,
        values: &[u64],
        domain_max: u64,
        alpha: f64,
        privacy: PrivacyParams,
        _beta: f64,
        rng: &mut RandomSource,
    ) -> Result<u64> {
        if values.is_empty() {
            return Err(Error::EmptyInput("median values"));
        }
        if !(alpha > 0.0 && alpha <= 0.5) {
            return Err(invalid(format!("alpha must lie in (0, 1/2], got {alpha}")));
        }
        if domain_max >= MEDIAN_DOMAIN_LIMIT {
            return Err(invalid(format!("median domain too large: {domain_max}")));
        }
        if let Some(v) = values.iter().find(|&&v| v > domain_max) {
            return Err(invalid(format!("median value {v} exceeds domain_max {domain_max}")));
        }
        privacy.validate()?;

        let n = values.len();
        let mut counts = vec![0usize; domain_max as usize + 1];
        for &v in values {
            counts[v as usize] += 1;
        }
        let target = ((0.5 - alpha / 2.0) * n as f64).ceil();
        let mut at_most = 0usize;
        let candidates: Vec<(u64, f64)> = counts
            .iter()
            .enumerate()
            .map(|(m, &c)| {
                let at_least = n - at_most;
                at_most += c;
                let rank = at_most.min(at_least) as f64;
                (m as u64, -(target - rank).max(0.0))
            })
            .collect();
        exponential_mechanism(&candidates, 1.0, privacy.epsilon, rng)
    }

    fn required_size(&self, domain_max: u64, alpha: f64, beta: f64, privacy: PrivacyParams) -> u64 {
        let size = (domain_max as f64 + 1.0) / beta;
        (4.0 / (alpha * privacy.epsilon) * size.ln()).ceil().max(1.0) as u64
    }
}

/// Private α-median with the default backend.
pub fn private_median(
    values: &[u64],
    domain_max: u64,
    alpha: f64,
    privacy: PrivacyParams,
    beta: f64,
    rng: &mut RandomSource,
) -> Result<u64> {
    ExponentialMedian.median(values, domain_max, alpha, privacy, beta, rng)
}

/// Sufficient sample size for the default backend.
pub fn required_median_size(domain_max: u64, alpha: f64, beta: f64, privacy: PrivacyParams) -> u64 {
    ExponentialMedian.required_size(domain_max, alpha, beta, privacy)
}

/// Whether `m` has at least `(1/2 - α)·n` values on each side.
pub fn is_alpha_median(values: &[u64], m: u64, alpha: f64) -> bool {
    let below = values.iter().filter(|&&v| v <= m).count();
    let above = values.iter().filter(|&&v| v >= m).count();
    below.min(above) as f64 >= (0.5 - alpha) * values.len() as f64
}
