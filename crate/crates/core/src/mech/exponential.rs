use rand::distr::{weighted::WeightedIndex, Distribution};

use super::RandomSource;
use crate::error::{invalid, Error, Result};

fn check(sensitivity: f64, epsilon: f64) -> Result<()> {
    if !(sensitivity.is_finite() && sensitivity > 0.0) {
        return Err(invalid(format!("sensitivity must be positive, got {sensitivity}")));
    }
    if !(epsilon.is_finite() && epsilon >= 0.0) {
        return Err(invalid(format!("epsilon must be non-negative, got {epsilon}")));
    }
    Ok(())
}

fn weights(scores: impl Iterator<Item = f64> + Clone, sensitivity: f64, epsilon: f64) -> Vec<f64> {
    let max = scores.clone().fold(f64::NEG_INFINITY, f64::max);
    scores.map(|s| (epsilon * (s - max) / (2.0 * sensitivity)).exp()).collect()
}

/// Closed-form output distribution `exp(ε·q/2Δ) / Σ exp(ε·q'/2Δ)`.
pub fn exponential_probabilities(scores: &[f64], sensitivity: f64, epsilon: f64) -> Result<Vec<f64>> {
    check(sensitivity, epsilon)?;
    if scores.is_empty() {
        return Err(Error::EmptyInput("exponential mechanism candidates"));
    }
    let w = weights(scores.iter().copied(), sensitivity, epsilon);
    let total: f64 = w.iter().sum();
    Ok(w.into_iter().map(|x| x / total).collect())
}

/// Samples a candidate id with probability proportional to
/// `exp(ε·score / 2Δ)`. Scores are shifted by their maximum first.
pub fn exponential_mechanism<I: Copy>(
    candidates: &[(I, f64)],
    sensitivity: f64,
    epsilon: f64,
    rng: &mut RandomSource,
) -> Result<I> {
    check(sensitivity, epsilon)?;
    match candidates {
        [] => Err(Error::EmptyInput("exponential mechanism candidates")),
        [(only, _)] => Ok(*only),
        _ => {
            let w = weights(candidates.iter().map(|c| c.1), sensitivity, epsilon);
            let dist = WeightedIndex::new(&w).map_err(|e| invalid(e.to_string()))?;
            Ok(candidates[dist.sample(rng)].0)
        }
    }
}
