//! Differential-privacy primitives consumed by the learners.
//!
//! Every mechanism takes an explicit [`RandomSource`]; nothing here touches
//! global state, so runs are reproducible from a seed.

mod choosing;
mod composition;
mod exponential;
mod laplace;
mod median;
pub mod noiseless;
mod rng;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

pub use choosing::{
    choosing_mechanism, choosing_utility_gap, ChoosingBackend, ChoosingConfig, ChoosingInstance,
    ChoosingMechanism,
};
pub use composition::{advanced_composition, basic_composition, parallel_composition};
pub use exponential::{exponential_mechanism, exponential_probabilities};
pub use laplace::laplace_sample;
pub use median::{
    is_alpha_median, private_median, required_median_size, ExponentialMedian, MedianBackend,
};
pub use rng::RandomSource;

/// An `(ε, δ)` privacy budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrivacyParams {
    pub epsilon: f64,
    pub delta: f64,
}

impl PrivacyParams {
    pub fn new(epsilon: f64, delta: f64) -> Result<Self> {
        let p = PrivacyParams { epsilon, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn pure(epsilon: f64) -> Result<Self> {
        PrivacyParams::new(epsilon, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(invalid(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if !(0.0..1.0).contains(&self.delta) {
            return Err(invalid(format!("delta must lie in [0, 1), got {}", self.delta)));
        }
        Ok(())
    }
}
