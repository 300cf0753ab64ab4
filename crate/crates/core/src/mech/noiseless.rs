//! Deterministic stand-ins for the noisy mechanisms.
//!
//! These carry no privacy guarantee. They let a pipeline be replayed on
//! the branch an exact (noise-free) computation would take.

use super::{ChoosingBackend, ChoosingInstance, MedianBackend, PrivacyParams, RandomSource};
use crate::error::{Error, Result};

/// Always answers a fixed value.
#[derive(Clone, Copy, Debug)]
pub struct FixedMedian(pub u64);

impl MedianBackend for FixedMedian {
    fn median(&self, values: &[u64], _: u64, _: f64, _: PrivacyParams, _: f64, _: &mut RandomSource) -> Result<u64> {
        if values.is_empty() {
            return Err(Error::EmptyInput("median values"));
        }
        Ok(self.0)
    }

    fn required_size(&self, _: u64, _: f64, _: f64, _: PrivacyParams) -> u64 {
        1
    }
}

/// The exact lower median.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactMedian;

impl MedianBackend for ExactMedian {
    fn median(&self, values: &[u64], _: u64, _: f64, _: PrivacyParams, _: f64, _: &mut RandomSource) -> Result<u64> {
        if values.is_empty() {
            return Err(Error::EmptyInput("median values"));
        }
        let mut v = values.to_vec();
        v.sort_unstable();
        Ok(v[(v.len() - 1) / 2])
    }

    fn required_size(&self, _: u64, _: f64, _: f64, _: PrivacyParams) -> u64 {
        1
    }
}

/// Highest score, lowest index on ties; ⊥ when every score is zero.
#[derive(Clone, Copy, Debug, Default)]
pub struct ArgMax;

impl ChoosingBackend for ArgMax {
    fn choose(&self, inst: &ChoosingInstance, _: PrivacyParams, _: f64, _: &mut RandomSource) -> Result<Option<usize>> {
        let best = inst.best();
        if best == 0 {
            return Ok(None);
        }
        Ok(inst.scores.iter().position(|&s| s == best))
    }
}
