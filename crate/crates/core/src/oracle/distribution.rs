use rand::distr::{weighted::WeightedIndex, Distribution as _};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::concept::{Concept, Example, Hypothesis, PointId};
use crate::error::{invalid, Result};
use crate::mech::RandomSource;

/// A probability distribution over the domain points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    weights: Vec<f64>,
}

impl Distribution {
    pub fn uniform(domain_size: usize) -> Result<Self> {
        Distribution::from_weights(vec![1.0; domain_size])
    }

    /// Normalizes non-negative weights to sum to one.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(invalid("distribution weights must be finite and non-negative"));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(invalid("distribution weights must not all be zero"));
        }
        Ok(Distribution { weights: weights.into_iter().map(|w| w / total).collect() })
    }

    pub fn point_mass(domain_size: usize, x: PointId) -> Result<Self> {
        let mut w = vec![0.0; domain_size];
        *w.get_mut(x.index()).ok_or_else(|| invalid("point mass outside domain"))? = 1.0;
        Distribution::from_weights(w)
    }

    pub fn domain_size(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, x: PointId) -> f64 {
        self.weights[x.index()]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Draws `n` points independently.
    pub fn sample(&self, n: usize, rng: &mut RandomSource) -> Vec<PointId> {
        self.sample_iter(rng).take(n).collect()
    }

    /// Endless stream of independent draws.
    pub fn sample_iter<'a>(&'a self, rng: &'a mut RandomSource) -> impl Iterator<Item = PointId> + 'a {
        let m = self.weights.len();
        let uniform = self.weights.iter().all(|&w| w == self.weights[0]);
        let dist = (!uniform).then(|| WeightedIndex::new(&self.weights).expect("weights validated at construction"));
        std::iter::repeat_with(move || match &dist {
            None => PointId::new(rng.random_range(0..m)),
            Some(w) => PointId::new(w.sample(rng)),
        })
    }
}

/// `Pr_{x∼D}[h(x) ≠ c(x)]`, summed exactly over the symmetric difference.
pub fn error_on_distribution(h: &Hypothesis, c: &Concept, d: &Distribution) -> f64 {
    let mut diff = h.ones.clone();
    diff.symmetric_difference_with(c.ones());
    diff.ones().fold(0.0, |acc, x| acc + d.weights[x]).min(1.0)
}

/// Fraction of examples whose label disagrees with `h`. Zero on an empty sample.
pub fn error_on_sample(h: &Hypothesis, sample: &[Example]) -> f64 {
    if sample.is_empty() {
        return 0.0;
    }
    let wrong = sample.iter().filter(|e| h.eval(e.point) != e.label).count();
    wrong as f64 / sample.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use fixedbitset::FixedBitSet;

    fn hyp(n: usize, pts: &[usize]) -> Hypothesis {
        let mut ones = FixedBitSet::with_capacity(n);
        pts.iter().for_each(|&p| ones.insert(p));
        Hypothesis { ones, proper_index: None }
    }

    #[test]
    fn distribution_errors() {
        let d = Distribution::uniform(4).unwrap();
        let c = Concept::from_points(4, [0]).unwrap();
        assert_eq!(error_on_distribution(&hyp(4, &[0]), &c, &d), 0.0);
        assert!((error_on_distribution(&hyp(4, &[1]), &c, &d) - 0.5).abs() < 1e-15);
        assert!((error_on_distribution(&hyp(4, &[1, 2, 3]), &c, &d) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sample_errors() {
        let s = [Example::new(0, true), Example::new(1, false), Example::new(2, false), Example::new(3, false)];
        assert_eq!(error_on_sample(&hyp(4, &[0]), &s), 0.0);
        assert!((error_on_sample(&hyp(4, &[1]), &s) - 0.5).abs() < 1e-15);
        assert_eq!(error_on_sample(&hyp(4, &[1, 2, 3]), &s), 1.0);
        assert_eq!(error_on_sample(&hyp(4, &[]), &[]), 0.0);
    }

    #[test]
    fn normalization() {
        let d = Distribution::from_weights(vec![1.0, 3.0]).unwrap();
        assert!((d.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(Distribution::from_weights(vec![0.0, 0.0]).is_err());
        assert!(Distribution::from_weights(vec![-1.0, 2.0]).is_err());
    }

    #[test]
    fn point_mass_sampling() {
        let d = Distribution::point_mass(5, PointId::new(3)).unwrap();
        let xs = d.sample(100, &mut RandomSource::new(0));
        assert!(xs.iter().all(|&x| x == PointId::new(3)));
    }
}
