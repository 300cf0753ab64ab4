use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::concept::Dataset;
use crate::error::{invalid, Error, Result};
use crate::harness::generate::example_class;
use crate::learn::{LearnParams, Learner, Representative};
use crate::mech::{
    choosing_mechanism, exponential_mechanism, laplace_sample, private_median, ChoosingInstance, ChoosingMechanism,
    ExponentialMedian, PrivacyParams, RandomSource,
};
use crate::oracle::{dp_audit, dp_audit_real, AuditConfig, AuditReport};
use crate::tree::Node;

/// Built-in audit scenarios on fixed neighbouring inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditTarget {
    /// Improper learner on 30 examples of the example class, 10 subsets.
    Improper,
    Median,
    Choosing,
    Em,
    Laplace,
    /// Keep a bit with probability `e^ε / (1 + e^ε)`; calibrates the estimator.
    RandomizedResponse,
}

impl AuditTarget {
    pub const ALL: [AuditTarget; 6] = [
        AuditTarget::Improper,
        AuditTarget::Median,
        AuditTarget::Choosing,
        AuditTarget::Em,
        AuditTarget::Laplace,
        AuditTarget::RandomizedResponse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AuditTarget::Improper => "improper",
            AuditTarget::Median => "median",
            AuditTarget::Choosing => "choosing",
            AuditTarget::Em => "em",
            AuditTarget::Laplace => "laplace",
            AuditTarget::RandomizedResponse => "randomized_response",
        }
    }
}

impl fmt::Display for AuditTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AuditTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AuditTarget::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| invalid(format!("unknown audit target {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TargetAudit {
    pub target: AuditTarget,
    /// Budget the mechanism claims on these inputs.
    pub claimed: PrivacyParams,
    pub report: AuditReport,
}

/// Audits one scenario at per-mechanism budget `epsilon`.
pub fn audit_target(target: AuditTarget, epsilon: f64, trials: usize, seed: u64) -> Result<TargetAudit> {
    let privacy = PrivacyParams::new(epsilon, 1e-6)?;
    let pure = PrivacyParams::pure(epsilon)?;
    let cfg = |delta: f64| AuditConfig { trials, delta, seed, ..AuditConfig::default() };
    let (claimed, report) = match target {
        AuditTarget::RandomizedResponse => {
            let keep = epsilon.exp() / (1.0 + epsilon.exp());
            let r = dp_audit(|&b: &bool, rng: &mut RandomSource| Ok(b == rng.random_bool(keep)), &true, &false, &cfg(0.0))?;
            (pure, r)
        }
        AuditTarget::Laplace => {
            let r = dp_audit_real(
                |&x: &f64, rng: &mut RandomSource| Ok(x + laplace_sample(1.0 / epsilon, rng)?),
                &0.0,
                &1.0,
                &cfg(0.0),
            )?;
            (pure, r)
        }
        AuditTarget::Em => {
            let d = [3.0, 0.0, 0.0, 0.0];
            let d_prime = [2.0, 1.0, 1.0, 1.0];
            let em = |s: &[f64; 4], rng: &mut RandomSource| {
                let c: Vec<(usize, f64)> = s.iter().copied().enumerate().collect();
                exponential_mechanism(&c, 1.0, epsilon, rng)
            };
            (pure, dp_audit(em, &d, &d_prime, &cfg(0.0))?)
        }
        AuditTarget::Median => {
            let mut d = vec![2u64; 10];
            d.extend([7u64; 10]);
            let mut d_prime = d.clone();
            d_prime[0] = 7;
            let med = |v: &Vec<u64>, rng: &mut RandomSource| private_median(v, 10, 1.0 / 3.0, pure, 0.1, rng);
            (pure, dp_audit(med, &d, &d_prime, &cfg(0.0))?)
        }
        AuditTarget::Choosing => {
            let beta = 0.1;
            let probe = ChoosingInstance::new(vec![0, 0], 1, 100);
            let gate = ChoosingMechanism::default().config.gate_constant / epsilon
                * (4.0 * 100.0 / (beta * epsilon * privacy.delta)).ln();
            let top = gate.round() as u64;
            let d = ChoosingInstance { scores: vec![top, top - 2], ..probe.clone() };
            let d_prime = ChoosingInstance { scores: vec![top - 1, top - 2], ..probe };
            let choose = |i: &ChoosingInstance, rng: &mut RandomSource| choosing_mechanism(i, privacy, beta, rng);
            (privacy, dp_audit(choose, &d, &d_prime, &cfg(privacy.delta))?)
        }
        AuditTarget::Improper => {
            let params = LearnParams::new(0.25, 0.25, epsilon, 1e-6)?;
            let learner = Learner::new(&example_class(), Representative::Index(7))?;
            let mut pairs: Vec<(usize, bool)> = (0..30).map(|i| [(6, true), (4, true), (0, true), (1, false), (5, false)][i % 5]).collect();
            let d = Dataset::from_pairs(&pairs);
            pairs[0] = (3, false);
            let d_prime = Dataset::from_pairs(&pairs);
            let run = |s: &Dataset, rng: &mut RandomSource| -> Result<(u64, Node)> {
                let t = learner.improper_with(s, 10, &params, &ExponentialMedian, &ChoosingMechanism::default(), rng)?;
                Ok((t.z, t.x_good))
            };
            let claimed = PrivacyParams { epsilon: 2.0 * epsilon, delta: 2.0 * params.privacy.delta };
            (claimed, dp_audit(run, &d, &d_prime, &cfg(claimed.delta))?)
        }
    };
    Ok(TargetAudit { target, claimed, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_roundtrip() {
        for t in AuditTarget::ALL {
            assert_eq!(t.name().parse::<AuditTarget>().unwrap(), t);
        }
        assert!("nope".parse::<AuditTarget>().is_err());
    }

    #[test]
    fn small_audits_run() {
        for t in AuditTarget::ALL {
            let a = audit_target(t, 1.0, 2_000, 1).unwrap();
            assert!(a.report.epsilon_hat >= 0.0);
            assert!(!a.report.refutes(a.claimed.epsilon + 0.3), "{t}: {}", a.report.epsilon_hat);
        }
    }
}
