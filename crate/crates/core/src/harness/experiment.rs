use std::io::Write;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{generate_class, GeneratorSpec};
use super::sample::sample_dataset;
use crate::error::{invalid, Result};
use crate::learn::{LearnParams, Learner, Representative};
use crate::mech::{ChoosingMechanism, ExponentialMedian, RandomSource};
use crate::oracle::{error_on_distribution, Distribution};
use crate::tree::Node;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistributionSpec {
    #[default]
    Uniform,
    Weights { weights: Vec<f64> },
}

impl DistributionSpec {
    pub fn build(&self, domain_size: usize) -> Result<Distribution> {
        match self {
            DistributionSpec::Uniform => Distribution::uniform(domain_size),
            DistributionSpec::Weights { weights } => {
                if weights.len() != domain_size {
                    return Err(invalid(format!("{} weights for {domain_size} points", weights.len())));
                }
                Distribution::from_weights(weights.clone())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConceptChoice {
    /// A uniformly random member, redrawn every trial.
    #[default]
    Random,
    Fixed { index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Improper,
    Proper,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Improper => "improper",
            Mode::Proper => "proper",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub generator: GeneratorSpec,
    #[serde(default)]
    pub distribution: DistributionSpec,
    #[serde(default)]
    pub concept: ConceptChoice,
    pub params: LearnParams,
    pub mode: Mode,
    pub trials: usize,
    pub seed: u64,
    /// Sample size; the budget (`N1`, or `N1 + N2` in proper mode) when absent.
    #[serde(default)]
    pub sample_size: Option<usize>,
    /// Subset count for the improper learner. When set, the sample may be
    /// smaller than `N1`.
    #[serde(default)]
    pub subsets: Option<usize>,
    /// Record wall-clock time per trial. Off by default so reports are
    /// reproducible byte for byte.
    #[serde(default)]
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub trial: usize,
    pub mode: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
    #[serde(rename = "error_D")]
    pub error_d: f64,
    pub proper_flag: bool,
    pub x_good: String,
    pub runtime_ms: u64,
    pub seed: u64,
}

fn node_label(n: Node) -> String {
    match n {
        Node::Root => "root".to_string(),
        Node::Point(p) => p.to_string(),
    }
}

/// Runs every trial on its own `(seed, trial)` stream; rows come back in
/// trial order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    if cfg.trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    cfg.params.validate()?;
    let class = generate_class(&cfg.generator)?;
    let learner = Learner::new(&class, Representative::First)?;
    let d = cfg.distribution.build(class.domain_size())?;
    let budget = learner.budget(&cfg.params);
    let n = cfg.sample_size.unwrap_or(match cfg.mode {
        Mode::Improper => budget.n1,
        Mode::Proper => budget.total(),
    });
    if let ConceptChoice::Fixed { index } = cfg.concept {
        if index >= class.len() {
            return Err(invalid(format!("concept index {index} out of range")));
        }
    }

    (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let start = Instant::now();
            let mut rng = RandomSource::stream(cfg.seed, trial as u64);
            let c_star = match cfg.concept {
                ConceptChoice::Random => &class.concepts()[rng.random_range(0..class.len())],
                ConceptChoice::Fixed { index } => &class.concepts()[index],
            };
            let data = sample_dataset(&class, c_star, &d, n, &mut rng)?;
            let (x_good, hypothesis) = match cfg.mode {
                Mode::Improper => {
                    let t = match cfg.subsets {
                        Some(t) => {
                            let chooser = ChoosingMechanism { config: cfg.params.constants.choosing };
                            learner.improper_with(&data, t, &cfg.params, &ExponentialMedian, &chooser, &mut rng)?
                        }
                        None => learner.improper(&data, &cfg.params, &mut rng)?,
                    };
                    (t.x_good, t.hypothesis)
                }
                Mode::Proper => {
                    let t = learner.proper(&data, &cfg.params, &mut rng)?;
                    (t.x_good, t.hypothesis)
                }
            };
            let p = cfg.params;
            Ok(ReportRow {
                trial,
                mode: cfg.mode.as_str().to_string(),
                n,
                epsilon: p.privacy.epsilon,
                delta: p.privacy.delta,
                alpha: p.alpha,
                beta: p.beta,
                error_d: error_on_distribution(&hypothesis, c_star, &d),
                proper_flag: hypothesis.proper_index.is_some(),
                x_good: node_label(x_good),
                runtime_ms: if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 },
                seed: cfg.seed,
            })
        })
        .collect()
}

/// Fraction of rows with `error_D ≤ alpha`.
pub fn pass_rate(rows: &[ReportRow], alpha: f64) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    rows.iter().filter(|r| r.error_d <= alpha).count() as f64 / rows.len() as f64
}

/// CSV report: `#`-prefixed config echo, then one row per trial.
pub fn write_report<W: Write>(cfg: &ExperimentConfig, rows: &[ReportRow], mut out: W) -> Result<()> {
    writeln!(out, "# {}", serde_json::to_string(cfg)?)?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
