//! Class generators, sampling and experiment sweeps.

mod audits;
mod experiment;
pub mod generate;
mod sample;

pub use audits::{audit_target, AuditTarget, TargetAudit};
pub use experiment::{
    pass_rate, run_experiment, write_report, ConceptChoice, DistributionSpec, ExperimentConfig, Mode, ReportRow,
};
pub use generate::{generate_class, GeneratorSpec};
pub use sample::sample_dataset;
