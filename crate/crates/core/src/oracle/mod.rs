//! Brute-force ground truth for small classes, exact error evaluation and
//! empirical privacy auditing.

mod audit;
mod deterministic;
mod dims;
mod distribution;

pub use audit::{clopper_pearson, dp_audit, dp_audit_real, AuditConfig, AuditReport};
pub use deterministic::deterministic_oracle;
pub use dims::{
    dimension_report, littlestone_dimension, thresholds_dimension, vc_dimension, DimensionReport,
    THRESHOLDS_LIMIT, VC_LIMIT,
};
pub use distribution::{error_on_distribution, error_on_sample, Distribution};
