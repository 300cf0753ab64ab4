//! Empirical privacy audit of every mechanism.
//!
//! ```text
//! cargo run --release --example privacy_audit -- [trials]
//! ```

use dp_vc1::harness::{audit_target, AuditTarget};

fn main() -> dp_vc1::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    for target in AuditTarget::ALL {
        let a = audit_target(target, 1.0, trials, 1)?;
        println!(
            "{:<20} claimed {:.2}  lower bound {:.3}  refuted: {}",
            target.to_string(),
            a.claimed.epsilon,
            a.report.epsilon_hat,
            a.report.refutes(a.claimed.epsilon)
        );
    }
    Ok(())
}
