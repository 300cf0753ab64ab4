//! Improper learning of a threshold over 4096 points at the budgeted
//! sample size.
//!
//! ```text
//! cargo run --release --example improper_thresholds -- [trials] [seed]
//! ```

use std::time::Instant;

use dp_vc1::harness::generate::thresholds;
use dp_vc1::harness::sample_dataset;
use dp_vc1::learn::{LearnParams, Learner, Representative};
use dp_vc1::oracle::{error_on_distribution, Distribution};
use dp_vc1::RandomSource;
use rand::Rng;

fn main() -> dp_vc1::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);

    let class = thresholds(4096)?;
    let learner = Learner::new(&class, Representative::First)?;
    let params = LearnParams::new(0.2, 0.2, 1.0, 1e-5)?;
    let budget = learner.budget(&params);
    let d = Distribution::uniform(class.domain_size())?;
    println!("tree depth {}, budget {:?}", learner.tree().max_depth(), budget);

    for trial in 0..trials {
        let start = Instant::now();
        let mut rng = RandomSource::stream(seed, trial as u64);
        let c = &class.concepts()[rng.random_range(0..class.len())];
        let data = sample_dataset(&class, c, &d, budget.n1, &mut rng)?;
        let trace = learner.improper(&data, &params, &mut rng)?;
        println!(
            "trial {trial}: target {:>6}  z {:>4}  x_good {:?}  error {:.5}  ({} ms)",
            c.id.as_deref().unwrap_or("?"),
            trace.z,
            trace.x_good,
            error_on_distribution(&trace.hypothesis, c, &d),
            start.elapsed().as_millis()
        );
    }
    Ok(())
}
