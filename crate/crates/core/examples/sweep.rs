//! Accuracy as a function of sample size on thresholds over 256 points,
//! written as CSV reports in the working directory.

use std::fs::File;

use dp_vc1::harness::{pass_rate, run_experiment, write_report, ConceptChoice, DistributionSpec, ExperimentConfig, GeneratorSpec, Mode};
use dp_vc1::learn::LearnParams;

fn main() -> dp_vc1::Result<()> {
    let params = LearnParams::new(0.2, 0.2, 1.0, 1e-5)?;
    for n in [2_000, 10_000, 50_000] {
        let cfg = ExperimentConfig {
            generator: GeneratorSpec::Thresholds { n: 256 },
            distribution: DistributionSpec::Uniform,
            concept: ConceptChoice::Random,
            params,
            mode: Mode::Improper,
            trials: 50,
            seed: 3,
            sample_size: Some(n),
            subsets: Some(200),
            timing: true,
        };
        let rows = run_experiment(&cfg)?;
        write_report(&cfg, &rows, File::create(format!("sweep_{n}.csv"))?)?;
        println!("N = {n:>6}: pass rate {:.2}", pass_rate(&rows, params.alpha));
    }
    Ok(())
}
