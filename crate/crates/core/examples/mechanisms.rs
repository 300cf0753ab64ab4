//! One draw from each private building block, plus the composition
//! arithmetic used by the proper learner.

use dp_vc1::mech::{
    advanced_composition, choosing_mechanism, exponential_mechanism, laplace_sample, private_median,
    required_median_size, ChoosingInstance, PrivacyParams,
};
use dp_vc1::RandomSource;

fn main() -> dp_vc1::Result<()> {
    let mut rng = RandomSource::new(5);

    let noise: Vec<f64> = (0..5).map(|_| laplace_sample(2.0, &mut rng)).collect::<Result<_, _>>()?;
    println!("Laplace(2): {noise:.3?}");

    let pick = exponential_mechanism(&[("a", 1.0), ("b", 4.0), ("c", 2.0)], 1.0, 1.0, &mut rng)?;
    println!("exponential mechanism picked {pick}");

    let pure = PrivacyParams::pure(1.0)?;
    let n = required_median_size(50, 1.0 / 3.0, 0.1, pure) as usize;
    let values: Vec<u64> = (0..n as u64).map(|i| 20 + i % 7).collect();
    let m = private_median(&values, 50, 1.0 / 3.0, pure, 0.1, &mut rng)?;
    println!("private median of {n} values in 20..=26: {m}");

    let privacy = PrivacyParams::new(1.0, 1e-6)?;
    for scores in [vec![400, 2, 1], vec![50, 1, 0]] {
        let inst = ChoosingInstance::new(scores.clone(), 1, 500);
        println!("choosing over {scores:?}: {:?}", choosing_mechanism(&inst, privacy, 0.1, &mut rng)?);
    }

    let total = advanced_composition(0.1, 0.0, 50, 1e-6);
    println!("50 steps at 0.1: ({:.4}, {:e})", total.epsilon, total.delta);
    Ok(())
}
