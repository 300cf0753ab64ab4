//! The seven-point example class, learned from two labelled points with the
//! noise switched off so every intermediate value is visible.

use dp_vc1::harness::generate::example_class;
use dp_vc1::learn::{LearnParams, Learner, Representative};
use dp_vc1::mech::noiseless::{ArgMax, FixedMedian};
use dp_vc1::{Dataset, RandomSource};

fn main() -> dp_vc1::Result<()> {
    let class = example_class();
    let learner = Learner::new(&class, Representative::Index(7))?;
    let data = Dataset::from_pairs(&[(0, true), (6, true)]);
    let params = LearnParams::new(0.2, 0.2, 1.0, 1e-5)?;

    let trace = learner.improper_with(&data, 2, &params, &FixedMedian(2), &ArgMax, &mut RandomSource::new(0))?;
    for (i, b) in trace.deepest.iter().enumerate() {
        println!("subset {i}: deepest {b:?}, up-set {:?}", learner.tree().upward_closure(*b));
    }
    println!("z = {}, P = {:?}, q = {:?}", trace.z, trace.p, trace.q);
    println!("x_good = {:?}", trace.x_good);
    println!("hypothesis {:?} (class index {:?})", trace.hypothesis.points(), trace.hypothesis.proper_index);
    Ok(())
}
