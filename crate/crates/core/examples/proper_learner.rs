//! The proper learner on the modified example class, where x5 is a node of
//! the tree but no longer a concept.

use dp_vc1::harness::generate::modified_example_class;
use dp_vc1::harness::sample_dataset;
use dp_vc1::learn::{LearnParams, Learner, Representative};
use dp_vc1::oracle::{error_on_distribution, Distribution};
use dp_vc1::{Concept, Hypothesis, Node, PointId, RandomSource};

fn name(class: &dp_vc1::ConceptClass, h: &Hypothesis) -> String {
    h.proper_index.and_then(|i| class.concepts()[i].id.clone()).unwrap_or_else(|| "(not a member)".into())
}

fn label(c: &Concept) -> &str {
    c.id.as_deref().unwrap_or("?")
}

fn main() -> dp_vc1::Result<()> {
    let class = modified_example_class();
    let learner = Learner::new(&class, Representative::Index(class.len() - 1))?;
    let params = LearnParams::new(0.25, 0.25, 1.0, 1e-5)?;
    let budget = learner.budget(&params);
    let d = Distribution::uniform(class.domain_size())?;
    println!("N1 = {}, N2 = {}, loop bound {}", budget.n1, budget.n2, budget.loop_bound);

    println!("full runs:");
    for (trial, target) in class.concepts().iter().enumerate() {
        let mut rng = RandomSource::stream(11, trial as u64);
        let data = sample_dataset(&class, target, &d, budget.total(), &mut rng)?;
        let trace = learner.proper(&data, &params, &mut rng)?;
        println!(
            "  target {:<3} x_good {:?} -> {} (error {:.3})",
            label(target),
            trace.x_good,
            name(&class, &trace.hypothesis),
            error_on_distribution(&trace.hypothesis, target, &d)
        );
    }

    println!("second stage started at x5:");
    let x5 = Node::Point(PointId::new(4));
    let near_x5 = class.concepts().iter().enumerate().filter(|(_, c)| matches!(label(c), "h1" | "h6" | "h7"));
    for (trial, target) in near_x5 {
        let mut rng = RandomSource::stream(12, trial as u64);
        let s2 = sample_dataset(&class, target, &d, budget.n2, &mut rng)?;
        let trace = learner.proper_stage(x5, &s2, &params, &mut rng)?;
        for step in &trace.path {
            println!("  target {:<3} {:?} noisy min weight {:.1} -> {:?}", label(target), step.case, step.noisy_min_weight, step.x_new);
        }
        println!(
            "  target {:<3} leaf {:?} -> {} (error {:.3})",
            label(target),
            trace.leaf,
            name(&class, &trace.hypothesis),
            error_on_distribution(&trace.hypothesis, target, &d)
        );
    }
    Ok(())
}
