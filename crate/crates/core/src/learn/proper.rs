use serde::Serialize;

use super::{ImproperTrace, LearnParams, Learner};
use crate::concept::{Dataset, Example, Hypothesis};
use crate::error::{Error, Result};
use crate::mech::{exponential_mechanism, laplace_sample, RandomSource};
use crate::tree::{Node, SubTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepCase {
    /// Some child carries little label-0 mass; selection stops there.
    Nonuniform,
    /// Every child is heavy; descend toward the cheapest leaf.
    Uniform,
}

/// One pass of the descent loop.
#[derive(Clone, Debug, Serialize)]
pub struct ProperStep {
    pub x_flag: Node,
    pub noisy_min_weight: f64,
    pub case: StepCase,
    pub x_new: Node,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProperTrace {
    pub improper: ImproperTrace,
    pub x_good: Node,
    pub subtree: SubTree,
    pub path: Vec<ProperStep>,
    pub leaf: Node,
    pub hypothesis: Hypothesis,
}

pub(super) fn run(learner: &Learner, data: &Dataset, params: &LearnParams, rng: &mut RandomSource) -> Result<ProperTrace> {
    params.validate()?;
    let budget = learner.budget(params);
    if data.len() < budget.total() {
        return Err(Error::InsufficientData { needed: budget.total(), got: data.len() });
    }
    let (s1, s2) = data.examples.split_at(budget.n1);
    let s1 = Dataset::new(s1.to_vec());
    let improper = learner.improper(&s1, params, rng)?;
    let s2 = Dataset::new(s2.to_vec()).relabel(learner.representative());
    let mut trace = descend(learner, improper.x_good, &s2.examples, params, budget.loop_bound, rng)?;
    trace.improper = improper;
    Ok(trace)
}

/// The descent from `x_good` to a proper node, on an f-represented sample.
pub(super) fn descend(
    learner: &Learner,
    x_good: Node,
    s2: &[Example],
    params: &LearnParams,
    loop_bound: usize,
    rng: &mut RandomSource,
) -> Result<ProperTrace> {
    let tree = learner.tree();
    let subtree = tree.make_subtree(x_good);
    let mut path = Vec::new();
    let mut x_flag = x_good;
    if !tree.is_proper(x_good) {
        let stats = tree.node_stats(&subtree, s2);
        let eps = params.privacy.epsilon;
        let cutoff = params.alpha * s2.len() as f64;
        for _ in 0..loop_bound {
            let children = subtree.children(tree, x_flag);
            if children.is_empty() {
                break;
            }
            let w_min = children.iter().map(|&c| stats.weight(c.into())).min().unwrap_or(0);
            let noisy = w_min as f64 + laplace_sample(1.0 / eps, rng)?;
            let (case, scores): (_, Vec<(Node, f64)>) = if noisy <= cutoff {
                (StepCase::Nonuniform, children.iter().map(|&c| (c.into(), -(stats.weight(c.into()) as f64))).collect())
            } else {
                (
                    StepCase::Uniform,
                    children.iter().map(|&c| (c.into(), -(stats.min_leaf_value(c.into()) as f64))).collect(),
                )
            };
            let x_new = exponential_mechanism(&scores, 1.0, eps, rng)?;
            path.push(ProperStep { x_flag, noisy_min_weight: noisy, case, x_new });
            x_flag = x_new;
            if case == StepCase::Nonuniform {
                break;
            }
        }
    }
    let leaf = subtree
        .leaves_below(tree, x_flag)
        .into_iter()
        .min()
        .expect("every subtree node has a proper node below it");
    let hypothesis = learner.hypothesis(leaf);
    debug_assert!(hypothesis.proper_index.is_some());
    Ok(ProperTrace {
        improper: empty_improper(learner, x_good),
        x_good,
        subtree,
        path,
        leaf,
        hypothesis,
    })
}

fn empty_improper(learner: &Learner, x_good: Node) -> ImproperTrace {
    ImproperTrace {
        f: learner.representative().clone(),
        t: 0,
        deepest: Vec::new(),
        y: Vec::new(),
        z: 0,
        p: Vec::new(),
        q: Vec::new(),
        x_good,
        fell_back: false,
        hypothesis: learner.hypothesis(x_good),
    }
}

/// Proper learner with `f` the first concept of the canonical class.
pub fn proper_learn(
    class: &crate::concept::ConceptClass,
    data: &Dataset,
    params: &LearnParams,
    rng: &mut RandomSource,
) -> Result<ProperTrace> {
    Learner::new(class, super::Representative::First)?.proper(data, params, rng)
}

impl Learner {
    /// The proper stage alone, started from a given `x_good` on a sample in
    /// the original labelling.
    pub fn proper_stage(
        &self,
        x_good: Node,
        s2: &Dataset,
        params: &LearnParams,
        rng: &mut RandomSource,
    ) -> Result<ProperTrace> {
        params.validate()?;
        s2.check_domain(self.class().domain_size())?;
        let s2 = s2.relabel(self.representative());
        let loop_bound = (2.0 / params.alpha).ceil() as usize;
        descend(self, x_good, &s2.examples, params, loop_bound, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept::PointId;
    use crate::harness::generate::{example_class, modified_example_class};
    use crate::learn::Representative;

    fn params() -> LearnParams {
        LearnParams::new(0.25, 0.25, 1.0, 1e-5).unwrap()
    }

    #[test]
    fn proper_x_good_returns_its_concept() {
        let learner = Learner::new(&example_class(), Representative::Index(7)).unwrap();
        let x5 = Node::Point(PointId::new(4));
        let s2 = Dataset::from_pairs(&[(5, false)]);
        let t = learner.proper_stage(x5, &s2, &params(), &mut RandomSource::new(0)).unwrap();
        assert!(t.path.is_empty());
        assert_eq!(t.leaf, x5);
        assert_eq!(t.hypothesis.proper_index, Some(4));
    }

    #[test]
    fn modified_example_prefers_clean_leaf() {
        // c* = h7 = {x1, x5, x7}; the label-0 mass sits at x6 only.
        let class = modified_example_class();
        let learner = Learner::new(&class, Representative::Index(6)).unwrap();
        let x5 = Node::Point(PointId::new(4));
        assert!(!learner.tree().is_proper(x5));
        let mut pairs = vec![(5, false); 30];
        pairs.extend(vec![(6, true); 30]);
        pairs.extend(vec![(0, true); 40]);
        let s2 = Dataset::from_pairs(&pairs);
        let mut rng = RandomSource::new(1);
        let hits = (0..200)
            .filter(|_| {
                let t = learner.proper_stage(x5, &s2, &params(), &mut rng).unwrap();
                t.hypothesis.points() == vec![PointId::new(0), PointId::new(4), PointId::new(6)]
            })
            .count();
        assert!(hits >= 190, "{hits}");
    }

    #[test]
    fn output_always_proper() {
        let class = modified_example_class();
        let learner = Learner::new(&class, Representative::First).unwrap();
        let s2 = Dataset::from_pairs(&[(0, true), (3, false), (5, true)]);
        let mut rng = RandomSource::new(2);
        for x in learner.tree().points().to_vec() {
            let t = learner.proper_stage(Node::Point(x), &s2, &params(), &mut rng).unwrap();
            assert!(t.hypothesis.proper_index.is_some());
            assert!(t.subtree.leaves.contains(&t.leaf));
            assert!(t.path.len() <= 8);
        }
    }
}
