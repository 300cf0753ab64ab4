use std::collections::HashMap;

use serde::Serialize;

use super::{partition, proper, sample_budget, LearnParams, ProperTrace, SampleBudget};
use crate::concept::{Concept, ConceptClass, Dataset, Hypothesis, PointId};
use crate::error::{invalid, Error, Result};
use crate::mech::{
    ChoosingBackend, ChoosingInstance, ChoosingMechanism, ExponentialMedian, MedianBackend, RandomSource,
};
use crate::tree::{make_tree, ClassTree, Node};

/// Which member concept flips the labels.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Representative {
    #[default]
    First,
    /// Index into the class as given.
    Index(usize),
}

/// A class prepared for learning: canonical form, representative `f`, and
/// the tree of the f-representation.
#[derive(Clone, Debug)]
pub struct Learner {
    class: ConceptClass,
    f: Concept,
    tree: ClassTree,
    /// Canonical concept index to the first matching index of the input.
    original_index: Vec<usize>,
}

/// Everything the improper learner computed on one run.
#[derive(Clone, Debug, Serialize)]
pub struct ImproperTrace {
    pub f: Concept,
    pub t: usize,
    /// Deepest deterministic node of every subset.
    pub deepest: Vec<Node>,
    /// Depths of `deepest`.
    pub y: Vec<usize>,
    pub z: u64,
    /// Candidate points at depth `z`.
    pub p: Vec<PointId>,
    /// Number of subsets reaching each candidate.
    pub q: Vec<u64>,
    pub x_good: Node,
    /// The choosing mechanism returned no candidate.
    pub fell_back: bool,
    pub hypothesis: Hypothesis,
}

impl Learner {
    pub fn new(class: &ConceptClass, rep: Representative) -> Result<Self> {
        let canonical = if class.is_canonical() { class.clone() } else { class.canonicalize()? };
        let f = match rep {
            Representative::First => canonical.concepts()[0].clone(),
            Representative::Index(i) => class
                .concepts()
                .get(i)
                .cloned()
                .ok_or_else(|| invalid(format!("representative index {i} out of range")))?,
        };
        let mut first: HashMap<_, usize> = HashMap::with_capacity(class.len());
        for (i, c) in class.concepts().iter().enumerate() {
            first.entry(c.ones()).or_insert(i);
        }
        let original_index = canonical.concepts().iter().map(|c| first[c.ones()]).collect();
        let tree = make_tree(&canonical.f_represent(&f)?)?;
        Ok(Learner { class: canonical, f, tree, original_index })
    }

    /// The canonical class.
    pub fn class(&self) -> &ConceptClass {
        &self.class
    }

    pub fn representative(&self) -> &Concept {
        &self.f
    }

    pub fn tree(&self) -> &ClassTree {
        &self.tree
    }

    pub fn budget(&self, params: &LearnParams) -> SampleBudget {
        sample_budget(params, self.tree.max_depth())
    }

    /// Back-transformed hypothesis of a node, indexed against the input class.
    pub fn hypothesis(&self, node: Node) -> Hypothesis {
        let mut h = self.tree.hypothesis(node, &self.f);
        h.proper_index = h.proper_index.map(|j| self.original_index[j]);
        h
    }

    /// Runs the improper learner with the budgeted number of subsets and
    /// the default mechanisms. Requires `|data| ≥ N1`.
    pub fn improper(&self, data: &Dataset, params: &LearnParams, rng: &mut RandomSource) -> Result<ImproperTrace> {
        params.validate()?;
        let budget = self.budget(params);
        if data.len() < budget.n1 {
            return Err(Error::InsufficientData { needed: budget.n1, got: data.len() });
        }
        let chooser = ChoosingMechanism { config: params.constants.choosing };
        self.improper_with(data, budget.t, params, &ExponentialMedian, &chooser, rng)
    }

    /// The improper learner with an explicit subset count and mechanisms.
    pub fn improper_with(
        &self,
        data: &Dataset,
        t: usize,
        params: &LearnParams,
        median: &dyn MedianBackend,
        chooser: &dyn ChoosingBackend,
        rng: &mut RandomSource,
    ) -> Result<ImproperTrace> {
        data.check_domain(self.class.domain_size())?;
        let tree = &self.tree;
        let parts = partition(&data.relabel(&self.f), t, rng)?;
        let deepest = parts
            .iter()
            .map(|s| tree.deepest_deterministic(&s.examples))
            .collect::<Result<Vec<_>>>()?;
        let y: Vec<usize> = deepest.iter().map(|&b| tree.depth(b)).collect();
        let y64: Vec<u64> = y.iter().map(|&d| d as u64).collect();
        let domain_max = tree.max_depth() as u64 + 1;
        let z = median.median(&y64, domain_max, params.constants.median_alpha, params.privacy, params.beta, rng)?;

        let p = tree.layer(z as usize).to_vec();
        let mut q = vec![0u64; p.len()];
        for (&b, &yi) in deepest.iter().zip(&y) {
            if yi as u64 >= z && z > 0 {
                if let Node::Point(a) = tree.ancestor_at_depth(b, z as usize) {
                    let j = p.binary_search(&a).expect("layer holds every point of its depth");
                    q[j] += 1;
                }
            }
        }

        let inst = ChoosingInstance::new(q.clone(), 1, t as u64);
        let choice = chooser.choose(&inst, params.privacy, params.beta, rng)?;
        let x_good = choice.map_or(Node::Root, |j| Node::Point(p[j]));
        Ok(ImproperTrace {
            f: self.f.clone(),
            t,
            deepest,
            y,
            z,
            p,
            q,
            x_good,
            fell_back: choice.is_none(),
            hypothesis: self.hypothesis(x_good),
        })
    }

    /// Runs the proper learner. Requires `|data| ≥ N1 + N2`.
    pub fn proper(&self, data: &Dataset, params: &LearnParams, rng: &mut RandomSource) -> Result<ProperTrace> {
        proper::run(self, data, params, rng)
    }
}

/// Improper learner with `f` the first concept of the canonical class.
pub fn improper_learn(
    class: &ConceptClass,
    data: &Dataset,
    params: &LearnParams,
    rng: &mut RandomSource,
) -> Result<ImproperTrace> {
    Learner::new(class, Representative::First)?.improper(data, params, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{example_class, thresholds};
    use crate::mech::noiseless::{ArgMax, ExactMedian, FixedMedian};

    fn params() -> LearnParams {
        LearnParams::new(0.2, 0.2, 1.0, 1e-5).unwrap()
    }

    #[test]
    fn worked_example_selects_x5() {
        let class = example_class();
        let learner = Learner::new(&class, Representative::Index(7)).unwrap();
        // (x1, 1) determines {x1}; (x7, 1) determines {x1, x5, x7}
        let data = Dataset::from_pairs(&[(0, true), (6, true)]);
        let trace = learner
            .improper_with(&data, 2, &params(), &FixedMedian(2), &ArgMax, &mut RandomSource::new(0))
            .unwrap();
        let mut y = trace.y.clone();
        y.sort();
        assert_eq!(y, vec![1, 3]);
        assert_eq!(trace.p, vec![PointId::new(3), PointId::new(4)]);
        assert_eq!(trace.q, vec![0, 1]);
        assert_eq!(trace.x_good, Node::Point(PointId::new(4)));
        assert_eq!(trace.hypothesis.points(), vec![PointId::new(0), PointId::new(4)]);
        assert_eq!(trace.hypothesis.proper_index, Some(4));
    }

    #[test]
    fn single_concept_class() {
        let class = ConceptClass::from_sets("one", 4, &[&[1, 2]]).unwrap();
        let learner = Learner::new(&class, Representative::First).unwrap();
        let data = Dataset::from_pairs(&[(0, false), (1, true), (2, true), (3, false)]);
        for seed in 0..20 {
            let trace = learner
                .improper_with(&data, 2, &params(), &ExponentialMedian, &ChoosingMechanism::default(), &mut RandomSource::new(seed))
                .unwrap();
            assert_eq!(trace.hypothesis.points(), vec![PointId::new(1), PointId::new(2)]);
            assert_eq!(trace.hypothesis.proper_index, Some(0));
        }
    }

    #[test]
    fn unrealizable_subset_errors() {
        let learner = Learner::new(&example_class(), Representative::Index(7)).unwrap();
        // x2 and x4 are incomparable, so no concept has both
        let data = Dataset::from_pairs(&[(1, true), (3, true)]);
        let err = learner
            .improper_with(&data, 1, &params(), &ExactMedian, &ArgMax, &mut RandomSource::new(0))
            .unwrap_err();
        assert!(matches!(err, Error::NotRealizable));
    }

    #[test]
    fn insufficient_data_errors() {
        let class = thresholds(16).unwrap();
        let data = Dataset::from_pairs(&[(0, true)]);
        let err = improper_learn(&class, &data, &params(), &mut RandomSource::new(0)).unwrap_err();
        assert!(matches!(err, Error::InsufficientData { .. }));
    }

    #[test]
    fn q_counts_only_deep_subsets() {
        let learner = Learner::new(&example_class(), Representative::Index(7)).unwrap();
        let data = Dataset::from_pairs(&[(0, true), (4, true), (6, true), (1, false)]);
        let trace = learner
            .improper_with(&data, 4, &params(), &FixedMedian(2), &ArgMax, &mut RandomSource::new(3))
            .unwrap();
        let deep = trace.y.iter().filter(|&&y| y >= 2).count() as u64;
        assert_eq!(trace.q.iter().sum::<u64>(), deep);
    }

    #[test]
    fn representative_index_maps_through_duplicates() {
        let class = ConceptClass::from_sets("dup", 3, &[&[0], &[0], &[], &[0, 1]]).unwrap();
        let learner = Learner::new(&class, Representative::Index(2)).unwrap();
        assert_eq!(learner.hypothesis(Node::Root).proper_index, Some(2));
        let top = learner.tree().layer(1)[0];
        assert_eq!(learner.hypothesis(Node::Point(top)).proper_index, Some(0));
    }
}
