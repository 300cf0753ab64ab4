//! Synthetic VC-1 concept classes.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::concept::{Concept, ConceptClass};
use crate::error::{invalid, Result};
use crate::mech::RandomSource;

/// Which class to build.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Thresholds { n: usize },
    Points { n: usize },
    RandomTree { n: usize, max_children: usize, concept_rate: f64, seed: u64 },
    Example,
    ModifiedExample,
}

pub fn generate_class(spec: &GeneratorSpec) -> Result<ConceptClass> {
    match *spec {
        GeneratorSpec::Thresholds { n } => thresholds(n),
        GeneratorSpec::Points { n } => points(n),
        GeneratorSpec::RandomTree { n, max_children, concept_rate, seed } => {
            random_tree(n, max_children, concept_rate, seed)
        }
        GeneratorSpec::Example => Ok(example_class()),
        GeneratorSpec::ModifiedExample => Ok(modified_example_class()),
    }
}

const EXAMPLE_SETS: [&[usize]; 8] = [&[0], &[1], &[2], &[0, 3], &[0, 4], &[0, 4, 5], &[0, 4, 6], &[]];

/// The eight-concept class over seven points used throughout the docs.
///
/// Concept `h{i}` sits at index `i - 1`; point `x{j}` is `PointId(j - 1)`.
pub fn example_class() -> ConceptClass {
    named("example", EXAMPLE_SETS.iter().enumerate().collect())
}

/// [`example_class`] without `h5`, so that `x5` is no longer proper.
pub fn modified_example_class() -> ConceptClass {
    named(
        "modified_example",
        EXAMPLE_SETS.iter().enumerate().filter(|(i, _)| *i != 4).collect(),
    )
}

fn named(name: &str, sets: Vec<(usize, &&[usize])>) -> ConceptClass {
    let concepts = sets
        .into_iter()
        .map(|(i, s)| {
            Concept::from_points(7, s.iter().copied())
                .expect("fixture points in range")
                .with_id(format!("h{}", i + 1))
        })
        .collect();
    ConceptClass::new(name, 7, concepts).expect("fixture is non-empty")
}

/// `{x : x ≥ t}` for `t = 0..=n`, from all-ones down to all-zeros.
pub fn thresholds(n: usize) -> Result<ConceptClass> {
    if n == 0 {
        return Err(invalid("thresholds need at least one point"));
    }
    let concepts = (0..=n)
        .map(|t| Ok(Concept::from_points(n, t..n)?.with_id(format!("t{t}"))))
        .collect::<Result<_>>()?;
    ConceptClass::new(format!("thresholds({n})"), n, concepts)
}

/// Indicator of every point, plus the empty concept.
pub fn points(n: usize) -> Result<ConceptClass> {
    if n == 0 {
        return Err(invalid("points need at least one point"));
    }
    let mut concepts = (0..n)
        .map(|i| Ok(Concept::from_points(n, [i])?.with_id(format!("p{i}"))))
        .collect::<Result<Vec<_>>>()?;
    concepts.push(Concept::zeros(n).with_id("empty"));
    ConceptClass::new(format!("points({n})"), n, concepts)
}

/// Root-path closures of a random forest over `n` points.
///
/// Point `i` hangs below the root or below an earlier point with fewer than
/// `max_children` children. Every leaf path and the empty concept are always
/// present; each internal path is kept with probability `concept_rate`.
pub fn random_tree(n: usize, max_children: usize, concept_rate: f64, seed: u64) -> Result<ConceptClass> {
    if n == 0 {
        return Err(invalid("random_tree needs at least one point"));
    }
    if max_children == 0 {
        return Err(invalid("max_children must be positive"));
    }
    if !(0.0..=1.0).contains(&concept_rate) {
        return Err(invalid(format!("concept_rate must lie in [0, 1], got {concept_rate}")));
    }
    let mut rng = RandomSource::new(seed);
    let mut parent: Vec<Option<usize>> = Vec::with_capacity(n);
    let mut children = vec![0usize; n];
    let mut open: Vec<usize> = Vec::new();
    for i in 0..n {
        let slot = rng.random_range(0..=open.len());
        let p = if slot == open.len() { None } else { Some(open[slot]) };
        if let Some(p) = p {
            children[p] += 1;
            if children[p] == max_children {
                open.retain(|&q| q != p);
            }
        }
        parent.push(p);
        open.push(i);
    }

    let mut concepts = vec![Concept::zeros(n).with_id("empty")];
    for i in 0..n {
        if children[i] > 0 && !rng.random_bool(concept_rate) {
            continue;
        }
        let mut path = vec![i];
        let mut cur = parent[i];
        while let Some(p) = cur {
            path.push(p);
            cur = parent[p];
        }
        concepts.push(Concept::from_points(n, path)?.with_id(format!("path{i}")));
    }
    ConceptClass::new(format!("random_tree({n},{max_children},{concept_rate},{seed})"), n, concepts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{make_tree, mark_proper};

    #[test]
    fn sizes() {
        assert_eq!(points(4).unwrap().len(), 5);
        assert_eq!(thresholds(8).unwrap().len(), 9);
        assert_eq!(example_class().len(), 8);
        assert_eq!(modified_example_class().len(), 7);
    }

    #[test]
    fn zero_size_rejected() {
        assert!(points(0).is_err());
        assert!(thresholds(0).is_err());
        assert!(random_tree(0, 2, 0.5, 1).is_err());
        assert!(random_tree(4, 2, 1.5, 1).is_err());
    }

    #[test]
    fn full_rate_gives_maximum_class() {
        for seed in 0..20 {
            let class = random_tree(30, 3, 1.0, seed).unwrap().canonicalize().unwrap();
            let tree = make_tree(&class).unwrap();
            assert!(mark_proper(&class, &tree).iter().all(|(_, p)| *p), "seed {seed}");
        }
    }

    #[test]
    fn random_trees_are_tree_structured() {
        for seed in 0..50 {
            let class = random_tree(40, 3, 0.3, seed).unwrap().canonicalize().unwrap();
            let tree = make_tree(&class).unwrap();
            for x in tree.points() {
                if tree.is_leaf((*x).into()) {
                    assert!(tree.is_proper((*x).into()));
                }
            }
        }
    }

    #[test]
    fn spec_roundtrip() {
        let spec = GeneratorSpec::RandomTree { n: 10, max_children: 2, concept_rate: 0.5, seed: 3 };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<GeneratorSpec>(&text).unwrap(), spec);
        assert_eq!(generate_class(&spec).unwrap().concepts(), random_tree(10, 2, 0.5, 3).unwrap().concepts());
    }
}
