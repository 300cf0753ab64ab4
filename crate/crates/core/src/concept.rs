//! Finite concept classes, labelled datasets and hypotheses.
//!
//! A [`ConceptClass`] is a boolean matrix: rows are concepts, columns are
//! domain points. Concepts are stored as bitsets over the domain so that
//! column comparisons and symmetric differences are word operations.
//!
//! [`ConceptClass::canonicalize`] brings a class into the normal form the
//! learners assume: duplicate concepts are dropped, points with identical
//! columns are merged onto their lowest-index representative, and points on
//! which every concept agrees are flagged constant. Merged and constant points
//! stay in the domain (so distributions and datasets keep their indices) but
//! are excluded from the partial order.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Index of a domain point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub u32);

impl PointId {
    pub fn new(index: usize) -> Self {
        PointId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A boolean function over the domain, represented by its positive set `I(c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Concept {
    pub id: Option<String>,
    ones: FixedBitSet,
}

impl Concept {
    pub fn from_ones(domain_size: usize, ones: FixedBitSet) -> Result<Self> {
        if ones.len() != domain_size {
            return Err(Error::Format(format!(
                "bitset length {} does not match domain size {domain_size}",
                ones.len()
            )));
        }
        Ok(Concept { id: None, ones })
    }

    pub fn from_points<I>(domain_size: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut ones = FixedBitSet::with_capacity(domain_size);
        for p in points {
            if p >= domain_size {
                return Err(Error::PointOutOfRange { point: p, domain_size });
            }
            ones.insert(p);
        }
        Ok(Concept { id: None, ones })
    }

    pub fn zeros(domain_size: usize) -> Self {
        Concept { id: None, ones: FixedBitSet::with_capacity(domain_size) }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    #[inline]
    pub fn contains(&self, x: PointId) -> bool {
        self.ones.contains(x.index())
    }

    pub fn ones(&self) -> &FixedBitSet {
        &self.ones
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> + '_ {
        self.ones.ones().map(PointId::new)
    }

    pub fn count(&self) -> usize {
        self.ones.count_ones(..)
    }

    pub fn domain_size(&self) -> usize {
        self.ones.len()
    }

    /// Pointwise XOR with `f`, i.e. the f-representation of this concept.
    pub fn xor(&self, f: &Concept) -> Concept {
        let mut ones = self.ones.clone();
        ones.symmetric_difference_with(&f.ones);
        Concept { id: self.id.clone(), ones }
    }
}

/// A finite concept class over the domain `0..domain_size`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConceptClass {
    name: String,
    domain_size: usize,
    concepts: Vec<Concept>,
    merge_map: Vec<PointId>,
    constants: Vec<Option<bool>>,
    canonical: bool,
}

impl ConceptClass {
    pub fn new(name: impl Into<String>, domain_size: usize, concepts: Vec<Concept>) -> Result<Self> {
        if concepts.is_empty() {
            return Err(Error::EmptyClass);
        }
        for c in &concepts {
            if c.domain_size() != domain_size {
                return Err(Error::Format(format!(
                    "concept over {} points in a domain of size {domain_size}",
                    c.domain_size()
                )));
            }
        }
        Ok(ConceptClass {
            name: name.into(),
            domain_size,
            concepts,
            merge_map: (0..domain_size).map(PointId::new).collect(),
            constants: vec![None; domain_size],
            canonical: false,
        })
    }

    /// Convenience constructor from explicit positive sets.
    pub fn from_sets(name: impl Into<String>, domain_size: usize, sets: &[&[usize]]) -> Result<Self> {
        let concepts = sets
            .iter()
            .map(|s| Concept::from_points(domain_size, s.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        ConceptClass::new(name, domain_size, concepts)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Representative a point was merged onto (itself when not merged).
    pub fn merge_map(&self) -> &[PointId] {
        &self.merge_map
    }

    #[inline]
    pub fn representative(&self, x: PointId) -> PointId {
        self.merge_map[x.index()]
    }

    /// Forced label of a constant point, `None` for points in the order universe.
    #[inline]
    pub fn constant_label(&self, x: PointId) -> Option<bool> {
        self.constants[x.index()]
    }

    /// Whether `x` takes part in the partial order: not constant and not merged away.
    #[inline]
    pub fn in_universe(&self, x: PointId) -> bool {
        x.index() < self.domain_size
            && self.constants[x.index()].is_none()
            && self.merge_map[x.index()] == x
    }

    pub fn universe(&self) -> impl Iterator<Item = PointId> + '_ {
        (0..self.domain_size).map(PointId::new).filter(|&x| self.in_universe(x))
    }

    /// Index of the concept whose positive set equals `c`'s.
    pub fn position(&self, c: &Concept) -> Option<usize> {
        self.concepts.iter().position(|k| k.ones == c.ones)
    }

    /// Index of the all-zeros concept, if present.
    pub fn zero_concept(&self) -> Option<usize> {
        self.concepts.iter().position(|c| c.ones.is_clear())
    }

    /// Set of concept indices that label `x` with 1.
    pub fn column(&self, x: PointId) -> FixedBitSet {
        let mut col = FixedBitSet::with_capacity(self.concepts.len());
        for (i, c) in self.concepts.iter().enumerate() {
            if c.contains(x) {
                col.insert(i);
            }
        }
        col
    }

    pub fn check_point(&self, x: PointId) -> Result<()> {
        if x.index() >= self.domain_size {
            return Err(Error::PointOutOfRange { point: x.index(), domain_size: self.domain_size });
        }
        Ok(())
    }

    /// Normal form: deduplicated concepts, merged identical columns, flagged
    /// constant points. Idempotent.
    pub fn canonicalize(&self) -> Result<ConceptClass> {
        if self.concepts.is_empty() {
            return Err(Error::EmptyClass);
        }
        let mut seen = HashMap::with_capacity(self.concepts.len());
        let mut concepts = Vec::with_capacity(self.concepts.len());
        for c in &self.concepts {
            if seen.insert(c.ones.clone(), ()).is_none() {
                concepts.push(c.clone());
            }
        }

        let n = self.domain_size;
        let mut merge_map: Vec<PointId> = (0..n).map(PointId::new).collect();
        let mut constants = vec![None; n];
        let mut first_with_column: HashMap<FixedBitSet, PointId> = HashMap::new();
        for x in (0..n).map(PointId::new) {
            let mut col = FixedBitSet::with_capacity(concepts.len());
            for (i, c) in concepts.iter().enumerate() {
                if c.contains(x) {
                    col.insert(i);
                }
            }
            let ones = col.count_ones(..);
            if ones == 0 || ones == concepts.len() {
                constants[x.index()] = Some(ones != 0);
                continue;
            }
            let rep = *first_with_column.entry(col).or_insert(x);
            merge_map[x.index()] = rep;
        }

        Ok(ConceptClass {
            name: self.name.clone(),
            domain_size: n,
            concepts,
            merge_map,
            constants,
            canonical: true,
        })
    }

    /// The f-representation: every concept XOR-ed with `f`, which must be a
    /// member of the class. The image of `f` itself is the all-zeros concept.
    pub fn f_represent(&self, f: &Concept) -> Result<ConceptClass> {
        if self.position(f).is_none() {
            return Err(Error::NotMember);
        }
        let concepts = self.concepts.iter().map(|c| c.xor(f)).collect();
        let constants = self
            .constants
            .iter()
            .enumerate()
            .map(|(x, l)| l.map(|l| l ^ f.ones.contains(x)))
            .collect();
        Ok(ConceptClass {
            name: self.name.clone(),
            domain_size: self.domain_size,
            concepts,
            merge_map: self.merge_map.clone(),
            constants,
            canonical: self.canonical,
        })
    }

    fn check_order_point(&self, x: PointId) -> Result<()> {
        self.check_point(x)?;
        if !self.in_universe(x) {
            return Err(Error::OutsideOrder(x));
        }
        Ok(())
    }

    /// `a ⪯ b`: every concept labelling `a` with 1 also labels `b` with 1.
    pub fn leq(&self, a: PointId, b: PointId) -> Result<bool> {
        self.check_order_point(a)?;
        self.check_order_point(b)?;
        Ok(self.concepts.iter().all(|c| !c.contains(a) || c.contains(b)))
    }

    pub fn comparable(&self, a: PointId, b: PointId) -> Result<bool> {
        Ok(self.leq(a, b)? || self.leq(b, a)?)
    }
}

/// One labelled example.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Example {
    pub point: PointId,
    pub label: bool,
}

impl Example {
    pub fn new(point: usize, label: bool) -> Self {
        Example { point: PointId::new(point), label }
    }
}

/// A sequence of labelled examples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dataset {
    pub examples: Vec<Example>,
    /// Concept id that generated the labels; test metadata only.
    pub realizable_by: Option<String>,
}

impl Dataset {
    pub fn new(examples: Vec<Example>) -> Self {
        Dataset { examples, realizable_by: None }
    }

    pub fn from_pairs(pairs: &[(usize, bool)]) -> Self {
        Dataset::new(pairs.iter().map(|&(p, l)| Example::new(p, l)).collect())
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn check_domain(&self, domain_size: usize) -> Result<()> {
        match self.examples.iter().find(|e| e.point.index() >= domain_size) {
            Some(e) => Err(Error::PointOutOfRange { point: e.point.index(), domain_size }),
            None => Ok(()),
        }
    }

    /// Moves labels into the f-representation: `(x, y) -> (x, y XOR f(x))`.
    /// Applying it twice with the same `f` restores the dataset.
    pub fn relabel(&self, f: &Concept) -> Dataset {
        Dataset {
            examples: self
                .examples
                .iter()
                .map(|e| Example { point: e.point, label: e.label ^ f.contains(e.point) })
                .collect(),
            realizable_by: self.realizable_by.clone(),
        }
    }
}

/// Output of a learner: a positive set, plus the concept index when it is a
/// member of the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub ones: FixedBitSet,
    pub proper_index: Option<usize>,
}

impl Hypothesis {
    pub fn from_concept(class: &ConceptClass, index: usize) -> Self {
        Hypothesis { ones: class.concepts()[index].ones.clone(), proper_index: Some(index) }
    }

    #[inline]
    pub fn eval(&self, x: PointId) -> bool {
        self.ones.contains(x.index())
    }

    pub fn points(&self) -> Vec<PointId> {
        self.ones.ones().map(PointId::new).collect()
    }

    pub fn as_concept(&self) -> Concept {
        Concept { id: None, ones: self.ones.clone() }
    }
}

struct PointList<'a>(&'a FixedBitSet);

impl Serialize for PointList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.ones())
    }
}

impl Serialize for Concept {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Concept", 2)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("ones", &PointList(&self.ones))?;
        st.end()
    }
}

impl Serialize for Hypothesis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Hypothesis", 2)?;
        st.serialize_field("ones", &PointList(&self.ones))?;
        st.serialize_field("proper_index", &self.proper_index)?;
        st.end()
    }
}
