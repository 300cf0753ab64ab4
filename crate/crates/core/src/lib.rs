//! Differentially private PAC learning for classes of VC dimension one.
//!
//! A VC-1 class over a finite domain, after flipping labels by a member
//! concept `f`, is a forest under the column-inclusion order: every concept
//! is the upward closure of its deepest point. This crate builds that tree
//! and runs two private learners over it:
//!
//! * [`learn::improper_learn`] locates a good node through a private median
//!   of per-subset depths followed by the choosing mechanism.
//! * [`learn::proper_learn`] walks the subtree below that node with noisy
//!   weight tests until it reaches a proper node (a class member).
//!
//! Exhaustive oracles ([`oracle`]) check dimensions and deterministic points
//! on small classes, and [`oracle::dp_audit`] estimates privacy loss
//! empirically.
//!
//! ```
//! use dp_vc1::harness::generate::example_class;
//! use dp_vc1::tree::make_tree;
//!
//! let class = example_class();
//! let f = class.concepts()[7].clone();
//! let tree = make_tree(&class.f_represent(&f)?)?;
//! assert_eq!(tree.max_depth(), 3);
//! # Ok::<(), dp_vc1::Error>(())
//! ```

pub mod concept;
pub mod error;
pub mod harness;
pub mod io;
pub mod learn;
pub mod mech;
pub mod oracle;
pub mod tree;

pub use concept::{Concept, ConceptClass, Dataset, Example, Hypothesis, PointId};
pub use error::{Error, Result};
pub use mech::{PrivacyParams, RandomSource};
pub use tree::{make_tree, ClassTree, Node};
