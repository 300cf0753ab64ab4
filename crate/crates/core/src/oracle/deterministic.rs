use fixedbitset::FixedBitSet;

use crate::concept::{ConceptClass, Example, PointId};
use crate::error::{Error, Result};

/// Points labelled 1 by every concept consistent with the sample, by
/// enumerating the class.
pub fn deterministic_oracle(class_f: &ConceptClass, sample: &[Example]) -> Result<Vec<PointId>> {
    for e in sample {
        class_f.check_point(e.point)?;
    }
    let mut acc: Option<FixedBitSet> = None;
    for c in class_f.concepts() {
        if sample.iter().all(|e| c.contains(e.point) == e.label) {
            match acc.as_mut() {
                Some(a) => a.intersect_with(c.ones()),
                None => acc = Some(c.ones().clone()),
            }
        }
    }
    let acc = acc.ok_or(Error::NotRealizable)?;
    Ok(acc.ones().map(PointId::new).collect())
}
