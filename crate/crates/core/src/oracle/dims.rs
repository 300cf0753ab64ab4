use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::concept::ConceptClass;
use crate::error::{Error, Result};

/// Largest domain accepted by the VC and Littlestone oracles.
pub const VC_LIMIT: usize = 24;
/// Largest domain accepted by the thresholds oracle.
pub const THRESHOLDS_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub vc: usize,
    pub littlestone: usize,
    pub thresholds: usize,
}

fn guard(class: &ConceptClass, limit: usize) -> Result<()> {
    if class.domain_size() > limit {
        return Err(Error::OracleScale { domain_size: class.domain_size(), limit });
    }
    Ok(())
}

/// Concept patterns as `u32` masks over the domain.
fn masks(class: &ConceptClass) -> Vec<u32> {
    let mut out: Vec<u32> = class
        .concepts()
        .iter()
        .map(|c| c.points().fold(0u32, |m, x| m | 1 << x.index()))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn shattered(masks: &[u32], set: u32) -> bool {
    let k = set.count_ones();
    let mut seen = FixedBitSet::with_capacity(1 << k);
    let bits: Vec<u32> = (0..32).filter(|b| set >> b & 1 == 1).collect();
    for &m in masks {
        let pattern = bits.iter().enumerate().fold(0usize, |p, (i, &b)| p | ((m >> b & 1) as usize) << i);
        seen.insert(pattern);
    }
    seen.count_ones(..) == 1 << k
}

/// Next subset of the same cardinality (Gosper's hack).
fn next_same_size(v: u32) -> u32 {
    let c = v & v.wrapping_neg();
    let r = v + c;
    (((r ^ v) >> 2) / c) | r
}

pub fn vc_dimension(class: &ConceptClass) -> Result<usize> {
    guard(class, VC_LIMIT)?;
    let n = class.domain_size() as u32;
    let masks = masks(class);
    let mut vc = 0;
    for k in 1..=n {
        let limit = 1u64 << n;
        let mut set = (1u32 << k) - 1;
        let mut found = false;
        while (set as u64) < limit {
            if shattered(&masks, set) {
                found = true;
                break;
            }
            if k == n {
                break;
            }
            set = next_same_size(set);
        }
        if !found {
            break;
        }
        vc = k as usize;
    }
    Ok(vc)
}

pub fn littlestone_dimension(class: &ConceptClass) -> Result<usize> {
    guard(class, VC_LIMIT)?;
    let masks = masks(class);
    let n = class.domain_size();
    let mut memo: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut all = FixedBitSet::with_capacity(masks.len());
    all.insert_range(..);
    Ok(ldim(&masks, n, &all, &mut memo))
}

fn ldim(masks: &[u32], n: usize, set: &FixedBitSet, memo: &mut HashMap<FixedBitSet, usize>) -> usize {
    if set.count_ones(..) <= 1 {
        return 0;
    }
    if let Some(&d) = memo.get(set) {
        return d;
    }
    let mut best = 0;
    for x in 0..n {
        let mut ones = FixedBitSet::with_capacity(masks.len());
        let mut zeros = FixedBitSet::with_capacity(masks.len());
        for i in set.ones() {
            if masks[i] >> x & 1 == 1 {
                ones.insert(i);
            } else {
                zeros.insert(i);
            }
        }
        if ones.is_clear() || zeros.is_clear() {
            continue;
        }
        let a = ldim(masks, n, &zeros, memo);
        if a < best {
            continue;
        }
        let b = ldim(masks, n, &ones, memo);
        best = best.max(1 + a.min(b));
    }
    memo.insert(set.clone(), best);
    best
}

/// Length of the longest sequence `x_1..x_k`, `c_1..c_k` with
/// `c_i(x_j) = 1` iff `j ≥ i`.
pub fn thresholds_dimension(class: &ConceptClass) -> Result<usize> {
    guard(class, THRESHOLDS_LIMIT)?;
    let masks = masks(class);
    let n = class.domain_size();
    let points = (1u32 << n) - 1;
    let concepts = FixedBitSet::with_capacity(masks.len());
    let mut all = concepts.clone();
    all.insert_range(..);
    let mut memo = HashMap::new();
    Ok(td(&masks, points, all, &mut memo))
}

/// Choosing `(x_1, c_1)` leaves points inside `c_1` and concepts that miss `x_1`.
fn td(masks: &[u32], points: u32, concepts: FixedBitSet, memo: &mut HashMap<(u32, FixedBitSet), usize>) -> usize {
    let key = (points, concepts);
    if let Some(&d) = memo.get(&key) {
        return d;
    }
    let (points, concepts) = key;
    let mut best = 0;
    for c in concepts.ones() {
        let inside = points & masks[c];
        let mut rest = inside;
        while rest != 0 {
            let x = rest.trailing_zeros();
            rest &= rest - 1;
            let mut next = FixedBitSet::with_capacity(masks.len());
            for d in concepts.ones() {
                if masks[d] >> x & 1 == 0 {
                    next.insert(d);
                }
            }
            best = best.max(1 + td(masks, inside & !(1 << x), next, memo));
        }
    }
    memo.insert((points, concepts), best);
    best
}

pub fn dimension_report(class: &ConceptClass) -> Result<DimensionReport> {
    Ok(DimensionReport {
        vc: vc_dimension(class)?,
        littlestone: littlestone_dimension(class)?,
        thresholds: thresholds_dimension(class)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::{example_class, points, thresholds};

    fn power_set(n: usize) -> ConceptClass {
        let sets: Vec<Vec<usize>> = (0..1u32 << n)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        let refs: Vec<&[usize]> = sets.iter().map(Vec::as_slice).collect();
        ConceptClass::from_sets("power", n, &refs).unwrap()
    }

    #[test]
    fn vc_values() {
        assert_eq!(vc_dimension(&example_class()).unwrap(), 1);
        assert_eq!(vc_dimension(&thresholds(8).unwrap()).unwrap(), 1);
        assert_eq!(vc_dimension(&power_set(3)).unwrap(), 3);
    }

    #[test]
    fn littlestone_values() {
        assert_eq!(littlestone_dimension(&points(4).unwrap()).unwrap(), 1);
        assert_eq!(littlestone_dimension(&thresholds(8).unwrap()).unwrap(), 3);
        let single = ConceptClass::from_sets("one", 3, &[&[0]]).unwrap();
        assert_eq!(littlestone_dimension(&single).unwrap(), 0);
        assert_eq!(littlestone_dimension(&power_set(3)).unwrap(), 3);
    }

    #[test]
    fn thresholds_values() {
        assert_eq!(thresholds_dimension(&thresholds(6).unwrap()).unwrap(), 6);
        let single = ConceptClass::from_sets("one", 3, &[&[0]]).unwrap();
        assert_eq!(thresholds_dimension(&single).unwrap(), 1);
        let zero = ConceptClass::from_sets("zero", 3, &[&[]]).unwrap();
        assert_eq!(thresholds_dimension(&zero).unwrap(), 0);
        assert_eq!(thresholds_dimension(&example_class()).unwrap(), 3);
    }

    #[test]
    fn scale_guard() {
        let big = thresholds(25).unwrap();
        assert!(matches!(vc_dimension(&big), Err(Error::OracleScale { .. })));
        assert!(matches!(thresholds_dimension(&thresholds(17).unwrap()), Err(Error::OracleScale { .. })));
    }
}
