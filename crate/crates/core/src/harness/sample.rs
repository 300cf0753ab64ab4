use crate::concept::{Concept, ConceptClass, Dataset, Example};
use crate::error::{Error, Result};
use crate::mech::RandomSource;
use crate::oracle::Distribution;

/// `n` i.i.d. draws from `d`, labelled by `c_star`.
pub fn sample_dataset(
    class: &ConceptClass,
    c_star: &Concept,
    d: &Distribution,
    n: usize,
    rng: &mut RandomSource,
) -> Result<Dataset> {
    if class.position(c_star).is_none() {
        return Err(Error::NotMember);
    }
    if d.domain_size() != class.domain_size() {
        return Err(Error::InvalidParameter(format!(
            "distribution over {} points, class over {}",
            d.domain_size(),
            class.domain_size()
        )));
    }
    let examples = d
        .sample_iter(rng)
        .take(n)
        .map(|x| Example { point: x, label: c_star.contains(x) })
        .collect();
    Ok(Dataset { examples, realizable_by: c_star.id.clone() })
}
