use super::RandomSource;
use crate::error::{invalid, Result};

/// One draw from the Laplace distribution with density `exp(-|x|/b) / 2b`,
/// by inverting the CDF at a single uniform.
pub fn laplace_sample(scale: f64, rng: &mut RandomSource) -> Result<f64> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(invalid(format!("Laplace scale must be positive, got {scale}")));
    }
    let u = rng.open01() - 0.5;
    Ok(-scale * u.signum() * (1.0 - 2.0 * u.abs()).ln())
}
