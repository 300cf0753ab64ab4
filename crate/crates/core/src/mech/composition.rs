use super::PrivacyParams;

/// `k`-fold adaptive composition of `(ε, δ)` mechanisms:
/// `(√(2k·ln(1/δ'))·ε, k·δ + δ')`.
pub fn advanced_composition(epsilon_step: f64, delta_step: f64, k: u64, delta_prime: f64) -> PrivacyParams {
    let k = k as f64;
    PrivacyParams {
        epsilon: (2.0 * k * (1.0 / delta_prime).ln()).sqrt() * epsilon_step,
        delta: k * delta_step + delta_prime,
    }
}

/// Sums of the parts.
pub fn basic_composition(parts: &[PrivacyParams]) -> PrivacyParams {
    PrivacyParams {
        epsilon: parts.iter().map(|p| p.epsilon).sum(),
        delta: parts.iter().map(|p| p.delta).sum(),
    }
}

/// Mechanisms run on disjoint parts of the data: coordinatewise maximum.
pub fn parallel_composition(parts: &[PrivacyParams]) -> PrivacyParams {
    PrivacyParams {
        epsilon: parts.iter().map(|p| p.epsilon).fold(0.0, f64::max),
        delta: parts.iter().map(|p| p.delta).fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifty_steps() {
        let p = advanced_composition(0.1, 0.0, 50, 1e-6);
        assert!((p.epsilon - 3.716_922_188_849_838).abs() < 1e-12, "{}", p.epsilon);
        assert_eq!(p.delta, 1e-6);
    }

    #[test]
    fn zero_epsilon() {
        assert_eq!(advanced_composition(0.0, 0.0, 10, 1e-6).epsilon, 0.0);
    }

    #[test]
    fn single_step() {
        let p = advanced_composition(0.5, 1e-7, 1, 1e-5);
        assert!((p.epsilon - (2.0 * 1e5f64.ln()).sqrt() * 0.5).abs() < 1e-12);
        assert!((p.delta - 1.01e-5).abs() < 1e-18);
    }

    #[test]
    fn basic_and_parallel() {
        let a = PrivacyParams { epsilon: 1.0, delta: 1e-6 };
        let b = PrivacyParams { epsilon: 0.5, delta: 1e-5 };
        assert_eq!(basic_composition(&[a, b]), PrivacyParams { epsilon: 1.5, delta: 1e-6 + 1e-5 });
        assert_eq!(parallel_composition(&[a, b]), PrivacyParams { epsilon: 1.0, delta: 1e-5 });
    }
}
