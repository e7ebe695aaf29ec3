//! Rational sample points `s0 = q^½` for the specialised computations.

use num_traits::{One, Zero};

use crate::ring::{parse_rational, rational, BigRational, RingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("inadmissible sample q^(1/2) = {s0}: {reason}")]
pub struct InadmissibleSample {
    pub s0: BigRational,
    pub reason: &'static str,
}

/// Requires `s0 ≠ 0`, `q² ≠ 1` and `q³ ≠ 1` where `q = s0²`.
pub fn check_admissible(s0: &BigRational) -> Result<(), InadmissibleSample> {
    let fail = |reason| {
        Err(InadmissibleSample {
            s0: s0.clone(),
            reason,
        })
    };
    if s0.is_zero() {
        return fail("q^(1/2) must be invertible");
    }
    let q = s0 * s0;
    if (&q * &q).is_one() {
        return fail("q^2 = 1");
    }
    if (&q * &q * &q).is_one() {
        return fail("q^3 = 1");
    }
    Ok(())
}

pub fn default_samples() -> Vec<BigRational> {
    vec![rational(2, 3), rational(3, 5)]
}

/// Parses a comma-separated list such as `2/3,3/5`.
pub fn parse_samples(text: &str) -> Result<Vec<BigRational>, RingError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rational)
        .collect()
}
