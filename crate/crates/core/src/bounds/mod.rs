//! Upper bounds on Hankel determinants and the checks built on them.

mod asymptotics;
mod decay;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::hankel::{certify_positive, compute_det, det_bareiss, Certificate, EngineChoice, HankelError, HankelQuery};
use crate::numerics::{Ball, NumericsError, PrecisionChoice};
use crate::sequences::{EnvelopeCase, RatioEnvelope, SeriesError, SeriesSpec};

pub use asymptotics::{
    monien_ratio_check, zagier_fit, AsymptoticFit, MonienPairing, MonienRow, ZAGIER_A0_REFERENCE,
};
pub use decay::{check_decay_preconditions, decay_row, verify_quadratic_decay, DecayMode, DecayReport, DecayRow, RowStatus};

#[derive(Clone, Debug, thiserror::Error)]
pub enum BoundsError {
    #[error("offset r = {r} is below K - 2 = {min} for this envelope")]
    EnvelopeDomainViolated { r: i64, min: i64 },
    #[error("invalid request: {0}")]
    InvalidQuery(String),
    #[error("no positivity certificate for {0}")]
    NoPositivity(String),
    #[error("{0} is degenerate")]
    Degenerate(String),
    #[error(transparent)]
    Hankel(#[from] HankelError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// `h(2+r) * prod_{k=2}^n lambda(2k+r)`, the envelope bound on `H_n^(r)`.
pub fn envelope_bound(env: &RatioEnvelope, spec: &SeriesSpec, n: usize, r: i64, prec: u32) -> Result<Ball, BoundsError> {
    if n < 2 {
        return Err(BoundsError::InvalidQuery("the envelope bound starts at n = 2".into()));
    }
    let min = env.k0 - 2;
    if r < min {
        return Err(BoundsError::EnvelopeDomainViolated { r, min });
    }
    if env.case != EnvelopeCase::Factorial {
        let q = HankelQuery::new(spec, n, r)?;
        if !matches!(certify_positive(&q), Certificate::Positive { .. }) {
            return Err(BoundsError::NoPositivity(spec.name().into()));
        }
    }
    let mut bound = spec.eval(2 + r, prec)?;
    for k in 2..=n as i64 {
        bound = &bound * &env.lambda(2 * k + r, prec);
    }
    Ok(bound)
}

/// A determinant compared against its envelope bound.
#[derive(Clone, Debug)]
pub struct EnvelopeRow {
    pub n: usize,
    pub r: i64,
    pub det: Ball,
    pub bound: Ball,
    pub holds: bool,
}

pub fn envelope_check(
    env: &RatioEnvelope,
    spec: &SeriesSpec,
    n: usize,
    r: i64,
    precision: PrecisionChoice,
) -> Result<EnvelopeRow, BoundsError> {
    let q = HankelQuery::new(spec, n, r)?;
    let policy = precision.policy_for(n);
    let det = compute_det(&q, EngineChoice::Auto, &policy)?.value;
    let bound = envelope_bound(env, spec, n, r, policy.initial_bits().max(det.prec()))?;
    let holds = det.certified_lt(&bound);
    Ok(EnvelopeRow { n, r, det, bound, holds })
}

/// Exact comparison for `h(k) = (k-2)!`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialCheck {
    pub n: usize,
    pub r: u64,
    pub det: BigInt,
    /// `2^(n-1) prod_{k=1}^n (2k+r-2)!`.
    pub bound: BigInt,
    pub positive: bool,
    pub holds: bool,
}

fn factorial(k: u64) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn factorial_bound_check(n: usize, r: u64) -> Result<FactorialCheck, BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidQuery("size must be at least 1".into()));
    }
    let max = r + 2 * (n as u64 - 1);
    let table: Vec<BigInt> = (0..=max).map(factorial).collect();
    let m: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| table[(r + (i + j) as u64) as usize].clone()).collect()).collect();
    let det = det_bareiss(m);
    let mut bound = BigInt::one() << (n - 1);
    for k in 1..=n as u64 {
        bound *= factorial(2 * k + r - 2);
    }
    let positive = det.is_positive();
    let holds = positive && det < bound;
    Ok(FactorialCheck { n, r, det, bound, positive, holds })
}

/// Memoised certified determinants of one series.
pub(crate) struct DetCache<'a> {
    spec: &'a SeriesSpec,
    precision: PrecisionChoice,
    values: BTreeMap<(usize, i64), Ball>,
}

impl<'a> DetCache<'a> {
    pub(crate) fn new(spec: &'a SeriesSpec, precision: PrecisionChoice) -> Self {
        DetCache { spec, precision, values: BTreeMap::new() }
    }

    pub(crate) fn get(&mut self, n: usize, r: i64) -> Result<Ball, BoundsError> {
        if n == 0 {
            return Ok(Ball::one(64));
        }
        if let Some(v) = self.values.get(&(n, r)) {
            return Ok(v.clone());
        }
        let q = HankelQuery::new(self.spec, n, r)?;
        let v = compute_det(&q, EngineChoice::Auto, &self.precision.policy_for(n))?.value;
        self.values.insert((n, r), v.clone());
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small_cases() {
        let c = factorial_bound_check(3, 0).unwrap();
        assert_eq!((c.det.clone(), c.bound.clone()), (BigInt::from(4), BigInt::from(192)));
        assert!(c.holds);
        let c = factorial_bound_check(1, 0).unwrap();
        assert_eq!(c.det, BigInt::one());
        assert!(c.positive);
    }

    #[test]
    fn envelope_rejects_small_sizes() {
        let env = RatioEnvelope::factorial();
        let f = SeriesSpec::factorial_seq();
        assert!(matches!(envelope_bound(&env, &f, 1, 0, 64), Err(BoundsError::InvalidQuery(_))));
        let b = envelope_bound(&env, &f, 3, 0, 64).unwrap();
        assert_eq!(b.exact_integer(), Some(BigInt::from(192)));
    }
}
