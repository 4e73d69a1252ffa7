//! Denominators of rational series values: the lcm ledger, the integrality
//! of scaled Hankel determinants, and growth of the ledger.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::hankel::{det_exact_rational, HankelError, HankelQuery};
use crate::numerics::{Ball, NumericsError};
use crate::sequences::SeriesSpec;

const WORK_BITS: u32 = 128;

#[derive(Clone, Debug, thiserror::Error)]
pub enum RationalityError {
    #[error("{0} has no exact rational values")]
    NotRationalSeries(String),
    #[error("scaled determinant {0} is not a nonnegative integer")]
    NotAnInteger(BigRational),
    #[error("offset R = {r} is below the minimum {min} for this series")]
    OffsetTooSmall { r: i64, min: i64 },
    #[error("invalid request: {0}")]
    InvalidQuery(String),
    #[error(transparent)]
    Hankel(#[from] HankelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Reduced values `p_k / q_k` for `k = R+2, ..., R+m_max` and the running
/// lcm `D_m = lcm(q_{R+2}, ..., q_{R+m})`.
#[derive(Clone, Debug)]
pub struct DenominatorLedger {
    pub series: String,
    pub offset: i64,
    pub p: Vec<BigInt>,
    pub q: Vec<BigInt>,
    /// `d[i]` is `D_{i+2}`.
    pub d: Vec<BigInt>,
    /// `log D_m / m`.
    pub growth: Vec<Ball>,
}

impl DenominatorLedger {
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// Largest `m` with `D_m` recorded.
    pub fn m_max(&self) -> usize {
        self.d.len() + 1
    }

    /// `q_k`, for `R+2 <= k <= R+m_max`.
    pub fn q_at(&self, k: i64) -> Option<&BigInt> {
        self.q.get(usize::try_from(k - self.offset - 2).ok()?)
    }

    /// `D_m`, for `2 <= m <= m_max`.
    pub fn d_at(&self, m: usize) -> Option<&BigInt> {
        self.d.get(m.checked_sub(2)?)
    }
}

fn log_ratio(x: &BigInt, m: usize) -> Result<Ball, NumericsError> {
    Ball::from_bigint(x, WORK_BITS).ln()?.div_i64(m as i64)
}

pub fn rational_values(spec: &SeriesSpec, offset: i64, m_max: usize) -> Result<DenominatorLedger, RationalityError> {
    if !spec.has_exact_values() {
        return Err(RationalityError::NotRationalSeries(spec.name().into()));
    }
    let min = spec.min_offset();
    if offset < min {
        return Err(RationalityError::OffsetTooSmall { r: offset, min });
    }
    if m_max < 2 {
        return Err(RationalityError::InvalidQuery("m_max must be at least 2".into()));
    }
    let mut ledger = DenominatorLedger {
        series: spec.name().into(),
        offset,
        p: Vec::new(),
        q: Vec::new(),
        d: Vec::new(),
        growth: Vec::new(),
    };
    let mut lcm = BigInt::one();
    for m in 2..=m_max {
        let v = spec
            .exact_value(offset + m as i64)
            .ok_or_else(|| RationalityError::NotRationalSeries(spec.name().into()))?;
        lcm = lcm.lcm(v.denom());
        ledger.p.push(v.numer().clone());
        ledger.q.push(v.denom().clone());
        ledger.growth.push(log_ratio(&lcm, m)?);
        ledger.d.push(lcm.clone());
    }
    Ok(ledger)
}

/// `D_m^n H_n^(r)` with `m = 2n + r - R`, the lcm of every denominator that
/// occurs in the matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integrality {
    pub n: usize,
    pub r: i64,
    pub offset: i64,
    pub m: usize,
    pub d: BigInt,
    pub det: BigRational,
    pub value: BigInt,
}

pub fn integrality_check(spec: &SeriesSpec, n: usize, r: i64, offset: i64) -> Result<Integrality, RationalityError> {
    if r < offset {
        return Err(RationalityError::InvalidQuery("r must be at least R".into()));
    }
    let q = HankelQuery::new(spec, n, r)?;
    let m = (2 * n as i64 + r - offset) as usize;
    let ledger = rational_values(spec, offset, m)?;
    let d = ledger.d_at(m).cloned().expect("ledger reaches m");
    let det = det_exact_rational(&q)?.exact.expect("exact engine returns a rational");
    let scaled = BigRational::from_integer(num_traits::pow(d.clone(), n)) * &det;
    if !scaled.is_integer() || scaled.is_negative() {
        return Err(RationalityError::NotAnInteger(scaled));
    }
    Ok(Integrality { n, r, offset, m, d, det, value: scaled.to_integer() })
}

#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub m: usize,
    pub d: BigInt,
    /// `D_m > base^m`.
    pub exceeds: bool,
    /// `log D_m / m`.
    pub rate: Ball,
    pub max_q: BigInt,
    /// `max_{k <= m} q_k > m log(base)`, `None` when not certified either way.
    pub max_q_exceeds: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub series: String,
    pub base: BigRational,
    pub rows: Vec<GrowthRow>,
    /// The running maximum of `q_k` increases at every step.
    pub max_q_strictly_increasing: bool,
    /// The rates are certified nondecreasing.
    pub rate_nondecreasing: bool,
}

impl GrowthReport {
    pub fn all_exceed(&self) -> bool {
        self.rows.iter().all(|r| r.exceeds)
    }
}

pub fn growth_verifier(ledger: &DenominatorLedger, base: &BigRational) -> Result<GrowthReport, RationalityError> {
    if ledger.len() < 3 {
        return Err(RationalityError::InvalidQuery("the ledger needs at least three entries".into()));
    }
    if !base.is_positive() {
        return Err(RationalityError::InvalidQuery("base must be positive".into()));
    }
    let log_base = Ball::from_rational(base, WORK_BITS).ln()?;
    let mut rows = Vec::with_capacity(ledger.len());
    let mut max_q = BigInt::zero();
    let mut strictly = true;
    for (i, (d, q)) in ledger.d.iter().zip(&ledger.q).enumerate() {
        let m = i + 2;
        if *q > max_q {
            max_q = q.clone();
        } else {
            strictly = false;
        }
        let exceeds = BigRational::from_integer(d.clone()) > num_traits::pow(base.clone(), m);
        let threshold = &log_base * &Ball::from_i64(m as i64, WORK_BITS);
        let mq = Ball::from_bigint(&max_q, WORK_BITS);
        let max_q_exceeds = if mq.certified_gt(&threshold) {
            Some(true)
        } else if mq.certified_lt(&threshold) {
            Some(false)
        } else {
            None
        };
        rows.push(GrowthRow { m, d: d.clone(), exceeds, rate: ledger.growth[i].clone(), max_q: max_q.clone(), max_q_exceeds });
    }
    let rate_nondecreasing = rows.windows(2).all(|w| !w[1].rate.certified_lt(&w[0].rate));
    Ok(GrowthReport {
        series: ledger.series.clone(),
        base: base.clone(),
        rows,
        max_q_strictly_increasing: strictly,
        rate_nondecreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ledger_indexing() {
        let l = rational_values(&SeriesSpec::pow2(), 0, 4).unwrap();
        assert_eq!(l.q_at(2), Some(&BigInt::from(3)));
        assert_eq!(l.d_at(4), Some(&BigInt::from(105)));
        assert_eq!(l.m_max(), 4);
        assert!(l.d_at(1).is_none());
    }

    #[test]
    fn short_ledgers_rejected() {
        let l = rational_values(&SeriesSpec::pow2(), 0, 2).unwrap();
        assert!(growth_verifier(&l, &BigRational::from_integer(2.into())).is_err());
    }
}
