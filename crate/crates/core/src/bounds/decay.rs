use alloc::string::String;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_rational::BigRational;

use super::BoundsError;
use crate::hankel::{certify_positive, compute_det, Certificate, EngineChoice, HankelError, HankelQuery};
use crate::numerics::{Ball, PrecisionChoice};
use crate::sequences::{minimal_indices, SeriesSpec};

const WORK_BITS: u32 = 256;

/// Comparison mode for `log H_n^(r) < -c n^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecayMode {
    /// `c = log(2 - epsilon)`.
    ZetaEpsilon(BigRational),
    GeneralC(BigRational),
}

impl DecayMode {
    fn constant(&self, prec: u32) -> Result<Ball, BoundsError> {
        match self {
            DecayMode::ZetaEpsilon(eps) => {
                let base = BigRational::from_integer(2.into()) - eps;
                Ok(Ball::from_rational(&base, prec).ln()?)
            }
            DecayMode::GeneralC(c) => Ok(Ball::from_rational(c, prec)),
        }
    }

    pub fn epsilon(&self) -> Option<&BigRational> {
        match self {
            DecayMode::ZetaEpsilon(e) => Some(e),
            DecayMode::GeneralC(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Holds,
    Fails,
    /// The balls overlap or the determinant could not be certified.
    Unresolved,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Holds => "holds",
            RowStatus::Fails => "fails",
            RowStatus::Unresolved => "unresolved",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecayRow {
    pub n: usize,
    pub log_h: Option<Ball>,
    pub rhs: Ball,
    pub status: RowStatus,
    pub bits_used: u32,
}

impl DecayRow {
    pub fn holds(&self) -> bool {
        self.status == RowStatus::Holds
    }
}

#[derive(Clone, Debug)]
pub struct DecayReport {
    pub series: String,
    pub r: i64,
    pub rows: Vec<DecayRow>,
    pub c_used: Ball,
    pub epsilon: Option<BigRational>,
    /// `-log M` when `N = 1`, `-2(alpha - 1) log N` otherwise.
    pub asymptotic_constant: Option<Ball>,
}

impl DecayReport {
    /// Collects independently computed rows into a report, sorted by `n`.
    pub fn assemble(spec: &SeriesSpec, r: i64, mode: &DecayMode, mut rows: Vec<DecayRow>) -> Result<Self, BoundsError> {
        rows.sort_by_key(|row| row.n);
        Ok(DecayReport {
            series: spec.name().into(),
            r,
            rows,
            c_used: mode.constant(WORK_BITS)?,
            epsilon: mode.epsilon().cloned(),
            asymptotic_constant: asymptotic_constant(spec)?,
        })
    }

    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(DecayRow::holds)
    }
}

fn asymptotic_constant(spec: &SeriesSpec) -> Result<Option<Ball>, BoundsError> {
    if !spec.is_dirichlet() {
        return Ok(None);
    }
    let mi = minimal_indices(spec, 1 << 20)?;
    let value = match &mi.alpha {
        None => -Ball::from_i64(mi.m as i64, WORK_BITS).ln()?,
        Some(alpha) => {
            let ln_n = Ball::from_i64(mi.n as i64, WORK_BITS).ln()?;
            let excess = alpha - &Ball::one(WORK_BITS);
            -(&excess * &ln_n).mul_2exp(1)
        }
    };
    Ok(Some(value))
}

/// One row of the decay check: `log H_n^(r)` against `-c n^2`.
pub fn decay_row(
    spec: &SeriesSpec,
    n: usize,
    r: i64,
    mode: &DecayMode,
    precision: PrecisionChoice,
) -> Result<DecayRow, BoundsError> {
    let c = mode.constant(WORK_BITS)?;
    let rhs = -(&c * &Ball::from_i64((n * n) as i64, WORK_BITS));
    let q = HankelQuery::new(spec, n, r)?;
    let (value, bits_used) = match compute_det(&q, EngineChoice::Auto, &precision.policy_for(n)) {
        Ok(res) => (res.value, res.bits_used),
        Err(HankelError::PrecisionExhausted(last)) => {
            return Ok(DecayRow { n, log_h: None, rhs, status: RowStatus::Unresolved, bits_used: last.bits_used })
        }
        Err(e) => return Err(e.into()),
    };
    let log_h = value.ln().ok();
    let status = match &log_h {
        Some(l) if l.certified_lt(&rhs) => RowStatus::Holds,
        Some(l) if l.certified_gt(&rhs) => RowStatus::Fails,
        _ => RowStatus::Unresolved,
    };
    Ok(DecayRow { n, log_h, rhs, status, bits_used })
}

/// Rejects degenerate series, empty ranges and sizes without a positivity
/// certificate.
pub fn check_decay_preconditions(spec: &SeriesSpec, n_range: RangeInclusive<usize>, r: i64) -> Result<(), BoundsError> {
    if spec.is_degenerate() {
        return Err(BoundsError::Degenerate(spec.name().into()));
    }
    if n_range.is_empty() || *n_range.start() == 0 {
        return Err(BoundsError::InvalidQuery("empty size range".into()));
    }
    if spec.is_dirichlet() {
        for n in n_range {
            if !matches!(certify_positive(&HankelQuery::new(spec, n, r)?), Certificate::Positive { .. }) {
                return Err(BoundsError::NoPositivity(spec.name().into()));
            }
        }
    }
    Ok(())
}

/// Checks `log H_n^(r) < -c n^2` for each `n` in the range.
pub fn verify_quadratic_decay(
    spec: &SeriesSpec,
    n_range: RangeInclusive<usize>,
    r: i64,
    mode: &DecayMode,
    precision: PrecisionChoice,
) -> Result<DecayReport, BoundsError> {
    check_decay_preconditions(spec, n_range.clone(), r)?;
    let rows = n_range.map(|n| decay_row(spec, n, r, mode, precision)).collect::<Result<Vec<_>, _>>()?;
    DecayReport::assemble(spec, r, mode, rows)
}
