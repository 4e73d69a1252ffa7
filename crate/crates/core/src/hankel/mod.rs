//! Hankel determinants `H_n^(r)[h] = det(h(i + j + r))_{1 <= i,j <= n}`.
//!
//! Four engines share one result type: ball LU elimination, Dodgson
//! condensation, the positive tuple sum for Dirichlet series, and exact
//! fraction-free elimination over the rationals.

mod dodgson;
mod exact;
mod lu;
mod monien;
mod telescope;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::numerics::{certify_sign, Ball, NumericsError, PrecisionPolicy, Sign};
use crate::sequences::{SeriesError, SeriesSpec};

pub use dodgson::{det_dodgson, dodgson_table, DodgsonTable};
pub use exact::{det_bareiss, det_exact_rational, det_rational_values, exact_values};
pub use lu::det_lu;
pub use monien::{certify_positive, monien_sum, monien_term, Certificate, MonienSum};
pub use telescope::{telescoping_decomposition, Telescoping};

#[derive(Clone, Debug, thiserror::Error)]
pub enum HankelError {
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("Dodgson divisor contains zero")]
    DivisorContainsZero,
    #[error("series {0} has no exact rational values")]
    NotRationalSeries(String),
    #[error("series {0} is not a Dirichlet series")]
    NotDirichletKind(String),
    #[error("{0} index tuples exceed the enumeration limit")]
    TooManyTuples(u128),
    #[error("interior determinant H_{k}^({rho}) is not certified nonzero")]
    InteriorDeterminantUnresolved { k: usize, rho: i64 },
    #[error("precision exhausted at {} bits", .0.bits_used)]
    PrecisionExhausted(Box<DetResult>),
    #[error("engine unavailable: {0}")]
    EngineUnavailable(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// A request for `H_n^(r)` of a spec.
#[derive(Clone, Copy, Debug)]
pub struct HankelQuery<'a> {
    pub spec: &'a SeriesSpec,
    pub n: usize,
    pub r: i64,
}

impl<'a> HankelQuery<'a> {
    pub fn new(spec: &'a SeriesSpec, n: usize, r: i64) -> Result<Self, HankelError> {
        if n == 0 {
            return Err(HankelError::InvalidQuery("size must be at least 1".into()));
        }
        if r < spec.min_offset() {
            return Err(HankelError::InvalidQuery(format!(
                "offset {r} is below the minimum {} for {}",
                spec.min_offset(),
                spec.name()
            )));
        }
        Ok(HankelQuery { spec, n, r })
    }

    /// Argument of the top-left entry, `2 + r`.
    pub fn first_argument(&self) -> i64 {
        2 + self.r
    }

    /// Number of distinct entries, `2n - 1`.
    pub fn values_len(&self) -> usize {
        2 * self.n - 1
    }
}

/// A Hankel matrix stored through its `2n - 1` distinct entries, so that
/// `entry(i, j)` and `entry(j, i)` are the same value.
#[derive(Clone, Debug)]
pub struct HankelMatrix {
    n: usize,
    values: Vec<Ball>,
}

impl HankelMatrix {
    pub fn from_values(values: Vec<Ball>) -> Result<Self, HankelError> {
        if values.len().is_multiple_of(2) {
            return Err(HankelError::InvalidQuery("need an odd number of values".into()));
        }
        Ok(HankelMatrix { n: values.len().div_ceil(2), values })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at zero-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &Ball {
        &self.values[i + j]
    }

    pub fn values(&self) -> &[Ball] {
        &self.values
    }

    pub fn rows(&self) -> Vec<Vec<Ball>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j).clone()).collect()).collect()
    }
}

pub fn build_hankel(q: &HankelQuery<'_>, prec: u32) -> Result<HankelMatrix, HankelError> {
    let values = q.spec.eval_range(q.first_argument(), q.values_len(), prec)?;
    HankelMatrix::from_values(values)
}

/// Determinant engine identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Lu,
    Dodgson,
    Monien,
    Exact,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Lu => "lu",
            Engine::Dodgson => "dodgson",
            Engine::Monien => "monien",
            Engine::Exact => "exact",
        }
    }
}

/// Engine selection for [`compute_det`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineChoice {
    /// Exact when the spec has rational values, LU otherwise.
    Auto,
    Lu,
    Dodgson,
    Monien,
    Exact,
}

/// A certified determinant value.
#[derive(Clone, Debug)]
pub struct DetResult {
    pub value: Ball,
    pub sign: Sign,
    pub engine: Engine,
    /// Working precision of the final attempt; zero for exact engines.
    pub bits_used: u32,
    pub n: usize,
    pub r: i64,
    /// The exact value, from exact engines.
    pub exact: Option<BigRational>,
}

impl DetResult {
    pub(crate) fn from_ball(value: Ball, engine: Engine, bits: u32, n: usize, r: i64) -> Self {
        let sign = certify_sign(&value);
        DetResult { value, sign, engine, bits_used: bits, n, r, exact: None }
    }

    pub(crate) fn from_exact(q: BigRational, engine: Engine, n: usize, r: i64) -> Self {
        let sign = exact_sign(&q);
        let prec = 64 + q.numer().bits().max(q.denom().bits()) as u32;
        DetResult { value: Ball::from_rational(&q, prec), sign, engine, bits_used: 0, n, r, exact: Some(q) }
    }
}

pub(crate) fn exact_sign(q: &BigRational) -> Sign {
    if q.is_zero() {
        Sign::ExactlyZero
    } else if q.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

fn accurate(v: &Ball) -> bool {
    certify_sign(v).is_resolved() && v.rel_accuracy_bits().is_some_and(|b| b >= 53)
}

fn lu_ladder(q: &HankelQuery<'_>, rungs: &[u32]) -> Result<DetResult, HankelError> {
    let mut last = None;
    for &bits in rungs {
        let m = build_hankel(q, bits)?;
        let res = DetResult::from_ball(det_lu(&m.rows()), Engine::Lu, bits, q.n, q.r);
        if accurate(&res.value) {
            return Ok(res);
        }
        last = Some(res);
    }
    finish(last, rungs.len())
}

fn finish(last: Option<DetResult>, rungs: usize) -> Result<DetResult, HankelError> {
    let last = last.ok_or_else(|| HankelError::InvalidQuery("empty precision ladder".into()))?;
    if rungs == 1 {
        Ok(last)
    } else {
        Err(HankelError::PrecisionExhausted(Box::new(last)))
    }
}

/// Computes `H_n^(r)` with the chosen engine, escalating precision along the
/// policy's ladder until the sign is certified and at least 53 bits are
/// correct. With a single-rung policy the last attempt is returned as is.
pub fn compute_det(
    q: &HankelQuery<'_>,
    choice: EngineChoice,
    policy: &PrecisionPolicy,
) -> Result<DetResult, HankelError> {
    let rungs = policy.ladder();
    match choice {
        EngineChoice::Auto if q.spec.has_exact_values() => det_exact_rational(q),
        EngineChoice::Auto | EngineChoice::Lu => lu_ladder(q, &rungs),
        EngineChoice::Exact => det_exact_rational(q),
        EngineChoice::Monien => {
            let Some(crate::sequences::Support::Finite(points)) = q.spec.support() else {
                return Err(HankelError::EngineUnavailable(format!(
                    "the tuple sum of {} is only a lower bound",
                    q.spec.name()
                )));
            };
            let cutoff = points.last().copied().unwrap_or(1).max(q.n as u64);
            let sum = monien_sum(q, cutoff)?;
            Ok(DetResult::from_exact(sum.value, Engine::Monien, q.n, q.r))
        }
        EngineChoice::Dodgson => {
            let mut divisor_failures = 0;
            let mut last = None;
            for (i, &bits) in rungs.iter().enumerate() {
                match det_dodgson(q, bits) {
                    Ok(res) => {
                        if accurate(&res.value) {
                            return Ok(res);
                        }
                        last = Some(res);
                    }
                    Err(HankelError::DivisorContainsZero) => {
                        divisor_failures += 1;
                        if divisor_failures > 1 || i + 1 == rungs.len() {
                            return lu_ladder(q, &rungs[i..]);
                        }
                    }
                    Err(e) => return Err(e),
                }
            }
            finish(last, rungs.len())
        }
    }
}

/// `H_{n+1}^(r) H_{n-1}^(r+2) - H_n^(r) H_n^(r+2) + (H_n^(r+1))^2`, each
/// factor from ball LU. The result must contain zero.
pub fn check_dodgson_identity(spec: &SeriesSpec, n: usize, r: i64, prec: u32) -> Result<Ball, HankelError> {
    if n < 2 {
        return Err(HankelError::InvalidQuery("the identity is checked for n >= 2".into()));
    }
    let det = |k: usize, rho: i64| -> Result<Ball, HankelError> {
        let q = HankelQuery::new(spec, k, rho)?;
        Ok(det_lu(&build_hankel(&q, prec)?.rows()))
    };
    let lhs = &det(n + 1, r)? * &det(n - 1, r + 2)?;
    let rhs = &(&det(n, r)? * &det(n, r + 2)?) - &det(n, r + 1)?.sqr();
    Ok(&lhs - &rhs)
}

/// Exact version of [`check_dodgson_identity`]; the result must be zero.
pub fn check_dodgson_identity_exact(spec: &SeriesSpec, n: usize, r: i64) -> Result<BigRational, HankelError> {
    if n < 2 {
        return Err(HankelError::InvalidQuery("the identity is checked for n >= 2".into()));
    }
    let det = |k: usize, rho: i64| -> Result<BigRational, HankelError> {
        let q = HankelQuery::new(spec, k, rho)?;
        Ok(det_exact_rational(&q)?.exact.unwrap_or_else(BigRational::zero))
    };
    let lhs = det(n + 1, r)? * det(n - 1, r + 2)?;
    let h = det(n, r + 1)?;
    let rhs = det(n, r)? * det(n, r + 2)? - &h * &h;
    Ok(lhs - rhs)
}
