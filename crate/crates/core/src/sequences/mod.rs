//! Ordinary Dirichlet series and explicit sequences.
//!
//! A [`SeriesSpec`] is a value `h(k)` defined for integers `k >= s0`. Most
//! specs are Dirichlet series `F(s) = sum f(n) n^-s` with nonnegative
//! rational coefficients; a few are explicit sequences such as `(k-2)!`.

mod ratio;
mod zeta;

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numerics::{Ball, Dyadic, Mag, NumericsError};

pub use ratio::{
    calibrate_ratio_bounds, minimal_indices, ratio_limit_statistic, EnvelopeCase, MinimalIndices,
    RatioEnvelope,
};
pub use zeta::{bernoulli_even, ZetaEvaluator};

use zeta::Exponent;

/// Largest direct-summation cutoff used for oracle-defined coefficients.
const MAX_DIRECT_TERMS: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("tail integral diverges: s must exceed kappa + 1")]
    TailDiverges,
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("fewer than two nonzero coefficients")]
    FewerThanTwoNonzero,
    #[error("series {0} is not a Dirichlet series")]
    NotDirichletKind(String),
    #[error("series {0} has no exact rational values")]
    NotRationalSeries(String),
    #[error("argument {k} is outside the domain of {name}")]
    OutOfDomain { name: String, k: i64 },
    #[error("no envelope constant fits the verified range")]
    EnvelopeViolated,
    #[error("invalid series: {0}")]
    Invalid(String),
    #[error("unknown series: {0}")]
    Unknown(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Classification of a spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Dirichlet,
    ExplicitSequence,
    RationalClosedForm,
}

impl SeriesKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesKind::Dirichlet => "dirichlet",
            SeriesKind::ExplicitSequence => "explicit_sequence",
            SeriesKind::RationalClosedForm => "rational_closed_form",
        }
    }
}

/// Growth bound `f(n) <= C n^kappa` on the coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailBound {
    pub c: BigRational,
    pub kappa: BigRational,
}

impl TailBound {
    pub fn new(c: BigRational, kappa: BigRational) -> Self {
        TailBound { c, kappa }
    }

    fn unit() -> Self {
        TailBound { c: BigRational::one(), kappa: BigRational::zero() }
    }
}

/// What is known about the set of `n` with `f(n) > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    /// Declared finite, listed in increasing order.
    Finite(Vec<u64>),
    /// Declared infinite.
    Infinite,
    /// Listed up to a horizon; beyond it only the tail bound is known.
    Unknown { horizon: u64 },
}

type CoeffFn = dyn Fn(u64) -> BigRational + Send + Sync;

#[derive(Clone)]
enum Source {
    /// `sum_{n >= start} n^-s`.
    Zeta { start: u64 },
    /// `h(k) = zeta(a k + b)`.
    ZetaAp { a: u32, b: u32 },
    /// `f(n) = 1` iff `n` is a power of two.
    Pow2,
    /// Explicitly listed coefficients.
    Listed { coeffs: Vec<(u64, BigRational)>, horizon: u64, finite: bool },
    /// Coefficient oracle, summed directly with an integral tail bound.
    Oracle(Arc<CoeffFn>),
    /// `h(k) = (k-2)!`.
    Factorial,
    /// `h(first + i) = values[i]`.
    Explicit { first: i64, values: Vec<BigRational> },
    /// Values requested as a window starting at `k0` are scaled by
    /// `1 + delta k0`, so windows at different offsets disagree.
    Tampered { inner: Box<SeriesSpec>, delta: BigRational },
}

/// An ordinary Dirichlet series or an explicit sequence.
#[derive(Clone)]
pub struct SeriesSpec {
    name: String,
    source: Source,
    s0: BigRational,
    tail: TailBound,
}

impl fmt::Debug for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesSpec")
            .field("name", &self.name)
            .field("kind", &self.kind())
            .field("s0", &self.s0)
            .finish()
    }
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Names accepted by [`SeriesSpec::from_catalog`].
pub const CATALOG: &[&str] = &["zeta", "zeta_ap(a,b)", "zeta_minus_1", "pow2", "geo2", "factorial_seq"];

impl SeriesSpec {
    /// The Riemann zeta function at integers `k >= 2`.
    pub fn zeta() -> Self {
        SeriesSpec { name: "zeta".into(), source: Source::Zeta { start: 1 }, s0: int(2), tail: TailBound::unit() }
    }

    /// `zeta(s) - 1`: coefficients `f(1) = 0`, `f(n) = 1` otherwise.
    pub fn zeta_minus_1() -> Self {
        SeriesSpec {
            name: "zeta_minus_1".into(),
            source: Source::Zeta { start: 2 },
            s0: int(2),
            tail: TailBound::unit(),
        }
    }

    /// `h(k) = zeta(a k + b)`, the Dirichlet series with `f(m^a) = m^-b`.
    pub fn zeta_ap(a: u32, b: u32) -> Result<Self, SeriesError> {
        if a == 0 || b == 0 {
            return Err(SeriesError::Invalid("zeta_ap needs positive a and b".into()));
        }
        // a k + b >= 2
        let s0 = Integer::div_ceil(&(2 - i64::from(b)), &i64::from(a));
        Ok(SeriesSpec {
            name: format!("zeta_ap({a},{b})"),
            source: Source::ZetaAp { a, b },
            s0: int(s0),
            tail: TailBound::new(BigRational::one(), -BigRational::new(BigInt::from(b), BigInt::from(a))),
        })
    }

    /// `F(s) = sum_j 2^(-js) = 2^s / (2^s - 1)`.
    pub fn pow2() -> Self {
        SeriesSpec { name: "pow2".into(), source: Source::Pow2, s0: int(1), tail: TailBound::unit() }
    }

    /// `h(k) = 1 + 2^-k`: coefficients `f(1) = f(2) = 1` and nothing else.
    pub fn geo2() -> Self {
        SeriesSpec {
            name: "geo2".into(),
            source: Source::Listed {
                coeffs: alloc::vec![(1, BigRational::one()), (2, BigRational::one())],
                horizon: 2,
                finite: true,
            },
            s0: int(0),
            tail: TailBound::new(BigRational::zero(), BigRational::zero()),
        }
    }

    /// `h(k) = (k-2)!` for `k >= 2`.
    pub fn factorial_seq() -> Self {
        SeriesSpec { name: "factorial_seq".into(), source: Source::Factorial, s0: int(2), tail: TailBound::unit() }
    }

    /// Dirichlet series with explicitly listed coefficients. Unlisted
    /// `n <= horizon` have `f(n) = 0`; beyond the horizon the coefficients
    /// are zero when `finite`, and otherwise only bounded by `tail`.
    pub fn listed(
        name: &str,
        coeffs: Vec<(u64, BigRational)>,
        horizon: Option<u64>,
        finite: bool,
        s0: BigRational,
        tail: TailBound,
    ) -> Result<Self, SeriesError> {
        let mut coeffs: Vec<(u64, BigRational)> = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        coeffs.sort_by_key(|(n, _)| *n);
        for w in coeffs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(SeriesError::Invalid(format!("coefficient {} listed twice", w[0].0)));
            }
        }
        if let Some((n, _)) = coeffs.iter().find(|(n, c)| *n == 0 || c.is_negative()) {
            return Err(SeriesError::Invalid(format!("coefficient at n={n} must have n >= 1 and f(n) >= 0")));
        }
        if tail.c.is_negative() {
            return Err(SeriesError::Invalid("tail constant C must be nonnegative".into()));
        }
        let max_listed = coeffs.last().map(|(n, _)| *n).unwrap_or(0);
        let horizon = horizon.unwrap_or(max_listed).max(max_listed);
        let spec = SeriesSpec {
            name: name.to_string(),
            source: Source::Listed { coeffs, horizon, finite },
            s0,
            tail,
        };
        spec.check_tail_bound(horizon.min(4096))?;
        Ok(spec)
    }

    /// Dirichlet series from a coefficient oracle with growth bound `tail`.
    /// The oracle must be pure and return nonnegative values.
    pub fn from_oracle<F>(name: &str, coeff: F, s0: BigRational, tail: TailBound) -> Result<Self, SeriesError>
    where
        F: Fn(u64) -> BigRational + Send + Sync + 'static,
    {
        let spec = SeriesSpec { name: name.to_string(), source: Source::Oracle(Arc::new(coeff)), s0, tail };
        spec.check_tail_bound(256)?;
        Ok(spec)
    }

    /// Explicit sequence `h(first), h(first + 1), ...` (finitely many values).
    pub fn explicit(name: &str, first: i64, values: Vec<BigRational>) -> Self {
        SeriesSpec {
            name: name.to_string(),
            source: Source::Explicit { first, values },
            s0: int(first),
            tail: TailBound::unit(),
        }
    }

    /// Fault-injection wrapper: a window of values starting at `k0` is
    /// scaled by `1 + delta k0`.
    pub fn tampered(inner: SeriesSpec, delta: BigRational) -> Self {
        SeriesSpec {
            name: format!("{}+tampered", inner.name),
            s0: inner.s0.clone(),
            tail: inner.tail.clone(),
            source: Source::Tampered { inner: Box::new(inner), delta },
        }
    }

    /// Looks up a catalog name such as `zeta` or `zeta_ap(2,1)`.
    pub fn from_catalog(name: &str) -> Result<Self, SeriesError> {
        let trimmed: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        match trimmed.as_str() {
            "zeta" => return Ok(SeriesSpec::zeta()),
            "zeta_minus_1" => return Ok(SeriesSpec::zeta_minus_1()),
            "pow2" => return Ok(SeriesSpec::pow2()),
            "geo2" => return Ok(SeriesSpec::geo2()),
            "factorial_seq" => return Ok(SeriesSpec::factorial_seq()),
            _ => {}
        }
        if let Some(args) = trimmed.strip_prefix("zeta_ap(").and_then(|r| r.strip_suffix(')')) {
            let mut parts = args.split(',');
            let a = parts.next().and_then(|x| x.parse::<u32>().ok());
            let b = parts.next().and_then(|x| x.parse::<u32>().ok());
            if let (Some(a), Some(b), None) = (a, b, parts.next()) {
                return SeriesSpec::zeta_ap(a, b);
            }
            return Err(SeriesError::Invalid(format!("cannot parse {name}")));
        }
        Err(SeriesError::Unknown(name.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn s0(&self) -> &BigRational {
        &self.s0
    }

    pub fn tail_bound(&self) -> &TailBound {
        &self.tail
    }

    /// Smallest admissible Hankel offset, `ceil(s0) - 2`.
    pub fn min_offset(&self) -> i64 {
        self.s0.ceil().to_integer().to_i64().unwrap_or(i64::MAX) - 2
    }

    /// Smallest integer argument at which `h` is defined.
    pub fn first_argument(&self) -> i64 {
        self.min_offset() + 2
    }

    pub fn kind(&self) -> SeriesKind {
        match &self.source {
            Source::Factorial | Source::Explicit { .. } => SeriesKind::ExplicitSequence,
            Source::Pow2 | Source::Listed { finite: true, .. } => SeriesKind::RationalClosedForm,
            Source::Tampered { inner, .. } => inner.kind(),
            _ => SeriesKind::Dirichlet,
        }
    }

    /// Whether the spec has Dirichlet coefficients `f(n)`.
    pub fn is_dirichlet(&self) -> bool {
        match &self.source {
            Source::Factorial | Source::Explicit { .. } => false,
            Source::Tampered { inner, .. } => inner.is_dirichlet(),
            _ => true,
        }
    }

    /// Coefficient `f(n)`, for Dirichlet specs.
    pub fn coeff(&self, n: u64) -> Option<BigRational> {
        if n == 0 {
            return Some(BigRational::zero());
        }
        Some(match &self.source {
            Source::Zeta { start } => {
                if n >= *start {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
            Source::ZetaAp { a, b } => match exact_root(n, *a) {
                Some(m) => BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(m), *b as usize)),
                None => BigRational::zero(),
            },
            Source::Pow2 => {
                if n.is_power_of_two() {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }
            Source::Listed { coeffs, .. } => match coeffs.binary_search_by_key(&n, |(m, _)| *m) {
                Ok(i) => coeffs[i].1.clone(),
                Err(_) => BigRational::zero(),
            },
            Source::Oracle(f) => f(n),
            Source::Factorial | Source::Explicit { .. } => return None,
            Source::Tampered { inner, .. } => return inner.coeff(n),
        })
    }

    pub fn support(&self) -> Option<Support> {
        Some(match &self.source {
            Source::Listed { coeffs, finite: true, .. } => Support::Finite(coeffs.iter().map(|(n, _)| *n).collect()),
            Source::Listed { horizon, finite: false, .. } => {
                if self.tail.c.is_zero() {
                    Support::Finite(self.listed_support())
                } else {
                    Support::Unknown { horizon: *horizon }
                }
            }
            Source::Zeta { .. } | Source::ZetaAp { .. } | Source::Pow2 => Support::Infinite,
            Source::Oracle(_) => {
                if self.tail.c.is_zero() {
                    Support::Finite(Vec::new())
                } else {
                    Support::Unknown { horizon: 0 }
                }
            }
            Source::Factorial | Source::Explicit { .. } => return None,
            Source::Tampered { inner, .. } => return inner.support(),
        })
    }

    fn listed_support(&self) -> Vec<u64> {
        match &self.source {
            Source::Listed { coeffs, .. } => coeffs.iter().map(|(n, _)| *n).collect(),
            _ => Vec::new(),
        }
    }

    /// Whether the support is declared (or bounded to be) finite.
    pub fn is_degenerate(&self) -> bool {
        matches!(self.support(), Some(Support::Finite(_)))
    }

    /// The first `count` support points that are `<= limit`, in increasing
    /// order (fewer if the support runs out or the limit is reached).
    pub fn first_support(&self, count: usize, limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        match &self.source {
            Source::Pow2 => {
                let mut p = 1u64;
                while out.len() < count && p <= limit {
                    out.push(p);
                    match p.checked_mul(2) {
                        Some(q) => p = q,
                        None => break,
                    }
                }
            }
            Source::ZetaAp { a, .. } => {
                let mut m = 1u64;
                while out.len() < count {
                    match m.checked_pow(*a) {
                        Some(p) if p <= limit => out.push(p),
                        _ => break,
                    }
                    m += 1;
                }
            }
            Source::Listed { coeffs, .. } => {
                out.extend(coeffs.iter().map(|(n, _)| *n).filter(|n| *n <= limit).take(count));
            }
            Source::Tampered { inner, .. } => return inner.first_support(count, limit),
            Source::Factorial | Source::Explicit { .. } => {}
            Source::Zeta { .. } | Source::Oracle(_) => {
                let mut n = 1u64;
                while out.len() < count && n <= limit {
                    if self.coeff(n).is_some_and(|c| c.is_positive()) {
                        out.push(n);
                    }
                    n += 1;
                }
            }
        }
        out
    }

    /// Checks `0 <= f(n) <= C n^kappa` for `n <= upto`.
    fn check_tail_bound(&self, upto: u64) -> Result<(), SeriesError> {
        let support: Vec<u64> = match &self.source {
            Source::Listed { coeffs, .. } => coeffs.iter().map(|(n, _)| *n).collect(),
            _ => (1..=upto).collect(),
        };
        for n in support {
            let c = self.coeff(n).unwrap_or_else(BigRational::zero);
            if c.is_negative() {
                return Err(SeriesError::Invalid(format!("negative coefficient at n={n}")));
            }
            if c.is_zero() {
                continue;
            }
            if self.tail.c.is_zero() {
                if matches!(&self.source, Source::Listed { .. }) {
                    continue;
                }
                return Err(SeriesError::Invalid(format!("f({n}) > 0 exceeds tail bound C = 0")));
            }
            // f(n) <= C n^kappa, compared in floating point with a small slack
            let lhs = c.to_f64().unwrap_or(f64::INFINITY);
            let rhs = self.tail.c.to_f64().unwrap_or(0.0) * libm::pow(n as f64, self.tail.kappa.to_f64().unwrap_or(0.0));
            if lhs > rhs * (1.0 + 1e-9) {
                return Err(SeriesError::Invalid(format!("f({n}) exceeds the declared tail bound")));
            }
        }
        Ok(())
    }

    fn check_domain(&self, k: i64) -> Result<(), SeriesError> {
        if int(k) < self.s0 {
            return Err(SeriesError::OutOfDomain { name: self.name.clone(), k });
        }
        if let Source::Explicit { first, values } = &self.source {
            if k < *first || k - first >= values.len() as i64 {
                return Err(SeriesError::OutOfDomain { name: self.name.clone(), k });
            }
        }
        Ok(())
    }

    /// Exact value `h(k)` when the spec has a rational closed form.
    pub fn exact_value(&self, k: i64) -> Option<BigRational> {
        if self.check_domain(k).is_err() {
            return None;
        }
        match &self.source {
            Source::Pow2 => {
                let p = BigInt::one() << usize::try_from(k).ok()?;
                Some(BigRational::new(p.clone(), p - BigInt::one()))
            }
            Source::Listed { coeffs, finite, .. } if *finite || self.tail.c.is_zero() => Some(
                coeffs
                    .iter()
                    .map(|(n, c)| c * rational_pow(&BigRational::from_integer(BigInt::from(*n)), -k))
                    .fold(BigRational::zero(), |a, b| a + b),
            ),
            Source::Factorial => {
                let mut f = BigInt::one();
                for i in 2..=(k - 2) {
                    f *= BigInt::from(i);
                }
                Some(BigRational::from_integer(f))
            }
            Source::Explicit { first, values } => Some(values[(k - first) as usize].clone()),
            Source::Tampered { inner, .. } => inner.exact_value(k),
            _ => None,
        }
    }

    /// Whether [`SeriesSpec::exact_value`] is available.
    pub fn has_exact_values(&self) -> bool {
        self.exact_value(self.first_argument()).is_some()
    }

    /// Certified `h(k)` to about `prec` bits.
    pub fn eval(&self, k: i64, prec: u32) -> Result<Ball, SeriesError> {
        let mut ev = ZetaEvaluator::new();
        self.eval_with(&mut ev, k, prec)
    }

    /// Certified `h(start), ..., h(start + len - 1)`, sharing work between
    /// the values.
    pub fn eval_range(&self, start: i64, len: usize, prec: u32) -> Result<Vec<Ball>, SeriesError> {
        if let Source::Tampered { inner, delta } = &self.source {
            let scale = BigRational::one() + delta * int(start);
            let factor = Ball::from_rational(&scale, prec + 16);
            return inner
                .eval_range(start, len, prec)?
                .into_iter()
                .map(|v| Ok(&v * &factor))
                .collect();
        }
        let mut ev = ZetaEvaluator::new();
        (0..len as i64).map(|i| self.eval_with(&mut ev, start + i, prec)).collect()
    }

    fn eval_with(&self, ev: &mut ZetaEvaluator, k: i64, prec: u32) -> Result<Ball, SeriesError> {
        self.check_domain(k)?;
        if let Some(q) = self.exact_value(k) {
            return Ok(Ball::from_rational(&q, prec));
        }
        match &self.source {
            Source::Zeta { start } => Ok(ev.eval(&Exponent::Int(k), *start, prec)?),
            Source::ZetaAp { a, b } => Ok(ev.eval(&Exponent::Int(i64::from(*a) * k + i64::from(*b)), 1, prec)?),
            Source::Tampered { inner, .. } => inner.eval_with(ev, k, prec),
            _ => self.direct_sum(&Exponent::Int(k), prec),
        }
    }

    /// Certified `F(s)` at a real argument. An exact integer ball is
    /// evaluated at that integer; otherwise the hull of the values at both
    /// endpoints is returned, which is valid since `F` is decreasing.
    pub fn eval_arg(&self, s: &Ball, prec: u32) -> Result<Ball, SeriesError> {
        if let Some(k) = s.exact_integer().and_then(|k| k.to_i64()) {
            return self.eval(k, prec);
        }
        if !self.is_dirichlet() {
            return Err(SeriesError::NotDirichletKind(self.name.clone()));
        }
        if s.lower().to_rational() < self.s0 {
            return Err(SeriesError::OutOfDomain {
                name: self.name.clone(),
                k: s.lower().floor_int().to_i64().unwrap_or(i64::MIN),
            });
        }
        let lo = self.eval_real(&s.upper(), prec)?;
        let hi = self.eval_real(&s.lower(), prec)?;
        Ok(lo.union(&hi))
    }

    fn eval_real(&self, s: &Dyadic, prec: u32) -> Result<Ball, SeriesError> {
        let mut ev = ZetaEvaluator::new();
        match &self.source {
            Source::Zeta { start } => Ok(ev.eval(&Exponent::Real(s.clone()), *start, prec)?),
            Source::ZetaAp { a, b } => {
                let arg = s.mul(&Dyadic::from_i64(i64::from(*a))).add(&Dyadic::from_i64(i64::from(*b)));
                Ok(ev.eval(&Exponent::Real(arg), 1, prec)?)
            }
            Source::Pow2 => {
                // 2^s / (2^s - 1)
                let wp = prec + 32;
                let ln2 = crate::numerics::elementary::ln2(wp);
                let p = (&Ball::exact(s.clone(), wp) * &ln2).exp()?;
                let v = p.div(&(&p - &Ball::one(wp)))?;
                Ok(v.with_prec(prec))
            }
            Source::Tampered { inner, .. } => inner.eval_real(s, prec),
            _ => self.direct_sum(&Exponent::Real(s.clone()), prec),
        }
    }

    /// `sum f(n) n^-s` summed directly, with the tail beyond the cutoff
    /// bounded by `C T^(kappa+1-s) / (s-kappa-1)`.
    fn direct_sum(&self, s: &Exponent, prec: u32) -> Result<Ball, SeriesError> {
        let wp = prec + 32;
        let (terms, cutoff, tail_needed): (Vec<(u64, BigRational)>, u64, bool) = match &self.source {
            Source::Listed { coeffs, horizon, finite } => {
                (coeffs.clone(), *horizon, !*finite && !self.tail.c.is_zero())
            }
            Source::Oracle(f) => {
                let t = self.choose_cutoff(s, prec)?;
                ((1..=t).map(|n| (n, f(n))).filter(|(_, c)| !c.is_zero()).collect(), t, !self.tail.c.is_zero())
            }
            _ => return Err(SeriesError::NotDirichletKind(self.name.clone())),
        };
        let mut sum = Ball::zero(wp);
        for (n, c) in &terms {
            let p = s.neg_power(*n, wp)?;
            sum = &sum + &(&Ball::from_rational(c, wp) * &p);
        }
        if tail_needed {
            let width = self.tail_upper(s, cutoff, wp)?;
            sum = zeta::add_interval(sum, width);
        }
        Ok(sum.with_prec(prec))
    }

    fn tail_exponent(&self, s: &Exponent, wp: u32) -> Result<Ball, SeriesError> {
        // s - kappa - 1
        let sb = match s {
            Exponent::Int(k) => Ball::from_i64(*k, wp),
            Exponent::Real(d) => Ball::exact(d.clone(), wp),
        };
        let e = &sb - &Ball::from_rational(&(&self.tail.kappa + BigRational::one()), wp);
        if !e.is_positive() {
            return Err(SeriesError::TailDiverges);
        }
        Ok(e)
    }

    /// Upper bound on `sum_{n > cutoff} C n^(kappa - s)`.
    fn tail_upper(&self, s: &Exponent, cutoff: u64, wp: u32) -> Result<Mag, SeriesError> {
        let e = self.tail_exponent(s, wp)?;
        let t = Ball::from_i64(cutoff.max(1) as i64, wp);
        let t_pow = (-(&e * &t.ln()?)).exp()?;
        let bound = (&Ball::from_rational(&self.tail.c, wp) * &t_pow).div(&e)?;
        Ok(bound.mag_upper())
    }

    fn choose_cutoff(&self, s: &Exponent, prec: u32) -> Result<u64, SeriesError> {
        let e = self.tail_exponent(s, 64)?.to_f64();
        let c = self.tail.c.to_f64().unwrap_or(1.0).max(1e-300);
        let log2_t = (f64::from(prec) + libm::log2(c) - libm::log2(e)) / e;
        if log2_t.is_nan() || log2_t >= 16.0 {
            return Ok(MAX_DIRECT_TERMS);
        }
        Ok((libm::exp2(log2_t.max(0.0)) as u64 + 1).min(MAX_DIRECT_TERMS))
    }
}

/// `q^e` for an integer exponent of either sign.
pub(crate) fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(q.clone(), e.unsigned_abs() as usize);
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// `m` with `m^a = n`, if it exists.
fn exact_root(n: u64, a: u32) -> Option<u64> {
    if a == 1 {
        return Some(n);
    }
    let guess = libm::round(libm::pow(n as f64, 1.0 / f64::from(a))) as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|m| m.checked_pow(a) == Some(n))
}
