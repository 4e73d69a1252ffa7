use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::dyadic::Dyadic;
use super::mag::Mag;
use super::NumericsError;

/// A real number enclosed by a midpoint and an absolute radius:
/// the represented value `x` satisfies `|x - mid| <= rad`.
///
/// Every ball carries the working precision (mantissa bits) that operations
/// on it round to. Binary operations use the larger of the two precisions.
#[derive(Clone, Debug)]
pub struct Ball {
    mid: Dyadic,
    rad: Mag,
    prec: u32,
}

/// Certified sign of a quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
    /// The enclosure contains zero; no sign can be claimed.
    ZeroUnresolved,
    /// Only produced by exact engines.
    ExactlyZero,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Positive => "positive",
            Sign::Negative => "negative",
            Sign::ZeroUnresolved => "zero_unresolved",
            Sign::ExactlyZero => "exactly_zero",
        }
    }

    pub fn is_resolved(self) -> bool {
        !matches!(self, Sign::ZeroUnresolved)
    }
}

/// Sign of a ball: positive iff `mid - rad > 0`, negative iff `mid + rad < 0`.
pub fn certify_sign(x: &Ball) -> Sign {
    if x.is_positive() {
        Sign::Positive
    } else if x.is_negative() {
        Sign::Negative
    } else {
        Sign::ZeroUnresolved
    }
}

/// Operation selector for [`ball_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallOp {
    Add,
    Sub,
    Mul,
    Div,
    /// `a^b`, where `b` must be an exact integer.
    PowInt,
    /// `log(a)`; `b` is ignored.
    Log,
    /// `exp(a)`; `b` is ignored.
    Exp,
}

/// Applies one of the supported operations to two balls.
pub fn ball_arith(a: &Ball, b: &Ball, op: BallOp) -> Result<Ball, NumericsError> {
    match op {
        BallOp::Add => Ok(a + b),
        BallOp::Sub => Ok(a - b),
        BallOp::Mul => Ok(a * b),
        BallOp::Div => a.div(b),
        BallOp::PowInt => {
            let k = b.exact_integer().ok_or(NumericsError::NonIntegerExponent)?;
            let k = i64::try_from(k).map_err(|_| NumericsError::NonIntegerExponent)?;
            a.powi(k)
        }
        BallOp::Log => a.ln(),
        BallOp::Exp => a.exp(),
    }
}

impl Ball {
    pub fn new(mid: Dyadic, rad: Mag, prec: u32) -> Ball {
        Ball { mid, rad, prec: prec.max(2) }
    }

    pub fn exact(mid: Dyadic, prec: u32) -> Ball {
        Ball::new(mid, Mag::ZERO, prec)
    }

    pub fn zero(prec: u32) -> Ball {
        Ball::exact(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Ball {
        Ball::from_i64(1, prec)
    }

    pub fn from_i64(x: i64, prec: u32) -> Ball {
        Ball::from_bigint(&BigInt::from(x), prec)
    }

    pub fn from_bigint(x: &BigInt, prec: u32) -> Ball {
        let (mid, err) = Dyadic::from_bigint(x.clone()).round(prec);
        Ball::new(mid, err, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Ball {
        if let Some(d) = Dyadic::from_rational_exact(q) {
            let (mid, err) = d.round(prec);
            return Ball::new(mid, err, prec);
        }
        let (mid, err) = Dyadic::div_rational(q.numer(), q.denom(), prec);
        Ball::new(mid, err, prec)
    }

    /// Ball `[lo, hi]` (endpoints in either order).
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Ball {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let sum = lo.add(hi).mul_2exp(-1);
        let (mid, err) = sum.round(prec);
        let half_width = Mag::from_dyadic_up(&hi.sub(lo).mul_2exp(-1));
        Ball::new(mid, half_width.add_up(err), prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32) -> Ball {
        self.prec = prec.max(2);
        self
    }

    /// Adds `err` to the radius.
    pub fn add_error(mut self, err: Mag) -> Ball {
        self.rad = self.rad.add_up(err);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// The midpoint as an integer, when the ball is an exact integer.
    pub fn exact_integer(&self) -> Option<BigInt> {
        if !self.is_exact() {
            return None;
        }
        let q = self.mid.to_rational();
        q.is_integer().then(|| q.to_integer())
    }

    /// `mid - rad`, exactly.
    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad.to_dyadic())
    }

    /// `mid + rad`, exactly.
    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad.to_dyadic())
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag_upper(&self) -> Mag {
        Mag::from_dyadic_up(&self.mid).add_up(self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball contains zero).
    pub fn mag_lower(&self) -> Mag {
        Mag::from_dyadic_down(&self.mid).sub_down(self.rad).unwrap_or(Mag::ZERO)
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    /// Exact membership test for a rational point.
    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let diff = (q - self.mid.to_rational()).abs();
        diff <= self.rad.to_dyadic().to_rational()
    }

    pub fn contains_dyadic(&self, x: &Dyadic) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    /// True iff the two enclosures share at least one point.
    pub fn overlaps(&self, other: &Ball) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// True iff `other` lies entirely inside `self`.
    pub fn contains_ball(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    /// Smallest ball (up to rounding) containing both inputs.
    pub fn union(&self, other: &Ball) -> Ball {
        let lo = core::cmp::min(self.lower(), other.lower());
        let hi = core::cmp::max(self.upper(), other.upper());
        Ball::from_endpoints(&lo, &hi, self.prec.max(other.prec))
    }

    /// Certified comparison: `Some` only when the enclosures are separated
    /// (or both are the same exact point).
    pub fn cmp_certified(&self, other: &Ball) -> Option<Ordering> {
        if self.upper() < other.lower() {
            Some(Ordering::Less)
        } else if self.lower() > other.upper() {
            Some(Ordering::Greater)
        } else if self.is_exact() && other.is_exact() && self.mid == other.mid {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn certified_lt(&self, other: &Ball) -> bool {
        self.cmp_certified(other) == Some(Ordering::Less)
    }

    pub fn certified_gt(&self, other: &Ball) -> bool {
        self.cmp_certified(other) == Some(Ordering::Greater)
    }

    pub fn mul_2exp(&self, k: i64) -> Ball {
        Ball::new(self.mid.mul_2exp(k), self.rad.mul_2exp(k), self.prec)
    }

    pub fn abs(&self) -> Ball {
        if self.mid.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Number of correct leading bits relative to the magnitude, `log2(|mid| / rad)`,
    /// or `None` for an exact ball.
    pub fn rel_accuracy_bits(&self) -> Option<i64> {
        if self.rad.is_zero() {
            return None;
        }
        let top = match self.mid.top() {
            Some(t) => t,
            None => return Some(i64::MIN),
        };
        let r = self.rad.log2_floor().unwrap_or(0) + 1;
        Some(top - 1 - r)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    fn rounded(sum: Dyadic, rad: Mag, prec: u32) -> Ball {
        let (mid, err) = sum.round(prec);
        Ball::new(mid, rad.add_up(err), prec)
    }

    fn add_impl(&self, other: &Ball, negate: bool) -> Ball {
        let prec = self.prec.max(other.prec);
        let rad = self.rad.add_up(other.rad);
        let b = if negate { other.mid.neg() } else { other.mid.clone() };
        match (self.mid.top(), b.top()) {
            (None, _) => Ball::rounded(b, rad, prec),
            (_, None) => Ball::rounded(self.mid.clone(), rad, prec),
            (Some(ta), Some(tb)) => {
                let window = i64::from(prec) + 64;
                if ta - tb > window {
                    Ball::rounded(self.mid.clone(), rad.add_up(Mag::from_dyadic_up(&b)), prec)
                } else if tb - ta > window {
                    Ball::rounded(b, rad.add_up(Mag::from_dyadic_up(&self.mid)), prec)
                } else {
                    Ball::rounded(self.mid.add(&b), rad, prec)
                }
            }
        }
    }

    fn mul_impl(&self, other: &Ball) -> Ball {
        let prec = self.prec.max(other.prec);
        let am = Mag::from_dyadic_up(&self.mid);
        let bm = Mag::from_dyadic_up(&other.mid);
        let rad = am.mul_up(other.rad).add_up(bm.mul_up(self.rad)).add_up(self.rad.mul_up(other.rad));
        Ball::rounded(self.mid.mul(&other.mid), rad, prec)
    }

    pub fn sqr(&self) -> Ball {
        self * self
    }

    /// Certified quotient; fails when the divisor ball contains zero.
    pub fn div(&self, other: &Ball) -> Result<Ball, NumericsError> {
        let prec = self.prec.max(other.prec);
        let bm_lo = Mag::from_dyadic_down(&other.mid);
        let denom_lo = bm_lo.sub_down(other.rad).ok_or(NumericsError::DivisorContainsZero)?;
        let bm_up = Mag::from_dyadic_up(&other.mid);
        let am_up = Mag::from_dyadic_up(&self.mid);
        // |a/b - am/bm| <= (|am| br + |bm| ar) / (|bm| (|bm| - br))
        let numer = am_up.mul_up(other.rad).add_up(bm_up.mul_up(self.rad));
        let prop = if numer.is_zero() { Mag::ZERO } else { numer.div_up(bm_lo.mul_down(denom_lo)) };
        if self.mid.is_zero() {
            return Ok(Ball::new(Dyadic::zero(), prop, prec));
        }
        let (q, err) = quotient(&self.mid, &other.mid, prec);
        Ok(Ball::new(q, prop.add_up(err), prec))
    }

    pub fn recip(&self) -> Result<Ball, NumericsError> {
        Ball::one(self.prec).div(self)
    }

    pub fn div_i64(&self, k: i64) -> Result<Ball, NumericsError> {
        self.div(&Ball::from_i64(k, self.prec))
    }

    /// Integer power by repeated squaring; negative exponents need a
    /// zero-free ball.
    pub fn powi(&self, k: i64) -> Result<Ball, NumericsError> {
        if k < 0 {
            return self.powi(-k)?.recip();
        }
        let mut result = Ball::one(self.prec);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        Ok(result)
    }

    pub fn ln(&self) -> Result<Ball, NumericsError> {
        super::elementary::ln_ball(self)
    }

    pub fn exp(&self) -> Result<Ball, NumericsError> {
        super::elementary::exp_ball(self)
    }

    /// `self^e = exp(e ln self)` for a positive base.
    pub fn pow(&self, e: &Ball) -> Result<Ball, NumericsError> {
        (e * &self.ln()?).exp()
    }
}

/// `a / b` rounded to `prec` bits, with an error bound.
fn quotient(a: &Dyadic, b: &Dyadic, prec: u32) -> (Dyadic, Mag) {
    let (q, err) = Dyadic::div_rational(a.mantissa(), b.mantissa(), prec);
    let shift = a.exponent() - b.exponent();
    (q.mul_2exp(shift), err.mul_2exp(shift))
}

impl Neg for &Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::new(self.mid.neg(), self.rad, self.prec)
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                let f: fn(&Ball, &Ball) -> Ball = $body;
                f(self, rhs)
            }
        }
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $method(self, rhs: Ball) -> Ball {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Ball> for Ball {
            type Output = Ball;
            fn $method(self, rhs: &Ball) -> Ball {
                (&self).$method(rhs)
            }
        }
        impl $tr<Ball> for &Ball {
            type Output = Ball;
            fn $method(self, rhs: Ball) -> Ball {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl core::fmt::Display for Ball {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let (m, r) = super::decimal::format_ball(self);
        write!(f, "{m} +/- {r}")
    }
}
