use core::cmp::Ordering;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mag::Mag;

/// An exact binary fraction `man * 2^exp`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Dyadic {
        if man.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { man, exp }
    }

    pub fn zero() -> Dyadic {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn from_i64(x: i64) -> Dyadic {
        Dyadic::new(BigInt::from(x), 0)
    }

    pub fn from_bigint(x: BigInt) -> Dyadic {
        Dyadic::new(x, 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            BigSign::Minus => -1,
            BigSign::NoSign => 0,
            BigSign::Plus => 1,
        }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Exponent of the leading bit plus one: `2^(top-1) <= |x| < 2^top`.
    pub fn top(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.man.bits() as i64)
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    pub fn mul_2exp(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let exp = self.exp.min(other.exp);
        let a = &self.man << (self.exp - exp) as usize;
        let b = &other.man << (other.exp - exp) as usize;
        Dyadic::new(a + b, exp)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &other.man, self.exp + other.exp)
    }

    /// Rounds to at most `prec` mantissa bits (nearest, ties upward) and
    /// returns the rounded value with an upper bound on the rounding error.
    pub fn round(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.man.bits();
        let prec = u64::from(prec.max(2));
        if bits <= prec {
            return (self.clone(), Mag::ZERO);
        }
        let shift = bits - prec;
        let half = BigInt::one() << (shift - 1) as usize;
        let man = (&self.man + half) >> shift as usize;
        let exp = self.exp + shift as i64;
        (Dyadic::new(man, exp), Mag::pow2(exp - 1))
    }

    /// Rounds toward negative infinity to at most `prec` bits.
    pub fn round_floor(&self, prec: u32) -> Dyadic {
        let bits = self.man.bits();
        let prec = u64::from(prec.max(2));
        if bits <= prec {
            return self.clone();
        }
        let shift = bits - prec;
        Dyadic::new(&self.man >> shift as usize, self.exp + shift as i64)
    }

    /// Rounds toward positive infinity to at most `prec` bits.
    pub fn round_ceil(&self, prec: u32) -> Dyadic {
        self.neg().round_floor(prec).neg()
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Exact conversion of a rational with power-of-two denominator.
    pub fn from_rational_exact(q: &BigRational) -> Option<Dyadic> {
        let den = q.denom();
        let tz = den.trailing_zeros().unwrap_or(0);
        if den != &(BigInt::one() << tz as usize) {
            return None;
        }
        Some(Dyadic::new(q.numer().clone(), -(tz as i64)))
    }

    /// Rounding division of an integer quotient `a / b` to `prec` bits.
    pub fn div_rational(num: &BigInt, den: &BigInt, prec: u32) -> (Dyadic, Mag) {
        assert!(!den.is_zero());
        if num.is_zero() {
            return (Dyadic::zero(), Mag::ZERO);
        }
        let shift = i64::from(prec) + den.bits() as i64 - num.bits() as i64 + 2;
        let (n, e) = if shift > 0 {
            (num << shift as usize, -shift)
        } else {
            (num.clone(), 0)
        };
        let (q, r) = n.div_rem(den);
        let err = if r.is_zero() { Mag::ZERO } else { Mag::pow2(e) };
        let (rounded, err2) = Dyadic::new(q, e).round(prec);
        (rounded, err.add_up(err2))
    }

    /// Integer part rounded toward negative infinity.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            &self.man >> (-self.exp) as usize
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        let (m, e) = if bits > 60 {
            let s = bits - 60;
            (&self.man >> s as usize, self.exp + s as i64)
        } else {
            (self.man.clone(), self.exp)
        };
        let mf = num_traits::ToPrimitive::to_f64(&m).unwrap_or(0.0);
        libm::ldexp(mf, e.clamp(-4000, 4000) as i32)
    }

    /// Approximate `log2(|x|)` (finite for any nonzero value, regardless of
    /// exponent range).
    pub fn log2_approx(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = self.man.bits();
        let top = if bits > 60 { (&self.man >> (bits - 60) as usize).abs() } else { self.man.abs() };
        let topf = num_traits::ToPrimitive::to_f64(&top).unwrap_or(1.0);
        let shift = bits.saturating_sub(60) as f64;
        libm::log2(topf) + shift + self.exp as f64
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.signum();
        let sb = other.signum();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // same sign, compare magnitudes by leading bit first
        let ta = self.top().unwrap_or(0);
        let tb = other.top().unwrap_or(0);
        let mag_order = if ta != tb {
            ta.cmp(&tb)
        } else {
            let exp = self.exp.min(other.exp);
            let a = self.man.abs() << (self.exp - exp) as usize;
            let b = other.man.abs() << (other.exp - exp) as usize;
            a.cmp(&b)
        };
        if sa > 0 {
            mag_order
        } else {
            mag_order.reverse()
        }
    }
}
