use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use super::dyadic::Dyadic;

/// Number of mantissa bits kept in a [`Mag`].
const MAG_BITS: u32 = 32;

/// A nonnegative dyadic `man * 2^exp` with a short mantissa, used for ball
/// radii. Every arithmetic method rounds in the direction stated in its name
/// (upward unless it says `down`).
#[derive(Clone, Copy, Debug)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    pub fn from_u64(x: u64) -> Mag {
        Self::normalize_up(u128::from(x), 0)
    }

    /// `2^e` exactly.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1, exp: e }
    }

    pub fn is_zero(self) -> bool {
        self.man == 0
    }

    fn normalize_up(man: u128, exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits <= MAG_BITS {
            return Mag { man: man as u64, exp };
        }
        let shift = bits - MAG_BITS;
        let mut m = man >> shift;
        if m << shift != man {
            m += 1;
        }
        Mag { man: m as u64, exp: exp + i64::from(shift) }
    }

    fn normalize_down(man: u128, exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits <= MAG_BITS {
            return Mag { man: man as u64, exp };
        }
        let shift = bits - MAG_BITS;
        Mag { man: (man >> shift) as u64, exp: exp + i64::from(shift) }
    }

    /// Upper bound on `|x|`.
    pub fn from_dyadic_up(x: &Dyadic) -> Mag {
        Self::from_bigint_parts(x.mantissa(), x.exponent(), true)
    }

    /// Lower bound on `|x|`.
    pub fn from_dyadic_down(x: &Dyadic) -> Mag {
        Self::from_bigint_parts(x.mantissa(), x.exponent(), false)
    }

    fn from_bigint_parts(man: &BigInt, exp: i64, up: bool) -> Mag {
        if man.is_zero() {
            return Mag::ZERO;
        }
        let bits = man.bits();
        let mag = man.magnitude();
        if bits <= 64 {
            let m = mag.iter_u64_digits().next().unwrap_or(0);
            return Mag::normalize_up(u128::from(m), exp);
        }
        let shift = bits - 64;
        let top = (mag >> shift).iter_u64_digits().next().unwrap_or(0);
        let exact = mag.trailing_zeros().is_some_and(|tz| tz >= shift);
        let top = u128::from(top);
        let shifted_exp = exp + shift as i64;
        if up {
            let m = if exact { top } else { top + 1 };
            Mag::normalize_up(m, shifted_exp)
        } else {
            Mag::normalize_down(top, shifted_exp)
        }
    }

    pub fn to_dyadic(self) -> Dyadic {
        Dyadic::new(BigInt::from(self.man), self.exp)
    }

    pub fn add_up(self, other: Mag) -> Mag {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exp >= other.exp { (self, other) } else { (other, self) };
        let gap = hi.exp - lo.exp;
        if gap > 90 {
            // lo is below one unit of hi's last place; absorb it by rounding up
            return Mag::normalize_up(u128::from(hi.man) * 2 + 1, hi.exp - 1);
        }
        let sum = (u128::from(hi.man) << gap) + u128::from(lo.man);
        Mag::normalize_up(sum, lo.exp)
    }

    pub fn mul_up(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalize_up(u128::from(self.man) * u128::from(other.man), self.exp + other.exp)
    }

    pub fn mul_down(self, other: Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::ZERO;
        }
        Mag::normalize_down(u128::from(self.man) * u128::from(other.man), self.exp + other.exp)
    }

    pub fn mul_2exp(self, k: i64) -> Mag {
        if self.is_zero() {
            return self;
        }
        Mag { man: self.man, exp: self.exp + k }
    }

    /// Upper bound on `self / other`; `other` must be nonzero.
    pub fn div_up(self, other: Mag) -> Mag {
        assert!(!other.is_zero(), "Mag::div_up by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = u128::from(self.man) << 64;
        let den = u128::from(other.man);
        let q = num.div_ceil(den);
        Mag::normalize_up(q, self.exp - 64 - other.exp)
    }

    /// Lower bound on `self - other`, or `None` when that is not positive.
    pub fn sub_down(self, other: Mag) -> Option<Mag> {
        if other.is_zero() {
            return if self.is_zero() { None } else { Some(self) };
        }
        if self <= other {
            return None;
        }
        let a = self.to_dyadic();
        let b = other.to_dyadic();
        Some(Mag::from_dyadic_down(&a.sub(&b)))
    }

    /// `floor(log2(self))`, or `None` for zero.
    pub fn log2_floor(self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + i64::from(63 - self.man.leading_zeros()))
        }
    }

    pub fn to_f64(self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        libm::ldexp(self.man as f64, e)
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialEq for Mag {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Mag {}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let ta = self.log2_floor().unwrap_or(0);
        let tb = other.log2_floor().unwrap_or(0);
        if ta != tb {
            return ta.cmp(&tb);
        }
        self.to_dyadic().cmp(&other.to_dyadic())
    }
}

impl From<&Dyadic> for Mag {
    fn from(x: &Dyadic) -> Mag {
        Mag::from_dyadic_up(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_directions() {
        let x = Dyadic::new(BigInt::from((1u128 << 70) + 1), -10);
        let up = Mag::from_dyadic_up(&x);
        let down = Mag::from_dyadic_down(&x);
        assert!(up.to_dyadic() >= x);
        assert!(down.to_dyadic() <= x);
        assert!(up > down);
    }

    #[test]
    fn add_with_huge_gap_rounds_up() {
        let a = Mag::from_u64(1);
        let b = Mag::pow2(-500);
        let s = a.add_up(b);
        assert!(s > a);
        assert!(s.to_dyadic() >= a.to_dyadic().add(&b.to_dyadic()));
    }

    #[test]
    fn div_and_sub() {
        let three = Mag::from_u64(3);
        let q = Mag::from_u64(1).div_up(three);
        assert!(q.mul_up(three) >= Mag::from_u64(1));
        assert_eq!(Mag::from_u64(2).sub_down(Mag::from_u64(3)), None);
        assert_eq!(Mag::from_u64(5).sub_down(Mag::from_u64(3)), Some(Mag::from_u64(2)));
    }
}
