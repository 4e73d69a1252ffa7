//! Radius-aware decimal rendering of balls.
//!
//! The midpoint is printed only to the digits the radius certifies; the
//! radius itself is printed with three significant digits, rounded up.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};

use super::ball::Ball;
use super::dyadic::Dyadic;
use super::mag::Mag;

/// Digits printed for an exact non-integer midpoint.
const EXACT_DIGITS: u32 = 40;
const MAX_DIGITS: u32 = 60;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Rounding {
    Nearest,
    Ceil,
}

/// Returns `(digits, e10)` with `digits` having exactly `sig` decimal digits
/// and `x ~= digits * 10^(e10 - sig + 1)`.
fn leading_digits(x: &Dyadic, sig: u32, mode: Rounding) -> (BigInt, i64) {
    debug_assert!(x.is_positive());
    let mut e10 = libm::floor(x.log2_approx() * core::f64::consts::LOG10_2) as i64;
    let ten = BigInt::from(10);
    let lo = ten.clone().pow(sig - 1);
    let hi = ten.clone().pow(sig);
    for _ in 0..8 {
        let k = i64::from(sig) - 1 - e10;
        let mut num = x.mantissa().clone();
        let mut den = BigInt::one();
        if k >= 0 {
            num *= ten.clone().pow(k as u64);
        } else {
            den *= ten.clone().pow((-k) as u64);
        }
        if x.exponent() >= 0 {
            num <<= x.exponent() as usize;
        } else {
            den <<= (-x.exponent()) as usize;
        }
        let digits = match mode {
            Rounding::Nearest => {
                let twice: BigInt = &num * 2u32 + &den;
                twice.div_floor(&(&den * 2u32))
            }
            Rounding::Ceil => num.div_ceil(&den),
        };
        if digits >= hi {
            e10 += 1;
        } else if digits < lo {
            e10 -= 1;
        } else {
            return (digits, e10);
        }
    }
    // rounding carried into a new digit (e.g. 9.995 -> 10.0)
    (lo, e10 + 1)
}

fn render(digits: &str, e10: i64, negative: bool, strip: bool) -> String {
    let sign = if negative { "-" } else { "" };
    let sig = digits.len() as i64;
    let body = if (-5..15).contains(&e10) {
        if e10 >= sig - 1 {
            let mut s = digits.to_string();
            for _ in 0..(e10 - sig + 1) {
                s.push('0');
            }
            s
        } else if e10 >= 0 {
            let split = (e10 + 1) as usize;
            let frac = if strip { digits[split..].trim_end_matches('0') } else { &digits[split..] };
            if frac.is_empty() {
                digits[..split].to_string()
            } else {
                format!("{}.{}", &digits[..split], frac)
            }
        } else {
            let mut s = String::from("0.");
            for _ in 0..(-e10 - 1) {
                s.push('0');
            }
            s.push_str(if strip { digits.trim_end_matches('0') } else { digits });
            s
        }
    } else {
        let frac = if strip { digits[1..].trim_end_matches('0') } else { &digits[1..] };
        if frac.is_empty() {
            format!("{}e{}", &digits[..1], e10)
        } else {
            format!("{}.{}e{}", &digits[..1], frac, e10)
        }
    };
    format!("{sign}{body}")
}

/// Decimal rendering of an exact dyadic with `sig` significant digits.
pub fn format_dyadic(x: &Dyadic, sig: u32, strip_zeros: bool) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let (digits, e10) = leading_digits(&x.abs(), sig.max(1), Rounding::Nearest);
    render(&digits.to_string(), e10, x.is_negative(), strip_zeros)
}

/// Radius in scientific notation with three significant digits, rounded up.
pub fn format_rad(rad: Mag) -> String {
    if rad.is_zero() {
        return "0".to_string();
    }
    let (digits, e10) = leading_digits(&rad.to_dyadic(), 3, Rounding::Ceil);
    let d = digits.to_string();
    format!("{}.{}e{}", &d[..1], &d[1..], e10)
}

/// Midpoint digits certified by the radius.
pub fn format_mid(b: &Ball) -> String {
    let mid = b.mid();
    if mid.is_zero() {
        return "0".to_string();
    }
    if b.rad().is_zero() {
        if mid.exponent() >= 0 && mid.bits() as i64 + mid.exponent() < 128 {
            return mid.floor_int().to_string();
        }
        return format_dyadic(mid, EXACT_DIGITS, true);
    }
    let span = mid.log2_approx() - b.rad().to_dyadic().log2_approx();
    let sig = if span <= 0.0 {
        1
    } else {
        (libm::floor(span * core::f64::consts::LOG10_2) as i64).clamp(1, i64::from(MAX_DIGITS)) as u32
    };
    format_dyadic(mid, sig, false)
}

/// `(midpoint, radius)` strings for a ball.
pub fn format_ball(b: &Ball) -> (String, String) {
    (format_mid(b), format_rad(b.rad()))
}
