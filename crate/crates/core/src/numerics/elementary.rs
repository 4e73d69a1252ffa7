//! Certified `log` and `exp`.
//!
//! Both are computed with ball arithmetic at a few guard bits above the
//! requested precision, so rounding errors are tracked by the balls
//! themselves; only the series truncation is added by hand.

use num_bigint::BigInt;
use num_traits::One;

use super::ball::Ball;
use super::dyadic::Dyadic;
use super::mag::Mag;
use super::NumericsError;

const GUARD_BITS: u32 = 24;

/// Largest `|x|` accepted by [`exp`]: beyond this the result exponent
/// would not fit comfortably in an `i64`.
const EXP_ARG_LIMIT: f64 = 1.0e15;

/// `2 atanh(z) = 2 (z + z^3/3 + z^5/5 + ...)` for `|z| <= 1/2`.
fn two_atanh(z: &Ball, wp: u32) -> Ball {
    let z2 = z.sqr();
    let mut power = z.clone();
    let mut sum = Ball::zero(wp);
    let target = -(i64::from(wp) + 4);
    let mut k: i64 = 0;
    loop {
        let term = power.div_i64(2 * k + 1).expect("odd integer is nonzero");
        sum = &sum + &term;
        power = &power * &z2;
        k += 1;
        match power.mag_upper().log2_floor() {
            None => break,
            Some(e) if e < target => break,
            _ => {}
        }
    }
    // remaining terms: sum_{i>=k} |z|^(2i+1)/(2i+1) <= |z|^(2k+1) / (1 - z^2) <= 2 |z|^(2k+1)
    sum.add_error(power.mag_upper().mul_2exp(1)).mul_2exp(1)
}

/// `ln 2` to `prec` bits, as `2 atanh(1/3)`.
pub fn ln2(prec: u32) -> Ball {
    let wp = prec + GUARD_BITS;
    let third = Ball::one(wp).div_i64(3).expect("nonzero");
    two_atanh(&third, wp).with_prec(prec)
}

/// Natural logarithm of an exact positive dyadic.
pub fn ln_dyadic(x: &Dyadic, prec: u32) -> Result<Ball, NumericsError> {
    if !x.is_positive() {
        return Err(NumericsError::LogOfNonpositiveBall);
    }
    let wp = prec + GUARD_BITS;
    // x = y * 2^k with y in [3/4, 3/2)
    let bits = x.bits() as i64;
    let mut k = x.exponent() + bits;
    let mut y = Dyadic::new(x.mantissa().clone(), -bits);
    if y < Dyadic::new(BigInt::from(3), -2) {
        y = y.mul_2exp(1);
        k -= 1;
    }
    let yb = Ball::exact(y, wp);
    let one = Ball::one(wp);
    let z = (&yb - &one).div(&(&yb + &one))?;
    let mut result = two_atanh(&z, wp);
    if k != 0 {
        result = &result + &(&ln2(wp) * &Ball::from_i64(k, wp));
    }
    Ok(round_to(result, prec))
}

/// Exponential of an exact dyadic.
pub fn exp_dyadic(x: &Dyadic, prec: u32) -> Result<Ball, NumericsError> {
    if x.is_zero() {
        return Ok(Ball::one(prec));
    }
    let xf = x.to_f64();
    if xf.is_nan() || xf.abs() >= EXP_ARG_LIMIT {
        return Err(NumericsError::ArgumentTooLarge);
    }
    let n = libm::round(xf / core::f64::consts::LN_2) as i64;
    // halvings before the Taylor series; squarings afterwards double the relative error
    let halvings = (libm::sqrt(f64::from(prec)) / 2.0) as u32 + 2;
    let n_bits = 64 - n.unsigned_abs().leading_zeros();
    let wp = prec + GUARD_BITS + halvings + n_bits;

    let mut t = Ball::exact(x.clone(), wp);
    if n != 0 {
        t = &t - &(&ln2(wp) * &Ball::from_i64(n, wp));
    }
    let u = t.mul_2exp(-i64::from(halvings));

    let mut sum = Ball::one(wp);
    let mut term = Ball::one(wp);
    let target = -(i64::from(wp) + 4);
    let mut k: i64 = 1;
    loop {
        term = (&term * &u).div_i64(k)?;
        sum = &sum + &term;
        k += 1;
        match term.mag_upper().log2_floor() {
            None => break,
            Some(e) if e < target => break,
            _ => {}
        }
    }
    // |u| < 1/2, so the remaining tail is below the last term
    sum = sum.add_error(term.mag_upper());
    for _ in 0..halvings {
        sum = sum.sqr();
    }
    Ok(round_to(sum.mul_2exp(n), prec))
}

pub(crate) fn ln_ball(x: &Ball) -> Result<Ball, NumericsError> {
    if !x.is_positive() {
        return Err(NumericsError::LogOfNonpositiveBall);
    }
    let prec = x.prec();
    let core = ln_dyadic(x.mid(), prec)?;
    if x.is_exact() {
        return Ok(core);
    }
    // |ln(mid + d) - ln(mid)| <= |d| / (mid - rad)
    let lo = Mag::from_dyadic_down(&x.lower());
    Ok(core.add_error(x.rad().div_up(lo)))
}

pub(crate) fn exp_ball(x: &Ball) -> Result<Ball, NumericsError> {
    let prec = x.prec();
    if x.is_exact() {
        return exp_dyadic(x.mid(), prec);
    }
    if x.rad() <= Mag::from_u64(1) {
        // |exp(mid + d) - exp(mid)| <= exp(mid) |d| e^|d| <= 3 exp(mid) |d|
        let core = exp_dyadic(x.mid(), prec)?;
        let err = core.mag_upper().mul_up(x.rad()).mul_up(Mag::from_u64(3));
        return Ok(core.add_error(err));
    }
    let lo = exp_dyadic(&x.lower(), prec)?;
    let hi = exp_dyadic(&x.upper(), prec)?;
    Ok(lo.union(&hi))
}

fn round_to(x: Ball, prec: u32) -> Ball {
    let (mid, err) = x.mid().round(prec);
    Ball::new(mid, x.rad().add_up(err), prec)
}

/// Euler's number.
pub fn e_const(prec: u32) -> Ball {
    exp_dyadic(&Dyadic::new(BigInt::one(), 0), prec).expect("exp(1) is in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(b: &Ball, x: f64, tol: f64) -> bool {
        (b.to_f64() - x).abs() <= tol
    }

    #[test]
    fn ln2_value() {
        let l = ln2(200);
        assert!(close(&l, core::f64::consts::LN_2, 1e-15));
        assert!(l.rad().log2_floor().unwrap() < -190);
    }

    #[test]
    fn exp_of_one() {
        let e = e_const(128);
        assert!(close(&e, core::f64::consts::E, 1e-15));
        assert!(e.rad().log2_floor().unwrap() < -120);
    }

    #[test]
    fn exp_ln_roundtrip() {
        let x = Dyadic::new(BigInt::from(12345), -7);
        let l = ln_dyadic(&x, 160).unwrap();
        let back = l.exp().unwrap();
        assert!(back.contains_dyadic(&x));
    }

    #[test]
    fn ln_of_nonpositive() {
        assert_eq!(ln_dyadic(&Dyadic::zero(), 64).unwrap_err(), NumericsError::LogOfNonpositiveBall);
        let b = Ball::new(Dyadic::from_i64(1), Mag::from_u64(2), 64);
        assert_eq!(b.ln().unwrap_err(), NumericsError::LogOfNonpositiveBall);
    }

    #[test]
    fn exp_of_negative_and_wide_balls() {
        let x = Ball::from_i64(-50, 128).exp().unwrap();
        assert!(close(&x, libm::exp(-50.0), 1e-30));
        let wide = Ball::new(Dyadic::from_i64(0), Mag::from_u64(2), 64).exp().unwrap();
        assert!(wide.contains_dyadic(&Dyadic::from_i64(7)));
        assert!(wide.contains_dyadic(&Dyadic::new(BigInt::from(1), -2)));
    }
}
