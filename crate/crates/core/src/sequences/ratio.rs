use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{int, rational_pow, SeriesError, SeriesSpec, Support};
use crate::numerics::Ball;

/// Search horizon for the two smallest support points.
const DEFAULT_HORIZON: u64 = 1 << 20;

/// The two smallest indices `N < M` with nonzero coefficient.
#[derive(Clone, Debug)]
pub struct MinimalIndices {
    pub n: u64,
    pub m: u64,
    pub f_n: BigRational,
    pub f_m: BigRational,
    /// `log M / log N`, present when `N > 1`.
    pub alpha: Option<Ball>,
    /// Declared (or bounded to be) finitely supported.
    pub degenerate: bool,
}

pub fn minimal_indices(spec: &SeriesSpec, horizon: u64) -> Result<MinimalIndices, SeriesError> {
    if !spec.is_dirichlet() {
        return Err(SeriesError::NotDirichletKind(spec.name().into()));
    }
    if horizon < 2 {
        return Err(SeriesError::Invalid("horizon must be at least 2".into()));
    }
    let found = spec.first_support(2, horizon);
    if found.len() < 2 {
        return Err(SeriesError::FewerThanTwoNonzero);
    }
    let (n, m) = (found[0], found[1]);
    let f_n = spec.coeff(n).unwrap_or_else(BigRational::zero);
    let f_m = spec.coeff(m).unwrap_or_else(BigRational::zero);
    let alpha = if n > 1 {
        let prec = 128;
        let ln_m = Ball::from_i64(m as i64, prec).ln()?;
        let ln_n = Ball::from_i64(n as i64, prec).ln()?;
        Some(ln_m.div(&ln_n)?)
    } else {
        None
    };
    let degenerate = matches!(spec.support(), Some(Support::Finite(_)));
    Ok(MinimalIndices { n, m, f_n, f_m, alpha, degenerate })
}

fn bits_for_cancellation(mi: &MinimalIndices, s: i64) -> u32 {
    let scale = if mi.n == 1 { mi.m as f64 } else { mi.m as f64 / mi.n as f64 };
    (libm::ceil(s.max(0) as f64 * libm::log2(scale)) as u32) + 64
}

/// Exact prefactor of the limit statistic.
///
/// `N = 1`: `f(N) M^(s+1) / ((M-1) f(M))`.
/// `N > 1`: `f(N) N^((alpha-1)s) / (f(M) (1 - N^(1-alpha)))`, which equals
/// `f(N) M^(s+1) / (N^s f(M) (M-N))` since `N^alpha = M`.
fn statistic_prefactor(mi: &MinimalIndices, s: i64) -> BigRational {
    let m = int(mi.m as i64);
    let n = int(mi.n as i64);
    let num = &mi.f_n * rational_pow(&m, s + 1);
    if mi.n == 1 {
        num / (&mi.f_m * (&m - BigRational::one()))
    } else {
        num / (rational_pow(&n, s) * &mi.f_m * (&m - &n))
    }
}

/// The quantity that tends to one as `s` grows:
///
/// `N = 1`: `M^(s+1) / ((M-1) f(M)) * (1 - F(s+1)/F(s))`;
/// `N > 1`: `f(N) N^((alpha-1)s) / (f(M)(1 - N^(1-alpha))) * (1 - N F(s+1)/F(s))`.
pub fn ratio_limit_statistic(spec: &SeriesSpec, s: i64, prec: u32) -> Result<Ball, SeriesError> {
    let mi = minimal_indices(spec, DEFAULT_HORIZON)?;
    let wp = prec + bits_for_cancellation(&mi, s + 1);
    let vals = spec.eval_range(s, 2, wp)?;
    let ratio = vals[1].div(&vals[0])?;
    let scaled = &Ball::from_i64(mi.n as i64, wp) * &ratio;
    let gap = &Ball::one(wp) - &scaled;
    let stat = &Ball::from_rational(&statistic_prefactor(&mi, s), wp) * &gap;
    Ok(stat.with_prec(prec))
}

/// Which envelope shape is in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnvelopeCase {
    /// `A(k) = 1 - c/M^k`, `B(k) = 1`, `lambda(k) = 2 F(s0) c / M^(k-2)`.
    LeadingOne { m: u64 },
    /// `A(k) = 1/N - c (N/M)^k`, `B(k) = 1/N`,
    /// `lambda(k) = 2 N F(s0) c (N/M)^(k-2)`.
    LeadingN { n: u64, m: u64 },
    /// `A(k) = k-1`, `B(k) = k`, `lambda(k) = 2 (k-2)!`.
    Factorial,
}

/// Functions `A`, `B`, `lambda` with the constant they were built from.
#[derive(Clone, Debug)]
pub struct RatioEnvelope {
    pub case: EnvelopeCase,
    pub c: BigRational,
    /// First `k` at which the envelope is claimed.
    pub k0: i64,
    /// `F(s0)`, the uniform bound on the sequence.
    pub f_s0: Option<Ball>,
    /// Range over which the inequalities were checked numerically.
    pub verified: Option<(i64, i64)>,
}

impl RatioEnvelope {
    /// The envelope used for `h(k) = (k-2)!` with `K = 2`.
    pub fn factorial() -> Self {
        RatioEnvelope { case: EnvelopeCase::Factorial, c: BigRational::one(), k0: 2, f_s0: None, verified: None }
    }

    pub fn case_tag(&self) -> &'static str {
        match self.case {
            EnvelopeCase::LeadingOne { .. } => "N_eq_1",
            EnvelopeCase::LeadingN { .. } => "N_gt_1",
            EnvelopeCase::Factorial => "factorial",
        }
    }

    pub fn a(&self, k: i64, prec: u32) -> Ball {
        Ball::from_rational(&self.a_exact(k), prec)
    }

    pub fn b(&self, k: i64, prec: u32) -> Ball {
        Ball::from_rational(&self.b_exact(k), prec)
    }

    fn a_exact(&self, k: i64) -> BigRational {
        match self.case {
            EnvelopeCase::LeadingOne { m } => BigRational::one() - &self.c * rational_pow(&int(m as i64), -k),
            EnvelopeCase::LeadingN { n, m } => {
                let n = int(n as i64);
                let q = &n / int(m as i64);
                n.recip() - &self.c * rational_pow(&q, k)
            }
            EnvelopeCase::Factorial => int(k - 1),
        }
    }

    fn b_exact(&self, k: i64) -> BigRational {
        match self.case {
            EnvelopeCase::LeadingOne { .. } => BigRational::one(),
            EnvelopeCase::LeadingN { n, .. } => int(n as i64).recip(),
            EnvelopeCase::Factorial => int(k),
        }
    }

    pub fn lambda(&self, k: i64, prec: u32) -> Ball {
        match self.case {
            EnvelopeCase::LeadingOne { m } => {
                let r = int(2) * &self.c * rational_pow(&int(m as i64), 2 - k);
                self.times_f_s0(&r, prec)
            }
            EnvelopeCase::LeadingN { n, m } => {
                let nn = int(n as i64);
                let q = &nn / int(m as i64);
                let r = int(2) * nn * &self.c * rational_pow(&q, k - 2);
                self.times_f_s0(&r, prec)
            }
            EnvelopeCase::Factorial => {
                let mut f = BigInt::from(2);
                for i in 2..=(k - 2) {
                    f *= BigInt::from(i);
                }
                Ball::from_bigint(&f, prec)
            }
        }
    }

    fn times_f_s0(&self, r: &BigRational, prec: u32) -> Ball {
        let f = self.f_s0.clone().unwrap_or_else(|| Ball::one(prec));
        let p = prec.max(f.prec());
        &Ball::from_rational(r, prec) * &f.with_prec(p)
    }
}

/// `x` rounded up to four significant decimal digits.
fn round_up_4_digits(x: f64) -> BigRational {
    let e = libm::floor(libm::log10(x)) as i32;
    let shift = 3 - e;
    let ten = BigInt::from(10);
    let (scaled, den) = if shift >= 0 {
        let p = num_traits::pow(ten, shift as usize);
        (x * libm::pow(10.0, f64::from(shift)), BigRational::from_integer(p))
    } else {
        let p = num_traits::pow(ten, (-shift) as usize);
        (x / libm::pow(10.0, f64::from(-shift)), BigRational::new(BigInt::one(), p))
    };
    let top = BigInt::from(libm::ceil(scaled) as i64);
    BigRational::from_integer(top) / den
}

/// Smallest constant `c` (1% slack, rounded up to four digits) for which the
/// envelope inequalities hold at every `k` in `[k_min, k_max]`. The result is
/// an empirical calibration over that window, checked before returning.
pub fn calibrate_ratio_bounds(
    spec: &SeriesSpec,
    k_min: i64,
    k_max: i64,
    prec: u32,
) -> Result<RatioEnvelope, SeriesError> {
    let mi = minimal_indices(spec, DEFAULT_HORIZON)?;
    if int(k_min) < *spec.s0() || k_max < k_min {
        return Err(SeriesError::OutOfDomain { name: spec.name().into(), k: k_min });
    }
    let wp = prec + bits_for_cancellation(&mi, k_max + 2);
    let len = (k_max - k_min + 3) as usize;
    let values = spec.eval_range(k_min, len, wp)?;
    let ratios: Vec<Ball> =
        (0..len - 1).map(|i| values[i + 1].div(&values[i])).collect::<Result<_, _>>()?;

    let (case, scale) = if mi.n == 1 {
        (EnvelopeCase::LeadingOne { m: mi.m }, int(mi.m as i64))
    } else {
        (EnvelopeCase::LeadingN { n: mi.n, m: mi.m }, int(mi.m as i64) / int(mi.n as i64))
    };
    let b_const = int(mi.n as i64).recip();
    let mut worst = 0.0f64;
    for (i, r) in ratios.iter().enumerate().take((k_max - k_min + 1) as usize) {
        let k = k_min + i as i64;
        // c >= scale^k (B - ratio)
        let need = &Ball::from_rational(&rational_pow(&scale, k), wp) * &(&Ball::from_rational(&b_const, wp) - r);
        worst = worst.max(need.upper().to_f64());
    }
    if !worst.is_finite() || worst <= 0.0 {
        return Err(SeriesError::EnvelopeViolated);
    }
    let c = round_up_4_digits(worst * 1.01);
    let f_s0 = spec.eval(spec.first_argument(), wp)?;
    let env = RatioEnvelope { case, c, k0: k_min, f_s0: Some(f_s0), verified: Some((k_min, k_max)) };

    for k in k_min..=k_max {
        let i = (k - k_min) as usize;
        let a = env.a(k, wp);
        let b = env.b(k, wp);
        let b_next = env.b(k + 1, wp);
        let r = &ratios[i];
        let a_le_r = a.upper() <= r.lower();
        if !a.is_positive() || !a.certified_lt(&b_next) || !a_le_r || !r.certified_lt(&b) {
            return Err(SeriesError::EnvelopeViolated);
        }
        // h(k+2) < lambda(k+2) B(k+1) / (B(k+1) - A(k))
        let rhs = (&env.lambda(k + 2, wp) * &b_next).div(&(&b_next - &a))?;
        if !values[i + 2].certified_lt(&rhs) {
            return Err(SeriesError::EnvelopeViolated);
        }
    }
    if env.c.is_negative() || (k_min as f64) < spec.s0().to_f64().unwrap_or(0.0) {
        return Err(SeriesError::EnvelopeViolated);
    }
    Ok(env)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_digit_round_up() {
        assert_eq!(round_up_4_digits(1.0877), BigRational::new(1088.into(), 1000.into()));
        assert_eq!(round_up_4_digits(0.5170001), BigRational::new(5171.into(), 10000.into()));
        assert_eq!(round_up_4_digits(1234.5), BigRational::from_integer(1235.into()));
        assert_eq!(round_up_4_digits(123456.0), BigRational::from_integer(123500.into()));
    }

    #[test]
    fn factorial_envelope_values() {
        let e = RatioEnvelope::factorial();
        assert_eq!(e.lambda(6, 64).exact_integer(), Some(BigInt::from(48)));
        assert_eq!(e.a_exact(5), int(4));
        assert_eq!(e.b_exact(5), int(5));
    }
}
