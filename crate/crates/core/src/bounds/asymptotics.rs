use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{BoundsError, DetCache};
use crate::numerics::{Ball, PrecisionChoice};
use crate::sequences::SeriesSpec;

/// Reference value of the leading constant for `H_n^(0)[zeta]`.
pub const ZAGIER_A0_REFERENCE: &str = "0.351466738331";

const WORK_BITS: u32 = 256;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Evaluates `sum_i coeffs[i] x^-(i+1)` exactly.
fn inverse_series(coeffs: &[BigRational], x: i64) -> BigRational {
    let inv = rat(1, x);
    let mut power = inv.clone();
    let mut acc = BigRational::from_integer(0.into());
    for c in coeffs {
        acc += c * &power;
        power *= &inv;
    }
    acc
}

fn odd_expansion(n: usize) -> BigRational {
    inverse_series(&[rat(-1, 1), rat(2, 1), rat(-7, 3)], 2 * n as i64 + 1)
}

fn even_expansion(n: usize) -> BigRational {
    inverse_series(&[rat(-1, 1), rat(-1, 1), rat(2, 3), rat(-6, 5), rat(56, 45)], 2 * n as i64)
}

/// The determinant ratios compared against the two experimental expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonienPairing {
    /// `-H_{n-1}^(0) H_n^(1) / (H_n^(0) H_{n+1}^(1))` against the `2n+1` expansion.
    PrintedOdd,
    /// `-H_{n+1}^(0) H_{n-1}^(1) / (H_n^(0) H_n^(1))` against the `2n` expansion.
    PrintedEven,
    /// `-H_{n+1}^(0) H_{n-1}^(1) / (H_n^(0) H_n^(1))` against the `2n+1` expansion.
    SwappedOdd,
    /// `-H_{n-1}^(0) H_n^(1) / (H_n^(0) H_{n-1}^(1))` against the `2n` expansion.
    SwappedEven,
}

impl MonienPairing {
    pub const ALL: [MonienPairing; 4] =
        [MonienPairing::PrintedOdd, MonienPairing::PrintedEven, MonienPairing::SwappedOdd, MonienPairing::SwappedEven];

    pub fn as_str(self) -> &'static str {
        match self {
            MonienPairing::PrintedOdd => "printed_odd",
            MonienPairing::PrintedEven => "printed_even",
            MonienPairing::SwappedOdd => "swapped_odd",
            MonienPairing::SwappedEven => "swapped_even",
        }
    }

    fn is_odd(self) -> bool {
        matches!(self, MonienPairing::PrintedOdd | MonienPairing::SwappedOdd)
    }

    fn predicted(self, n: usize) -> BigRational {
        if self.is_odd() {
            odd_expansion(n)
        } else {
            even_expansion(n)
        }
    }

    /// `(2n+1)^4` or `(2n)^6`.
    fn normaliser(self, n: usize) -> BigRational {
        if self.is_odd() {
            BigRational::from_integer(BigInt::from(2 * n + 1).pow(4))
        } else {
            BigRational::from_integer(BigInt::from(2 * n).pow(6))
        }
    }

    fn measure(self, dets: &mut DetCache<'_>, n: usize) -> Result<Ball, BoundsError> {
        let (a, b, c, d) = match self {
            MonienPairing::PrintedOdd => ((n - 1, 0), (n, 1), (n, 0), (n + 1, 1)),
            MonienPairing::PrintedEven | MonienPairing::SwappedOdd => ((n + 1, 0), (n - 1, 1), (n, 0), (n, 1)),
            MonienPairing::SwappedEven => ((n - 1, 0), (n, 1), (n, 0), (n - 1, 1)),
        };
        let num = &dets.get(a.0, a.1)? * &dets.get(b.0, b.1)?;
        let den = &dets.get(c.0, c.1)? * &dets.get(d.0, d.1)?;
        Ok(-num.div(&den)?)
    }
}

#[derive(Clone, Debug)]
pub struct MonienRow {
    pub n: usize,
    pub pairing: MonienPairing,
    pub measured: Ball,
    pub predicted: Ball,
    /// `|measured - predicted|` scaled by `(2n+1)^4` or `(2n)^6`.
    pub residual: Ball,
}

/// Measured zeta determinant ratios against the truncated expansions, for
/// every pairing and every `n` in the range (`n >= 2`).
pub fn monien_ratio_check(n_range: RangeInclusive<usize>, precision: PrecisionChoice) -> Result<Vec<MonienRow>, BoundsError> {
    if n_range.is_empty() || *n_range.start() < 2 {
        return Err(BoundsError::InvalidQuery("ratio checks need n >= 2".into()));
    }
    let zeta = SeriesSpec::zeta();
    let mut dets = DetCache::new(&zeta, precision);
    let mut rows = Vec::new();
    for n in n_range {
        for pairing in MonienPairing::ALL {
            let measured = pairing.measure(&mut dets, n)?;
            let predicted = Ball::from_rational(&pairing.predicted(n), WORK_BITS);
            let scale = Ball::from_rational(&pairing.normaliser(n), WORK_BITS);
            let residual = &(&measured - &predicted).abs() * &scale;
            rows.push(MonienRow { n, pairing, measured, predicted, residual });
        }
    }
    Ok(rows)
}

/// Leading-constant estimates for the zeta determinants.
#[derive(Clone, Debug)]
pub struct AsymptoticFit {
    pub n_min: usize,
    pub n_max: usize,
    /// `(n, A0 estimate from H_n^(0))`.
    pub a0_estimates: Vec<(usize, Ball)>,
    /// `(n, A1 estimate from H_{n-1}^(1))`.
    pub a1_estimates: Vec<(usize, Ball)>,
    pub ratio_estimates: Vec<(usize, Ball)>,
    pub a0_reference: Ball,
    /// `e^(9/8) / sqrt(6)`.
    pub ratio_reference: Ball,
}

fn three_halves(prec: u32) -> Ball {
    Ball::from_rational(&rat(3, 2), prec)
}

/// `H * (x / e^(3/2))^p / corr`.
fn normalise(h: &Ball, x: i64, p: &BigRational, corr: &BigRational, prec: u32) -> Result<Ball, BoundsError> {
    let log_base = &Ball::from_i64(x, prec).ln()? - &three_halves(prec);
    let scale = (&Ball::from_rational(p, prec) * &log_base).exp()?;
    Ok((h * &scale).div(&Ball::from_rational(corr, prec))?)
}

fn a0_estimate(h: &Ball, n: usize, prec: u32) -> Result<Ball, BoundsError> {
    let x = 2 * n as i64 + 1;
    let p = rat(x * x, 4);
    let corr = rat(1, 1) + inverse_series(&[rat(0, 1), rat(1, 24), rat(0, 1), rat(-12319, 259200)], x);
    normalise(h, x, &p, &corr, prec)
}

fn a1_estimate(h: &Ball, n: usize, prec: u32) -> Result<Ball, BoundsError> {
    let x = 2 * n as i64;
    let p = rat((n * n) as i64, 1) - rat(3, 4);
    let corr = rat(1, 1) + inverse_series(&[rat(0, 1), rat(-17, 240), rat(0, 1), rat(-199873, 7257600)], x);
    normalise(h, x, &p, &corr, prec)
}

/// Estimates of the two leading constants from `H_n^(0)[zeta]` and
/// `H_{n-1}^(1)[zeta]` over the range (`n >= 2`), with their ratio.
pub fn zagier_fit(n_range: RangeInclusive<usize>, precision: PrecisionChoice) -> Result<AsymptoticFit, BoundsError> {
    if n_range.is_empty() || *n_range.start() < 2 {
        return Err(BoundsError::InvalidQuery("the fit needs n >= 2".into()));
    }
    let zeta = SeriesSpec::zeta();
    let mut dets = DetCache::new(&zeta, precision);
    let (n_min, n_max) = (*n_range.start(), *n_range.end());
    let mut fit = AsymptoticFit {
        n_min,
        n_max,
        a0_estimates: Vec::new(),
        a1_estimates: Vec::new(),
        ratio_estimates: Vec::new(),
        a0_reference: Ball::from_rational(&rat(351_466_738_331, 1_000_000_000_000), WORK_BITS)
            .add_error(crate::numerics::Mag::pow2(-39)),
        ratio_reference: (&Ball::from_rational(&rat(9, 8), WORK_BITS)
            - &Ball::from_i64(6, WORK_BITS).ln()?.mul_2exp(-1))
            .exp()?,
    };
    for n in n_range {
        let a0 = a0_estimate(&dets.get(n, 0)?, n, WORK_BITS)?;
        let a1 = a1_estimate(&dets.get(n - 1, 1)?, n, WORK_BITS)?;
        let ratio = a1.div(&a0)?;
        fit.a0_estimates.push((n, a0));
        fit.a1_estimates.push((n, a1));
        fit.ratio_estimates.push((n, ratio));
    }
    Ok(fit)
}
