use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numerics::{Ball, Dyadic, Mag, NumericsError};

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_{2count}` from the
/// tangent numbers, which are computed with integer arithmetic only.
pub fn bernoulli_even(count: usize) -> Vec<BigRational> {
    if count == 0 {
        return Vec::new();
    }
    let n = count;
    let mut t: Vec<BigInt> = alloc::vec![BigInt::zero(); n + 1];
    t[1] = BigInt::one();
    for k in 2..=n {
        t[k] = &t[k - 1] * BigInt::from(k - 1);
    }
    for k in 2..=n {
        for j in k..=n {
            t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
        }
    }
    (1..=n)
        .map(|k| {
            let four_k = BigInt::one() << (2 * k);
            let den = &four_k * (&four_k - BigInt::one());
            let num = &t[k] * BigInt::from(2 * k);
            let b = BigRational::new(num, den);
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// Argument of a zeta tail: an exact integer or an exact real dyadic.
#[derive(Clone, Debug)]
pub(crate) enum Exponent {
    Int(i64),
    Real(Dyadic),
}

impl Exponent {
    fn to_f64(&self) -> f64 {
        match self {
            Exponent::Int(k) => *k as f64,
            Exponent::Real(d) => d.to_f64(),
        }
    }

    fn ball(&self, wp: u32) -> Ball {
        match self {
            Exponent::Int(k) => Ball::from_i64(*k, wp),
            Exponent::Real(d) => Ball::exact(d.clone(), wp),
        }
    }

    /// `n^(-s)` as a ball.
    pub(crate) fn neg_power(&self, n: u64, wp: u32) -> Result<Ball, NumericsError> {
        match self {
            Exponent::Int(k) if *k >= 0 => {
                let den = num_traits::pow(BigInt::from(n), *k as usize);
                Ok(Ball::from_rational(&BigRational::new(BigInt::one(), den), wp))
            }
            Exponent::Int(k) => {
                let num = num_traits::pow(BigInt::from(n), k.unsigned_abs() as usize);
                Ok(Ball::from_bigint(&num, wp))
            }
            Exponent::Real(d) => {
                let ln_n = crate::numerics::elementary::ln_dyadic(&Dyadic::from_i64(n as i64), wp)?;
                (-(&Ball::exact(d.clone(), wp) * &ln_n)).exp()
            }
        }
    }
}

/// Cutoff `N` and number of correction terms `K` for one evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Plan {
    pub cutoff: u64,
    pub terms: usize,
}

fn log2_gamma(x: f64) -> f64 {
    libm::lgamma(x) * core::f64::consts::LOG2_E
}

/// Estimated `log2` of the `j`-th correction term magnitude.
fn log2_term(s: f64, n: f64, j: usize) -> f64 {
    let j2 = 2.0 * j as f64;
    1.0 - j2 * libm::log2(2.0 * core::f64::consts::PI) + log2_gamma(s + j2 - 1.0) - log2_gamma(s)
        - (s + j2 - 1.0) * libm::log2(n)
}

/// Picks the cheapest `(N, K)` whose first omitted term is below
/// `2^-target_bits` relative to `start^-s`.
pub(crate) fn plan(s: f64, start: u64, prec: u32) -> Plan {
    let target = -(f64::from(prec) + 16.0) - s * libm::log2(start as f64);
    let max_terms = 4 * prec as usize + 64;
    let mut best: Option<(f64, Plan)> = None;
    let mut n = (start + 1).max(2);
    loop {
        let nf = n as f64;
        let mut k = 0usize;
        let mut ok = false;
        while k <= max_terms {
            let next = log2_term(s, nf, k + 1);
            if next < target {
                ok = true;
                break;
            }
            // terms have started to grow again: this cutoff is too small
            if k >= 1 && next > log2_term(s, nf, k) {
                break;
            }
            k += 1;
        }
        if ok {
            let cost = (n - start) as f64 + 4.0 * k as f64;
            match best {
                Some((c, _)) if c <= cost => {
                    if cost > 2.0 * c {
                        break;
                    }
                }
                _ => best = Some((cost, Plan { cutoff: n, terms: k })),
            }
        }
        n += n / 8 + 1;
        if n > start + 4 * u64::from(prec) + 1024 {
            break;
        }
    }
    best.map(|(_, p)| p).unwrap_or(Plan { cutoff: start + 4 * u64::from(prec) + 1024, terms: max_terms })
}

/// Certified `sum_{n >= start} n^(-s)` for real `s > 1`, by Euler-Maclaurin
/// summation from a cutoff `N`:
///
/// `sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2 + sum_{j=1}^{K} B_{2j}/(2j)! (s)_{2j-1} N^(1-s-2j)`
///
/// The remainder is bounded by the magnitude of the first omitted term.
/// `bernoulli` must hold at least `plan.terms + 1` entries.
pub(crate) fn tail_sum(
    s: &Exponent,
    start: u64,
    prec: u32,
    plan: Plan,
    bernoulli: &[BigRational],
) -> Result<Ball, NumericsError> {
    debug_assert!(bernoulli.len() > plan.terms);
    let guard = 32 + 64 - plan.cutoff.leading_zeros();
    let wp = prec + guard;
    let n = plan.cutoff;
    let mut sum = Ball::zero(wp);
    for m in start..n {
        sum = &sum + &s.neg_power(m, wp)?;
    }
    let sb = s.ball(wp);
    let nb = Ball::from_i64(n as i64, wp);
    let n_neg_s = s.neg_power(n, wp)?;
    let one = Ball::one(wp);
    // N^(1-s)/(s-1)
    sum = &sum + &(&n_neg_s * &nb).div(&(&sb - &one))?;
    sum = &sum + &n_neg_s.mul_2exp(-1);
    // p_j = (s)_{2j-1} / (2j)! * N^(1-s-2j)
    let n2 = nb.sqr();
    let mut p = (&sb * &n_neg_s).div(&nb)?.mul_2exp(-1);
    for (j, b) in bernoulli.iter().enumerate().take(plan.terms + 1) {
        let j = j as i64 + 1;
        let term = &Ball::from_rational(b, wp) * &p;
        if j as usize == plan.terms + 1 {
            sum = sum.add_error(term.mag_upper());
            break;
        }
        sum = &sum + &term;
        let a = &sb + &Ball::from_i64(2 * j - 1, wp);
        let c = &sb + &Ball::from_i64(2 * j, wp);
        p = (&(&p * &a) * &c).div(&(&n2 * &Ball::from_i64((2 * j + 1) * (2 * j + 2), wp)))?;
    }
    let (mid, err) = sum.mid().round(prec);
    Ok(Ball::new(mid, sum.rad().add_up(err), prec))
}

/// Shares one Bernoulli table across several zeta evaluations.
#[derive(Clone, Debug, Default)]
pub struct ZetaEvaluator {
    bernoulli: Vec<BigRational>,
}

impl ZetaEvaluator {
    pub fn new() -> Self {
        ZetaEvaluator { bernoulli: Vec::new() }
    }

    fn ensure(&mut self, count: usize) {
        if self.bernoulli.len() < count {
            self.bernoulli = bernoulli_even(count);
        }
    }

    /// `sum_{n >= start} n^(-s)` at an integer `s >= 2`.
    pub fn eval_int(&mut self, s: i64, start: u64, prec: u32) -> Result<Ball, NumericsError> {
        self.eval(&Exponent::Int(s), start, prec)
    }

    pub(crate) fn eval(&mut self, s: &Exponent, start: u64, prec: u32) -> Result<Ball, NumericsError> {
        let sf = s.to_f64();
        if sf.is_nan() || sf <= 1.0 {
            return Err(NumericsError::ArgumentTooLarge);
        }
        let p = plan(sf, start, prec);
        self.ensure(p.terms + 1);
        tail_sum(s, start, prec, p, &self.bernoulli)
    }
}

/// Radius of the exact-value placeholder used when a tail interval is
/// appended to a ball: `[value, value + width]`.
pub(crate) fn add_interval(value: Ball, width: Mag) -> Ball {
    if width.is_zero() {
        return value;
    }
    let prec = value.prec();
    let half = width.mul_2exp(-1);
    let shifted = &value + &Ball::exact(half.to_dyadic(), prec);
    shifted.add_error(half)
}
