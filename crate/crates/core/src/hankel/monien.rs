use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{HankelError, HankelQuery};
use crate::numerics::Ball;
use crate::sequences::{SeriesSpec, Support};

/// Largest number of index tuples [`monien_sum`] will enumerate.
const MAX_TUPLES: u128 = 2_000_000;

/// Support points scanned when looking for a positivity witness.
const WITNESS_HORIZON: u64 = 1 << 24;

/// Partial tuple sum over strictly increasing `m_1 < ... < m_n <= cutoff`.
#[derive(Clone, Debug)]
pub struct MonienSum {
    pub value: BigRational,
    /// True when the declared support is finite and lies within the cutoff,
    /// so that `value` is the determinant itself.
    pub exact: bool,
    pub tuples: u128,
}

impl MonienSum {
    /// The sum as a ball (a lower bound on the determinant unless exact).
    pub fn to_ball(&self, prec: u32) -> Ball {
        Ball::from_rational(&self.value, prec)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Single term `prod f(m_i) m_i^-(2n+r) * prod_{i<j} (m_i - m_j)^2`.
pub fn monien_term(spec: &SeriesSpec, tuple: &[u64], n: usize, r: i64) -> Option<BigRational> {
    let e = 2 * n as i64 + r;
    let mut acc = BigRational::one();
    for (i, &m) in tuple.iter().enumerate() {
        acc *= spec.coeff(m)?;
        acc *= crate::sequences::rational_pow(&BigRational::from_integer(BigInt::from(m)), -e);
        for &p in &tuple[..i] {
            let d = BigInt::from(m) - BigInt::from(p);
            acc *= BigRational::from_integer(&d * &d);
        }
    }
    Some(acc)
}

/// Sum of tuple terms over support points `<= cutoff`. All terms are
/// nonnegative, so the result is a lower bound on `H_n^(r)`; it is the
/// exact value when the support is declared finite and within the cutoff.
pub fn monien_sum(q: &HankelQuery<'_>, cutoff: u64) -> Result<MonienSum, HankelError> {
    let spec = q.spec;
    if !spec.is_dirichlet() {
        return Err(HankelError::NotDirichletKind(spec.name().into()));
    }
    if cutoff < q.n as u64 {
        return Err(HankelError::InvalidQuery(format!("cutoff {cutoff} is below n = {}", q.n)));
    }
    let support = spec.first_support(usize::MAX, cutoff);
    let tuples = binomial(support.len() as u128, q.n as u128);
    if tuples > MAX_TUPLES {
        return Err(HankelError::TooManyTuples(tuples));
    }
    let e = 2 * q.n as i64 + q.r;
    let weights: Vec<BigRational> = support
        .iter()
        .map(|&m| {
            spec.coeff(m).unwrap_or_else(BigRational::zero)
                * crate::sequences::rational_pow(&BigRational::from_integer(BigInt::from(m)), -e)
        })
        .collect();
    let mut total = BigRational::zero();
    let mut chosen: Vec<usize> = Vec::with_capacity(q.n);
    accumulate(&support, &weights, q.n, 0, &mut chosen, BigRational::one(), &mut total);
    let exact = match spec.support() {
        Some(Support::Finite(points)) => points.iter().all(|&p| p <= cutoff),
        _ => false,
    };
    Ok(MonienSum { value: total, exact, tuples })
}

fn accumulate(
    support: &[u64],
    weights: &[BigRational],
    n: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    partial: BigRational,
    total: &mut BigRational,
) {
    if chosen.len() == n {
        *total += partial;
        return;
    }
    let remaining = n - chosen.len();
    for idx in from..support.len() {
        if support.len() - idx < remaining {
            break;
        }
        let m = BigInt::from(support[idx]);
        let mut next = &partial * &weights[idx];
        for &c in chosen.iter() {
            let d = &m - BigInt::from(support[c]);
            next *= BigRational::from_integer(&d * &d);
        }
        chosen.push(idx);
        accumulate(support, weights, n, idx + 1, chosen, next, total);
        chosen.pop();
    }
}

/// Outcome of [`certify_positive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// A single strictly positive tuple term from the first `n` support points.
    Positive { tuple: Vec<u64>, term: BigRational },
    /// The declared support has fewer than `n` points.
    Vanishes { support_size: usize },
    Unresolved(String),
}

impl Certificate {
    pub fn as_str(&self) -> &'static str {
        match self {
            Certificate::Positive { .. } => "positive_certificate",
            Certificate::Vanishes { .. } => "vanishes_certificate",
            Certificate::Unresolved(_) => "unresolved",
        }
    }
}

/// Positivity or vanishing of `H_n^(r)` from the support of the coefficients.
pub fn certify_positive(q: &HankelQuery<'_>) -> Certificate {
    let spec = q.spec;
    if !spec.is_dirichlet() {
        return Certificate::Unresolved(format!("{} has no Dirichlet coefficients", spec.name()));
    }
    if let Some(Support::Finite(points)) = spec.support() {
        if points.len() < q.n {
            return Certificate::Vanishes { support_size: points.len() };
        }
    }
    let tuple = spec.first_support(q.n, WITNESS_HORIZON);
    if tuple.len() < q.n {
        return Certificate::Unresolved(format!("fewer than {} support points found", q.n));
    }
    match monien_term(spec, &tuple, q.n, q.r) {
        Some(term) if term.is_positive() => Certificate::Positive { tuple, term },
        _ => Certificate::Unresolved("witness term is not positive".into()),
    }
}
