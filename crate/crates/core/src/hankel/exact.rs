use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DetResult, Engine, HankelError, HankelQuery};

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(p, k);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Exact Hankel determinant of the `2n - 1` rational values.
pub fn det_rational_values(values: &[BigRational]) -> BigRational {
    let n = values.len().div_ceil(2);
    let l = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = values.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect();
    let m: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| ints[i + j].clone()).collect()).collect();
    let scale = num_traits::pow(l, n);
    BigRational::new(det_bareiss(m), scale)
}

/// The exact entries `h(2 + r), ..., h(2n + r)` of a query.
pub fn exact_values(q: &HankelQuery<'_>) -> Result<Vec<BigRational>, HankelError> {
    (0..q.values_len() as i64)
        .map(|i| {
            q.spec
                .exact_value(q.first_argument() + i)
                .ok_or_else(|| HankelError::NotRationalSeries(q.spec.name().into()))
        })
        .collect()
}

/// Exact `H_n^(r)` for specs with rational values.
pub fn det_exact_rational(q: &HankelQuery<'_>) -> Result<DetResult, HankelError> {
    let values = exact_values(q)?;
    Ok(DetResult::from_exact(det_rational_values(&values), Engine::Exact, q.n, q.r))
}
