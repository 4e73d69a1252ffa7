use alloc::vec::Vec;

use super::{build_hankel, DetResult, Engine, HankelError, HankelQuery};
use crate::numerics::Ball;

/// The triangular table `H_k^(r + j)` for `k = 0..=n` and
/// `0 <= j <= 2(n - k)`, with `H_0 = 1` and `H_1^(rho) = h(2 + rho)`.
#[derive(Clone, Debug)]
pub struct DodgsonTable {
    r: i64,
    rows: Vec<Vec<Ball>>,
}

impl DodgsonTable {
    /// `H_k^(rho)`, if it lies in the table.
    pub fn get(&self, k: usize, rho: i64) -> Option<&Ball> {
        let j = usize::try_from(rho - self.r).ok()?;
        self.rows.get(k)?.get(j)
    }

    pub fn size(&self) -> usize {
        self.rows.len() - 1
    }
}

/// Builds the table from the values `h(2 + r), ..., h(2n + r)` with
/// `H_{k+1}^(rho) = (H_k^(rho) H_k^(rho+2) - (H_k^(rho+1))^2) / H_{k-1}^(rho+2)`.
pub fn dodgson_table(values: &[Ball], r: i64) -> Result<DodgsonTable, HankelError> {
    if values.is_empty() || values.len().is_multiple_of(2) {
        return Err(HankelError::InvalidQuery("need an odd number of values".into()));
    }
    let n = values.len().div_ceil(2);
    let prec = values.iter().map(Ball::prec).max().unwrap_or(64);
    let mut rows: Vec<Vec<Ball>> = Vec::with_capacity(n + 1);
    rows.push((0..=2 * n).map(|_| Ball::one(prec)).collect());
    rows.push(values.to_vec());
    for k in 1..n {
        let cur = &rows[k];
        let prev = &rows[k - 1];
        let width = 2 * (n - k - 1) + 1;
        let mut next = Vec::with_capacity(width);
        for j in 0..width {
            let numer = &(&cur[j] * &cur[j + 2]) - &cur[j + 1].sqr();
            let value = numer.div(&prev[j + 2]).map_err(|_| HankelError::DivisorContainsZero)?;
            next.push(value);
        }
        rows.push(next);
    }
    Ok(DodgsonTable { r, rows })
}

/// `H_n^(r)` by Dodgson condensation at `prec` bits.
pub fn det_dodgson(q: &HankelQuery<'_>, prec: u32) -> Result<DetResult, HankelError> {
    let m = build_hankel(q, prec)?;
    let table = dodgson_table(m.values(), q.r)?;
    let value = table.get(q.n, q.r).cloned().expect("table holds the requested entry");
    Ok(DetResult::from_ball(value, Engine::Dodgson, prec, q.n, q.r))
}
