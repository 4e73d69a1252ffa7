use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{build_hankel, det_lu, HankelError, HankelMatrix, HankelQuery};
use crate::numerics::Ball;

/// Factorisation of `H_n^(r)` obtained by iterating the one-step
/// condensation identity.
///
/// With `R(k, rho) = H_k^(rho) / H_{k-1}^(rho)` and
/// `c(k, rho) = 1 - (H_k^(rho+1))^2 / (H_k^(rho) H_k^(rho+2))`, one step reads
/// `R(k+1, rho) = R(k, rho+2) c(k, rho)`, hence
///
/// `H_n^(r) = h(2+r) * prod_{i=2}^n R(2, r+2(i-2)) * prod_{i=2}^n prod_{j=0}^{i-3} c(i-1-j, r+2j)`.
#[derive(Clone, Debug)]
pub struct Telescoping {
    pub first_value: Ball,
    /// `prod_{i=2}^n H_2^(r+2(i-2)) / H_1^(r+2(i-2))`.
    pub ratio_product: Ball,
    pub correction_product: Ball,
    pub correction_factors: usize,
    pub reconstruction: Ball,
    /// `H_n^(r)` from ball LU.
    pub direct: Ball,
    pub agrees: bool,
    pub log_ratio_product: Option<Ball>,
    /// The double product with the superscripts as printed in the source
    /// formula, `1 - (H_{i-j-1}^(r+j+1))^2 / (H_{i-j-1}^(r) H_{i-j-1}^(r+2j))`.
    pub printed_correction_product: Option<Ball>,
    pub printed_agrees: Option<bool>,
}

struct Dets<'a> {
    matrix: &'a HankelMatrix,
    r: i64,
    cache: BTreeMap<(usize, i64), Ball>,
}

impl Dets<'_> {
    fn get(&mut self, k: usize, rho: i64) -> Ball {
        if let Some(b) = self.cache.get(&(k, rho)) {
            return b.clone();
        }
        let start = (rho - self.r) as usize;
        let vals = &self.matrix.values()[start..start + 2 * k - 1];
        let rows: Vec<Vec<Ball>> = (0..k).map(|i| (0..k).map(|j| vals[i + j].clone()).collect()).collect();
        let d = det_lu(&rows);
        self.cache.insert((k, rho), d.clone());
        d
    }

    fn nonzero(&mut self, k: usize, rho: i64) -> Result<Ball, HankelError> {
        let d = self.get(k, rho);
        if d.contains_zero() {
            return Err(HankelError::InteriorDeterminantUnresolved { k, rho });
        }
        Ok(d)
    }
}

pub fn telescoping_decomposition(q: &HankelQuery<'_>, prec: u32) -> Result<Telescoping, HankelError> {
    if q.n < 2 {
        return Err(HankelError::InvalidQuery("the decomposition needs n >= 2".into()));
    }
    let (n, r) = (q.n, q.r);
    let m = build_hankel(q, prec)?;
    let mut dets = Dets { matrix: &m, r, cache: BTreeMap::new() };
    let first_value = dets.nonzero(1, r)?;

    let mut ratio_product = Ball::one(prec);
    for i in 2..=n {
        let rho = r + 2 * (i as i64 - 2);
        let num = dets.get(2, rho);
        let den = dets.nonzero(1, rho)?;
        ratio_product = &ratio_product * &num.div(&den)?;
    }

    let mut correction_product = Ball::one(prec);
    let mut correction_factors = 0;
    for i in 2..=n {
        for j in 0..i.saturating_sub(2) {
            let k = i - 1 - j;
            let rho = r + 2 * j as i64;
            let a = dets.get(k, rho + 1);
            let b = dets.nonzero(k, rho)?;
            let c = dets.nonzero(k, rho + 2)?;
            let factor = &Ball::one(prec) - &a.sqr().div(&(&b * &c))?;
            correction_product = &correction_product * &factor;
            correction_factors += 1;
        }
    }

    let reconstruction = &(&first_value * &ratio_product) * &correction_product;
    let direct = dets.get(n, r);
    let agrees = reconstruction.overlaps(&direct);
    let log_ratio_product = if ratio_product.is_positive() { ratio_product.ln().ok() } else { None };

    let printed = printed_product(&mut dets, n, r, prec);
    let printed_agrees = printed
        .as_ref()
        .map(|p| (&(&first_value * &ratio_product) * p).overlaps(&direct));

    Ok(Telescoping {
        first_value,
        ratio_product,
        correction_product,
        correction_factors,
        reconstruction,
        direct,
        agrees,
        log_ratio_product,
        printed_correction_product: printed,
        printed_agrees,
    })
}

fn printed_product(dets: &mut Dets<'_>, n: usize, r: i64, prec: u32) -> Option<Ball> {
    let mut prod = Ball::one(prec);
    for i in 2..=n {
        for j in 0..i.saturating_sub(2) {
            let k = i - j - 1;
            let a = dets.get(k, r + j as i64 + 1);
            let b = dets.nonzero(k, r).ok()?;
            let c = dets.nonzero(k, r + 2 * j as i64).ok()?;
            let factor = &Ball::one(prec) - &a.sqr().div(&(&b * &c)).ok()?;
            prod = &prod * &factor;
        }
    }
    Some(prod)
}
