use alloc::vec::Vec;

use crate::numerics::{Ball, Dyadic, Mag};

/// Determinant enclosure by Gaussian elimination with partial pivoting on
/// the largest midpoint magnitude.
///
/// When every candidate pivot contains zero, the remaining Schur complement
/// is bounded by Hadamard's inequality (product of row 1-norms), which
/// yields a zero-centred enclosure instead of an error.
pub fn det_lu(matrix: &[Vec<Ball>]) -> Ball {
    let n = matrix.len();
    let prec = matrix.iter().flatten().map(Ball::prec).max().unwrap_or(64);
    if n == 0 {
        return Ball::one(prec);
    }
    let mut a: Vec<Vec<Ball>> = matrix.to_vec();
    let mut det = Ball::one(prec);
    let mut negate = false;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| a[i][k].mid().abs().cmp(&a[j][k].mid().abs())).unwrap_or(k);
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let pivot = a[k][k].clone();
        if pivot.contains_zero() {
            let mut bound = Mag::from_u64(1);
            for row in &a[k..] {
                let norm = row[k..].iter().fold(Mag::ZERO, |acc, x| acc.add_up(x.mag_upper()));
                bound = bound.mul_up(norm);
            }
            return Ball::new(Dyadic::zero(), det.mag_upper().mul_up(bound), prec);
        }
        det = &det * &pivot;
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in rest.iter_mut() {
            let factor = row[k].div(&pivot).expect("pivot excludes zero");
            for j in (k + 1)..n {
                row[j] = &row[j] - &(&factor * &pivot_row[j]);
            }
        }
    }
    if negate {
        -det
    } else {
        det
    }
}
