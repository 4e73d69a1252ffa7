//! Seeded random rational sequences for identity tests.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 20` and `1 <= q <= 9`.
pub fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let p: i64 = rng.gen_range(-20..=20);
    let q: i64 = rng.gen_range(1..=9);
    BigRational::new(p.into(), q.into())
}

pub fn rational_sequence<R: Rng>(rng: &mut R, len: usize) -> Vec<BigRational> {
    (0..len).map(|_| small_rational(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let a = rational_sequence(&mut seeded(7), 20);
        let b = rational_sequence(&mut seeded(7), 20);
        let c = rational_sequence(&mut seeded(8), 20);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
