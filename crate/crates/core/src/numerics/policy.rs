use alloc::vec::Vec;

use super::NumericsError;

/// Default ceiling on working precision.
pub const DEFAULT_MAX_BITS: u32 = 4096;

/// Floor on the initial precision chosen for a determinant.
const MIN_INITIAL_BITS: u32 = 256;

/// Precision escalation schedule: start at `initial_bits`, multiply by
/// `growth` until `max_bits` is reached. The last rung is always `max_bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    initial_bits: u32,
    max_bits: u32,
    growth_num: u32,
    growth_den: u32,
}

impl PrecisionPolicy {
    pub fn new(initial_bits: u32, max_bits: u32) -> Result<Self, NumericsError> {
        if initial_bits == 0 || initial_bits > max_bits {
            return Err(NumericsError::InvalidPolicy);
        }
        Ok(PrecisionPolicy { initial_bits, max_bits, growth_num: 2, growth_den: 1 })
    }

    /// Growth factor `num/den`; must exceed one.
    pub fn with_growth(mut self, num: u32, den: u32) -> Result<Self, NumericsError> {
        if den == 0 || num <= den {
            return Err(NumericsError::InvalidPolicy);
        }
        self.growth_num = num;
        self.growth_den = den;
        Ok(self)
    }

    /// A single rung: no escalation.
    pub fn fixed(bits: u32) -> Self {
        let bits = bits.max(2);
        PrecisionPolicy { initial_bits: bits, max_bits: bits, growth_num: 2, growth_den: 1 }
    }

    /// Starting precision for a size-`n` Hankel determinant,
    /// `max(256, ceil(1.5 n^2 log2(2n)) + 64)`, sized from the expected
    /// magnitude `(2n / e^1.5)^(-n^2)` of zeta Hankel determinants.
    pub fn for_hankel(n: usize, max_bits: u32) -> Self {
        let initial = hankel_initial_bits(n).min(max_bits);
        PrecisionPolicy { initial_bits: initial, max_bits, growth_num: 2, growth_den: 1 }
    }

    pub fn initial_bits(&self) -> u32 {
        self.initial_bits
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    /// The sequence of precisions to try, strictly increasing.
    pub fn ladder(&self) -> Vec<u32> {
        let mut out = Vec::new();
        let mut bits = u64::from(self.initial_bits);
        let max = u64::from(self.max_bits);
        while bits < max {
            out.push(bits as u32);
            let next = bits * u64::from(self.growth_num) / u64::from(self.growth_den);
            bits = next.max(bits + 1);
        }
        out.push(self.max_bits);
        out
    }
}

/// How precision is chosen for each determinant of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecisionChoice {
    /// Size-dependent start with escalation up to `max_bits`.
    Auto { max_bits: u32 },
    Fixed(u32),
}

impl PrecisionChoice {
    pub fn policy_for(&self, n: usize) -> PrecisionPolicy {
        match *self {
            PrecisionChoice::Auto { max_bits } => PrecisionPolicy::for_hankel(n, max_bits),
            PrecisionChoice::Fixed(bits) => PrecisionPolicy::fixed(bits),
        }
    }
}

impl Default for PrecisionChoice {
    fn default() -> Self {
        PrecisionChoice::Auto { max_bits: DEFAULT_MAX_BITS }
    }
}

pub fn hankel_initial_bits(n: usize) -> u32 {
    let nf = n.max(1) as f64;
    let estimate = libm::ceil(1.5 * nf * nf * libm::log2(2.0 * nf)) as u32 + 64;
    estimate.max(MIN_INITIAL_BITS)
}
