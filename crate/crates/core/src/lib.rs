//! Certified Hankel determinants of ordinary Dirichlet series.
//!
//! The crate is `no_std` (with `alloc`) and purely computational:
//!
//! * [`numerics`]: midpoint-radius ball arithmetic over dyadic numbers.
//! * [`sequences`]: Dirichlet series and explicit sequences, certified
//!   evaluation, minimal-index asymptotics and ratio envelopes.
//! * [`hankel`]: Hankel matrices and four determinant engines (ball LU,
//!   Dodgson condensation, the positive-term Monien expansion, exact
//!   fraction-free elimination).
//! * [`bounds`]: determinant envelopes, the factorial bound, quadratic
//!   decay verification and asymptotic-constant fits.
//! * [`rationality`]: reduced denominators, lcm ledgers and the
//!   integrality certificate `D_m^n H_n^(r)`.

#![no_std]

extern crate alloc;

pub mod bounds;
pub mod hankel;
pub mod numerics;
pub mod rationality;
pub mod sequences;

pub use numerics::{Ball, Sign};
