//! Certified real arithmetic: dyadic midpoint-radius balls, elementary
//! functions and the precision-escalation policy.

mod ball;
pub mod decimal;
mod dyadic;
pub mod elementary;
mod mag;
mod policy;

pub use ball::{ball_arith, certify_sign, Ball, BallOp, Sign};
pub use dyadic::Dyadic;
pub use mag::Mag;
pub use policy::{hankel_initial_bits, PrecisionChoice, PrecisionPolicy, DEFAULT_MAX_BITS};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NumericsError {
    #[error("divisor ball contains zero")]
    DivisorContainsZero,
    #[error("logarithm of a ball that is not strictly positive")]
    LogOfNonpositiveBall,
    #[error("exponent is not an exact integer")]
    NonIntegerExponent,
    #[error("argument magnitude out of range")]
    ArgumentTooLarge,
    #[error("invalid precision policy")]
    InvalidPolicy,
}
