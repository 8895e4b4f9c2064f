//! Exact and high-precision arithmetic.
//!
//! Exact gains live in the biquadratic field Q(√d₁, √d₂) ([`QuadFieldElement`]);
//! numeric gains are [`HighPrecReal`] values. [`RandomSource`] is the only
//! mutable type here and is meant to be owned by a single worker.

mod highprec;
mod quadfield;
mod random;
mod rank;

pub use highprec::{default_precision, HighPrecReal, DEFAULT_PRECISION, DEFAULT_TOLERANCE_BITS};
pub use quadfield::{qf_arith, qf_to_real, FieldDescriptor, QfOp, QuadFieldElement};
pub use random::{gaussian_sample, RandomSource};
pub use rank::{rational_basis, rational_rank, RationalBasis};

/// Arbitrary-size rational, always in lowest terms with a positive denominator.
pub type ExactRational = rug::Rational;
