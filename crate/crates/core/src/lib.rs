//! Real interference alignment laboratory.
//!
//! Data streams are modulated onto integer constellations and sent along
//! real "directions" whose rational independence keeps them separable at the
//! receiver. The crate builds the transmit schemes and received models for the
//! two-user X channel and the K-user / three-user Gaussian interference
//! channels, enumerates received constellations exactly, checks Property Γ and
//! minimum-distance guarantees, and measures symbol error rates and
//! degrees-of-freedom trends by seeded Monte Carlo.
//!
//! Module map:
//!
//! * [`numerics`]: big rationals, the biquadratic field Q(√d₁, √d₂),
//!   high-precision reals and the seeded random source.
//! * [`diophantine`]: continued fractions, Hurwitz approximants, brute-force
//!   Khintchine–Groshev constants.
//! * [`constellations`]: single-layer and multi-layer constellations and their
//!   power scaling laws.
//! * [`alignment`]: transmit schemes and per-receiver models for every channel.
//! * [`decoder`]: received-constellation enumeration, d_min, Property Γ, hard
//!   decoding, Monte Carlo and DOF slopes.
//! * [`harness`]: experiment configs, sweeps, gain scans, CSV and manifests.

// `!(x > 0.0)` is the NaN-rejecting form used for argument checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alignment;
pub mod constellations;
pub mod decoder;
pub mod diophantine;
mod error;
pub mod harness;
pub mod numerics;

pub use error::{Error, Result};
