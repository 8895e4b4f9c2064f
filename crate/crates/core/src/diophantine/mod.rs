//! Continued fractions, Hurwitz approximants and brute-force
//! Khintchine–Groshev constants.

mod continued_fraction;
mod hurwitz;
mod khintchine;

pub use continued_fraction::{cf_expand, CfTarget, ContinuedFraction};
pub use hurwitz::{hurwitz_select, HurwitzApproximant};
pub use khintchine::{khintchine_kappa, linear_form_value, KhintchineEstimate};
