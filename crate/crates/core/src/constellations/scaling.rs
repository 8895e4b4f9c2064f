use rug::Float;
use serde::{Deserialize, Serialize};

use crate::numerics::default_precision;
use crate::{Error, Result};

/// Slack added before the floor in [`multilayer_levels`] so that powers on the
/// aligned grid P = W^{2L/(1−2ε)} do not lose a level to rounding.
pub const LEVEL_TOLERANCE: f64 = 1e-9;

/// Q = ⌊γ P^{(1−ε)/(2(m+1+ε))}⌋ and amplitude γ′ P^{(m+2ε)/(2(m+1+ε))}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerScaling {
    pub power: f64,
    pub epsilon: f64,
    pub m: u32,
    pub gamma: f64,
    pub gamma_prime: f64,
    pub q: u64,
    pub amplitude: f64,
}

impl PowerScaling {
    /// (1−ε)/(2(m+1+ε)).
    pub fn q_exponent(&self) -> f64 {
        (1.0 - self.epsilon) / (2.0 * (f64::from(self.m) + 1.0 + self.epsilon))
    }

    /// (m+2ε)/(2(m+1+ε)).
    pub fn amplitude_exponent(&self) -> f64 {
        (f64::from(self.m) + 2.0 * self.epsilon) / (2.0 * (f64::from(self.m) + 1.0 + self.epsilon))
    }
}

fn check_power(power: f64) -> Result<()> {
    if !(power > 0.0) || !power.is_finite() {
        return Err(Error::InvalidArgument(format!("power must be positive and finite, got {power}")));
    }
    Ok(())
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    Ok(())
}

/// γ·P^e evaluated at working precision.
fn scaled_power(gamma: f64, power: f64, exponent: f64) -> Float {
    let prec = default_precision();
    let p = Float::with_val(prec, power);
    let e = Float::with_val(prec, exponent);
    Float::with_val(prec, p.ln() * e).exp() * gamma
}

pub fn scaling(power: f64, epsilon: f64, m: u32, gamma: f64, gamma_prime: f64) -> Result<PowerScaling> {
    check_power(power)?;
    check_epsilon(epsilon)?;
    if m < 1 {
        return Err(Error::InvalidArgument("m must be ≥ 1".into()));
    }
    if !(gamma > 0.0 && gamma_prime > 0.0) {
        return Err(Error::InvalidArgument("gamma and gamma_prime must be positive".into()));
    }
    let mut s = PowerScaling { power, epsilon, m, gamma, gamma_prime, q: 0, amplitude: 0.0 };
    let q = scaled_power(gamma, power, s.q_exponent()).floor();
    s.q = q.to_integer().and_then(|i| i.to_u64()).ok_or(Error::Overflow("Q"))?;
    s.amplitude = scaled_power(gamma_prime, power, s.amplitude_exponent()).to_f64();
    Ok(s)
}

/// A = √((W²−1)P)/(a W^L).
pub fn multilayer_amplitude(base: u64, digit_bound: u64, levels: u32, power: f64) -> Result<f64> {
    check_power(power)?;
    if base < 2 || digit_bound < 1 {
        return Err(Error::InvalidArgument("need W ≥ 2 and a ≥ 1".into()));
    }
    let prec = default_precision();
    let w = Float::with_val(prec, base);
    let num = Float::with_val(prec, (Float::with_val(prec, &w * &w) - 1u32) * power).sqrt();
    let den = Float::with_val(prec, rug::ops::Pow::pow(w, levels)) * digit_bound;
    Ok((num / den).to_f64())
}

/// L = ⌊(0.5−ε)·log P / log W⌋; may be 0 when P is small.
pub fn multilayer_levels(power: f64, epsilon: f64, base: u64) -> Result<u32> {
    check_power(power)?;
    check_epsilon(epsilon)?;
    if base < 2 {
        return Err(Error::InvalidArgument(format!("base W must be ≥ 2, got {base}")));
    }
    let prec = default_precision();
    let x = Float::with_val(prec, power).ln() * (0.5 - epsilon) / Float::with_val(prec, base).ln();
    let l = (x + LEVEL_TOLERANCE).floor();
    if l < 0 {
        return Ok(0);
    }
    l.to_integer().and_then(|i| i.to_u32()).ok_or(Error::Overflow("L"))
}

/// The aligned grid point P = W^{2L/(1−2ε)}, where L levels fit exactly.
pub fn aligned_power(base: u64, epsilon: f64, levels: u32) -> Result<f64> {
    check_epsilon(epsilon)?;
    let prec = default_precision();
    let e = Float::with_val(prec, 2 * levels) / (1.0 - 2.0 * epsilon);
    Ok(Float::with_val(prec, Float::with_val(prec, base).ln() * e).exp().to_f64())
}
