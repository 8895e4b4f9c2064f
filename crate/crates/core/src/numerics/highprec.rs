use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Rational};

/// Default significand precision in bits.
pub const DEFAULT_PRECISION: u32 = 192;

/// Default relative tolerance for numeric comparisons is 2^-DEFAULT_TOLERANCE_BITS.
pub const DEFAULT_TOLERANCE_BITS: u32 = 80;

/// Precision from `RIA_PRECISION_BITS` when set to a value ≥ 64, else 192.
pub fn default_precision() -> u32 {
    std::env::var("RIA_PRECISION_BITS")
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&p| (64..=1 << 20).contains(&p))
        .unwrap_or(DEFAULT_PRECISION)
}

/// Real number with an explicit binary precision.
///
/// Binary operations run at the larger of the two operand precisions and
/// round to nearest.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct HighPrecReal(Float);

impl HighPrecReal {
    pub fn from_f64(value: f64, prec: u32) -> Self {
        HighPrecReal(Float::with_val(prec, value))
    }

    pub fn from_rational(value: &Rational, prec: u32) -> Self {
        HighPrecReal(Float::with_val(prec, value))
    }

    pub fn from_i64(value: i64, prec: u32) -> Self {
        HighPrecReal(Float::with_val(prec, value))
    }

    pub fn from_float(value: Float) -> Self {
        HighPrecReal(value)
    }

    pub fn zero(prec: u32) -> Self {
        HighPrecReal(Float::new(prec))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Exact rational value of the stored significand; `None` for NaN or ±∞.
    pub fn to_rational(&self) -> Option<Rational> {
        self.0.to_rational()
    }

    /// Same value re-rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        HighPrecReal(Float::with_val(prec, &self.0))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn signum(&self) -> Ordering {
        self.0.cmp0().unwrap_or(Ordering::Equal)
    }

    pub fn abs(&self) -> Self {
        HighPrecReal(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Self {
        HighPrecReal(self.0.clone().sqrt())
    }

    pub fn ln(&self) -> Self {
        HighPrecReal(self.0.clone().ln())
    }

    pub fn powf(&self, exponent: &HighPrecReal) -> Self {
        let prec = self.prec().max(exponent.prec());
        let base = Float::with_val(prec, &self.0);
        HighPrecReal(Float::with_val(prec, base.pow(&exponent.0)))
    }

    pub fn powi(&self, exponent: i32) -> Self {
        HighPrecReal(self.0.clone().pow(exponent))
    }

    /// Largest integer ≤ self. Panics on NaN or infinity.
    pub fn floor_integer(&self) -> rug::Integer {
        self.0.to_integer_round(Round::Down).map(|(i, _)| i).expect("floor of a finite value")
    }

    /// Smallest integer ≥ self. Panics on NaN or infinity.
    pub fn ceil_integer(&self) -> rug::Integer {
        self.0.to_integer_round(Round::Up).map(|(i, _)| i).expect("ceil of a finite value")
    }

    fn binary(&self, rhs: &Self, op: impl FnOnce(Float, &Float) -> Float) -> Self {
        let prec = self.prec().max(rhs.prec());
        HighPrecReal(op(Float::with_val(prec, &self.0), &rhs.0))
    }
}

impl fmt::Display for HighPrecReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix(10, Some(24)))
    }
}

impl Add for &HighPrecReal {
    type Output = HighPrecReal;
    fn add(self, rhs: &HighPrecReal) -> HighPrecReal {
        self.binary(rhs, |a, b| a + b)
    }
}

impl Sub for &HighPrecReal {
    type Output = HighPrecReal;
    fn sub(self, rhs: &HighPrecReal) -> HighPrecReal {
        self.binary(rhs, |a, b| a - b)
    }
}

impl Mul for &HighPrecReal {
    type Output = HighPrecReal;
    fn mul(self, rhs: &HighPrecReal) -> HighPrecReal {
        self.binary(rhs, |a, b| a * b)
    }
}

impl Div for &HighPrecReal {
    type Output = HighPrecReal;
    fn div(self, rhs: &HighPrecReal) -> HighPrecReal {
        self.binary(rhs, |a, b| a / b)
    }
}

impl Neg for &HighPrecReal {
    type Output = HighPrecReal;
    fn neg(self) -> HighPrecReal {
        HighPrecReal(-self.0.clone())
    }
}
