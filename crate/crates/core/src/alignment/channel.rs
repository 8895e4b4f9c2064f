use std::fmt;

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::numerics::{default_precision, FieldDescriptor, HighPrecReal, QuadFieldElement};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GainMode {
    #[default]
    Exact,
    Numeric,
}

impl fmt::Display for GainMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GainMode::Exact => "exact",
            GainMode::Numeric => "numeric",
        })
    }
}

/// A channel gain or a product of gains.
#[derive(Clone, Debug, PartialEq)]
pub enum Gain {
    Exact(QuadFieldElement),
    Numeric(HighPrecReal),
}

impl Gain {
    pub fn exact_i64(field: FieldDescriptor, v: i64) -> Self {
        Gain::Exact(QuadFieldElement::from_i64(field, v))
    }

    pub fn exact_rational(field: FieldDescriptor, v: Rational) -> Self {
        Gain::Exact(QuadFieldElement::from_rational(field, v))
    }

    pub fn numeric(v: f64) -> Self {
        Gain::Numeric(HighPrecReal::from_f64(v, default_precision()))
    }

    pub fn mode(&self) -> GainMode {
        match self {
            Gain::Exact(_) => GainMode::Exact,
            Gain::Numeric(_) => GainMode::Numeric,
        }
    }

    pub fn as_exact(&self) -> Option<&QuadFieldElement> {
        match self {
            Gain::Exact(e) => Some(e),
            Gain::Numeric(_) => None,
        }
    }

    /// 1 in the same mode (and field) as `self`.
    pub fn one_like(&self) -> Gain {
        self.integer_like(1)
    }

    pub fn integer_like(&self, v: i64) -> Gain {
        match self {
            Gain::Exact(e) => Gain::exact_i64(e.field(), v),
            Gain::Numeric(x) => Gain::Numeric(HighPrecReal::from_i64(v, x.prec())),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Gain::Exact(e) => e.is_zero(),
            Gain::Numeric(x) => x.is_zero(),
        }
    }

    pub fn to_real(&self, prec: u32) -> HighPrecReal {
        match self {
            Gain::Exact(e) => e.to_real(prec),
            Gain::Numeric(x) => x.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Gain::Exact(e) => e.to_f64(),
            Gain::Numeric(x) => x.to_f64(),
        }
    }

    pub fn mul(&self, other: &Gain) -> Result<Gain> {
        match (self, other) {
            (Gain::Exact(a), Gain::Exact(b)) => Ok(Gain::Exact(a.checked_mul(b)?)),
            (Gain::Numeric(a), Gain::Numeric(b)) => Ok(Gain::Numeric(a * b)),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn div(&self, other: &Gain) -> Result<Gain> {
        match (self, other) {
            (Gain::Exact(a), Gain::Exact(b)) => Ok(Gain::Exact(a.checked_div(b)?)),
            (Gain::Numeric(a), Gain::Numeric(b)) => {
                if b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Gain::Numeric(a / b))
            }
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Gain {
        match self {
            Gain::Exact(e) => Gain::Exact(e.scale(factor)),
            Gain::Numeric(x) => Gain::Numeric(x * &HighPrecReal::from_rational(factor, x.prec())),
        }
    }

    pub fn product(gains: &[&Gain]) -> Result<Gain> {
        let (first, rest) = gains.split_first().ok_or_else(|| Error::InvalidArgument("empty product".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, g| acc.mul(g))
    }
}

impl fmt::Display for Gain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gain::Exact(e) => write!(f, "{e}"),
            Gain::Numeric(x) => write!(f, "{}", x.to_f64()),
        }
    }
}

/// Gain matrix h[i][j] (receiver i, transmitter j), power P and noise σ².
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelInstance {
    gains: Vec<Vec<Gain>>,
    power: f64,
    sigma2: f64,
}

impl ChannelInstance {
    pub fn new(gains: Vec<Vec<Gain>>, power: f64, sigma2: f64) -> Result<Self> {
        let k = gains.len();
        if k == 0 || gains.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidArgument("gain matrix must be square and nonempty".into()));
        }
        let mode = gains[0][0].mode();
        for (i, row) in gains.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                if g.is_zero() {
                    return Err(Error::ZeroGain(i, j));
                }
                if g.mode() != mode {
                    return Err(Error::ModeMismatch);
                }
            }
        }
        if let Some(field) = gains[0][0].as_exact().map(|e| e.field()) {
            for row in &gains {
                for g in row {
                    field.check_same(&g.as_exact().expect("uniform mode").field())?;
                }
            }
        }
        if !(power > 0.0) {
            return Err(Error::InvalidArgument(format!("power must be positive, got {power}")));
        }
        if !(sigma2 >= 0.0) {
            return Err(Error::InvalidArgument(format!("noise variance must be ≥ 0, got {sigma2}")));
        }
        Ok(ChannelInstance { gains, power, sigma2 })
    }

    pub fn users(&self) -> usize {
        self.gains.len()
    }

    pub fn gain(&self, rx: usize, tx: usize) -> &Gain {
        &self.gains[rx][tx]
    }

    pub fn gains(&self) -> &[Vec<Gain>] {
        &self.gains
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn snr(&self) -> f64 {
        self.power / self.sigma2
    }

    pub fn mode(&self) -> GainMode {
        self.gains[0][0].mode()
    }

    pub fn with_power(&self, power: f64) -> Result<Self> {
        ChannelInstance::new(self.gains.clone(), power, self.sigma2)
    }
}
