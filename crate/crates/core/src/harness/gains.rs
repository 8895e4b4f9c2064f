use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::alignment::{Gain, GainMode};
use crate::numerics::{default_precision, FieldDescriptor, QuadFieldElement, RandomSource};
use crate::{Error, Result};

/// Exact random gains are rounded to this many decimal places.
pub const RANDOM_DECIMALS: u32 = 4;

/// A rational coordinate: an integer or a "p/q" / decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoordSpec {
    Integer(i64),
    Text(String),
}

impl CoordSpec {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            CoordSpec::Integer(v) => Ok(Rational::from(*v)),
            CoordSpec::Text(s) => parse_rational(s),
        }
    }
}

/// How a gain is written in a config file.
///
/// - `3`, `"-2/5"`, `"1.25"`, `1.25`: exact rationals (decimals are read exactly).
/// - `{"coords": [0, 1, 0, 0]}`: c₀ + c₁√d₁ + c₂√d₂ + c₃√(d₁d₂), optionally with `"field"`.
/// - `"random-uniform"` or `"random-uniform[lo,hi]"`: drawn from the run's seed.
/// - `{"numeric": 1.414}`: a floating-point gain, numeric mode only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GainSpec {
    Integer(i64),
    Decimal(f64),
    Text(String),
    Coords {
        coords: [CoordSpec; 4],
        #[serde(default, skip_serializing_if = "Option::is_none")]
        field: Option<FieldDescriptor>,
    },
    Numeric {
        numeric: f64,
    },
}

/// Parses "p/q", an integer, or a plain decimal such as "-0.125".
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Config(format!("cannot read {text:?} as a rational number"));
    if t.contains('/') {
        let r: Rational = t.parse().map_err(|_| bad())?;
        return Ok(r);
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: Integer = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let r = Rational::from((digits, Integer::from(Integer::u_pow_u(10, frac.len() as u32))));
    Ok(if neg { -r } else { r })
}

fn parse_random(text: &str, default: [f64; 2]) -> Result<Option<[f64; 2]>> {
    let Some(rest) = text.trim().strip_prefix("random-uniform") else {
        return Ok(None);
    };
    if rest.is_empty() {
        return Ok(Some(default));
    }
    let bad = || Error::Config(format!("malformed random gain {text:?}; expected random-uniform[lo,hi]"));
    let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
    let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(bad());
    }
    Ok(Some([lo, hi]))
}

impl GainSpec {
    pub fn coords(c: [i64; 4]) -> Self {
        GainSpec::Coords { coords: c.map(CoordSpec::Integer), field: None }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, GainSpec::Text(t) if t.trim().starts_with("random-uniform"))
    }

    /// Builds the gain. Random specs consume one draw from `rng`.
    pub fn resolve(
        &self,
        mode: GainMode,
        field: FieldDescriptor,
        range: [f64; 2],
        rng: &mut RandomSource,
    ) -> Result<Gain> {
        let exact = |q: Rational| match mode {
            GainMode::Exact => Gain::exact_rational(field, q),
            GainMode::Numeric => Gain::numeric(q.to_f64()),
        };
        match self {
            GainSpec::Integer(v) => Ok(exact(Rational::from(*v))),
            GainSpec::Decimal(v) => {
                if !v.is_finite() {
                    return Err(Error::Config(format!("gain {v} is not finite")));
                }
                Ok(exact(parse_rational(&v.to_string())?))
            }
            GainSpec::Text(t) => match parse_random(t, range)? {
                Some([lo, hi]) => {
                    let x = rng.uniform_range(lo, hi);
                    Ok(match mode {
                        GainMode::Exact => {
                            let scale = 10f64.powi(RANDOM_DECIMALS as i32);
                            let n = Integer::from_f64((x * scale).round()).expect("finite");
                            let q = Rational::from((n, Integer::from(Integer::u_pow_u(10, RANDOM_DECIMALS))));
                            Gain::exact_rational(field, q)
                        }
                        GainMode::Numeric => Gain::numeric(x),
                    })
                }
                None => Ok(exact(parse_rational(t)?)),
            },
            GainSpec::Coords { coords, field: own } => {
                let f = own.unwrap_or(field);
                let c = [0, 1, 2, 3].map(|i| coords[i].to_rational());
                let [a, b, c2, d] = c;
                let e = QuadFieldElement::new(f, [a?, b?, c2?, d?]);
                Ok(match mode {
                    GainMode::Exact => Gain::Exact(e),
                    GainMode::Numeric => Gain::Numeric(e.to_real(default_precision())),
                })
            }
            GainSpec::Numeric { numeric } => match mode {
                GainMode::Numeric if numeric.is_finite() => Ok(Gain::numeric(*numeric)),
                GainMode::Numeric => Err(Error::Config(format!("gain {numeric} is not finite"))),
                GainMode::Exact => Err(Error::Config(
                    "numeric gains are not allowed in exact mode; give field coordinates instead".into(),
                )),
            },
        }
    }
}

/// Resolves a matrix row by row; random entries draw in row-major order.
pub fn resolve_matrix(
    specs: &[Vec<GainSpec>],
    mode: GainMode,
    field: FieldDescriptor,
    range: [f64; 2],
    rng: &mut RandomSource,
) -> Result<Vec<Vec<Gain>>> {
    specs.iter().map(|row| row.iter().map(|g| g.resolve(mode, field, range, rng)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(json: &str, mode: GainMode) -> Result<Gain> {
        let spec: GainSpec = serde_json::from_str(json).unwrap();
        spec.resolve(mode, FieldDescriptor::default(), [0.5, 2.0], &mut RandomSource::new(0, 0))
    }

    #[test]
    fn literal_forms() {
        let f = FieldDescriptor::default();
        assert_eq!(resolve("3", GainMode::Exact).unwrap(), Gain::exact_i64(f, 3));
        assert_eq!(resolve("\"-2/6\"", GainMode::Exact).unwrap(), Gain::exact_rational(f, Rational::from((-1, 3))));
        assert_eq!(resolve("\"1.25\"", GainMode::Exact).unwrap(), Gain::exact_rational(f, Rational::from((5, 4))));
        assert_eq!(resolve("0.1", GainMode::Exact).unwrap(), Gain::exact_rational(f, Rational::from((1, 10))));
        let root2 = resolve(r#"{"coords": [0, 1, 0, 0]}"#, GainMode::Exact).unwrap();
        assert_eq!(root2, Gain::Exact(QuadFieldElement::basis(f, 1)));
        let root5 =
            resolve(r#"{"coords": ["1/2", "1/2", 0, 0], "field": {"d1": 5, "d2": 2}}"#, GainMode::Exact).unwrap();
        assert!((root5.to_f64() - 1.618033988749895).abs() < 1e-15);
        assert!(resolve(r#"{"numeric": 1.5}"#, GainMode::Exact).is_err());
        assert!((resolve(r#"{"numeric": 1.5}"#, GainMode::Numeric).unwrap().to_f64() - 1.5).abs() < 1e-300);
        assert!(resolve("\"abc\"", GainMode::Exact).is_err());
        assert!(resolve("\"1.\"", GainMode::Exact).is_ok());
        assert!(resolve("\".\"", GainMode::Exact).is_err());
    }

    #[test]
    fn random_gains() {
        let g = resolve("\"random-uniform\"", GainMode::Exact).unwrap();
        let q = g.as_exact().unwrap().as_rational().unwrap().clone();
        assert!(q >= (1, 2) && q <= 2);
        assert!(Integer::from(10_000).is_divisible(q.denom()));
        let g = resolve("\"random-uniform[3,4]\"", GainMode::Numeric).unwrap();
        assert!((3.0..4.0).contains(&g.to_f64()));
        assert!(resolve("\"random-uniform[4,3]\"", GainMode::Numeric).is_err());
    }
}
