use std::cmp::Ordering;

use rug::{Float, Integer, Rational};

use super::{cf_expand, CfTarget};
use crate::numerics::{HighPrecReal, QuadFieldElement};
use crate::{Error, Result};

/// n/m with |h − n/m| < 1/(√5 m²).
#[derive(Clone, Debug, PartialEq)]
pub struct HurwitzApproximant {
    pub n: Integer,
    pub m: Integer,
    /// h − n/m.
    pub delta: HighPrecReal,
    /// h − n/m exactly, when h is a field element.
    pub exact_delta: Option<QuadFieldElement>,
}

impl HurwitzApproximant {
    pub fn ratio(&self) -> Rational {
        Rational::from((self.n.clone(), self.m.clone()))
    }
}

enum Verdict {
    Pass,
    Fail,
    Unsure,
}

fn exact_check(h: &QuadFieldElement, c: &Rational) -> Result<(bool, QuadFieldElement)> {
    let delta = h.checked_sub(&QuadFieldElement::from_rational(h.field(), c.clone()))?;
    // 5·δ²·m⁴ < 1, both sides nonnegative.
    let m2 = Integer::from(c.denom().square_ref());
    let m4 = Integer::from(m2.square_ref());
    let lhs = delta.checked_mul(&delta)?.scale(&Rational::from(m4 * 5u32));
    let ok = lhs.checked_sub(&QuadFieldElement::one(h.field()))?.signum() == Ordering::Less;
    Ok((ok, delta))
}

fn numeric_check(h: &HighPrecReal, c: &Rational) -> (Verdict, HighPrecReal) {
    let prec = h.prec();
    let delta = h - &HighPrecReal::from_rational(c, prec);
    let err = &h.abs() * &HighPrecReal::from_float(Float::with_val(prec, Float::i_exp(1, 4 - prec as i32)));
    let m2 = HighPrecReal::from_rational(&Rational::from(c.denom().square_ref()), prec);
    let s5 = HighPrecReal::from_i64(5, prec).sqrt();
    let scale = &m2 * &s5;
    let one = HighPrecReal::from_i64(1, prec);
    let hi = &(&delta.abs() + &err) * &scale;
    let lo = &(&delta.abs() - &err) * &scale;
    let verdict = if hi < one {
        Verdict::Pass
    } else if lo >= one {
        Verdict::Fail
    } else {
        Verdict::Unsure
    };
    (verdict, delta)
}

/// First convergent n/m of `h` with m ≥ `m_min` satisfying the Hurwitz bound.
pub fn hurwitz_select(h: &CfTarget, m_min: u64) -> Result<HurwitzApproximant> {
    if h.as_rational().is_some() {
        return Err(Error::RationalInput);
    }
    if m_min == 0 {
        return Err(Error::InvalidArgument("m_min must be ≥ 1".into()));
    }
    let mut k = 16;
    let mut scanned = 0;
    loop {
        let cf = match cf_expand(h, k) {
            Ok(cf) => cf,
            Err(Error::PrecisionExhausted { terms }) if terms > scanned => cf_expand(h, terms)?,
            Err(e) => return Err(e),
        };
        let available = cf.convergents.len();
        for c in &cf.convergents[scanned..] {
            if *c.denom() < m_min {
                continue;
            }
            match h {
                CfTarget::Field(e) => {
                    let (ok, delta) = exact_check(e, c)?;
                    if ok {
                        return Ok(HurwitzApproximant {
                            n: c.numer().clone(),
                            m: c.denom().clone(),
                            delta: delta.to_real(crate::numerics::default_precision()),
                            exact_delta: Some(delta),
                        });
                    }
                }
                CfTarget::Real(v) => match numeric_check(v, c) {
                    (Verdict::Pass, delta) => {
                        return Ok(HurwitzApproximant {
                            n: c.numer().clone(),
                            m: c.denom().clone(),
                            delta,
                            exact_delta: None,
                        })
                    }
                    (Verdict::Fail, _) => {}
                    (Verdict::Unsure, _) => return Err(Error::PrecisionExhausted { terms: available }),
                },
                CfTarget::Rational(_) => unreachable!(),
            }
        }
        if available < k {
            return Err(Error::PrecisionExhausted { terms: available });
        }
        scanned = available;
        k *= 2;
        if k > 1 << 16 {
            return Err(Error::PrecisionExhausted { terms: available });
        }
    }
}
