use std::cmp::Ordering;

use rug::{Float, Integer, Rational};

use crate::diophantine::{hurwitz_select, CfTarget, HurwitzApproximant};
use crate::numerics::{default_precision, HighPrecReal, QuadFieldElement};
use crate::{Error, Result};

/// Digit bound a and base W for an irrational gain h.
///
/// a = ⌊m^{1−ε}√5/4⌋, margin = 1/m − 4(a−1)|δ|,
/// W = ⌈2(1+2h)(a−1)/margin⌉ + 1.
#[derive(Clone, Debug, PartialEq)]
pub struct IrrationalSelection {
    pub h: CfTarget,
    pub approximant: HurwitzApproximant,
    pub epsilon: f64,
    pub a: u64,
    pub w: u64,
    pub margin: HighPrecReal,
    /// The margin as a field element when h is exact.
    pub exact_margin: Option<QuadFieldElement>,
    /// a ≤ 1: the constellation has a single point.
    pub degenerate: bool,
}

pub fn select_irrational(h: &CfTarget, epsilon: f64, m_min: u64) -> Result<IrrationalSelection> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
    }
    if m_min < 2 {
        return Err(Error::InvalidArgument("m_min must be ≥ 2".into()));
    }
    let approximant = hurwitz_select(h, m_min)?;
    let prec = default_precision().max(h.to_real(64).prec());
    let m = Float::with_val(prec, &approximant.m);
    let a = Float::with_val(prec, m.clone().ln() * (1.0 - epsilon)).exp() * Float::with_val(prec, 5).sqrt() / 4u32;
    let a = a.floor().to_integer().and_then(|i| i.to_u64()).ok_or(Error::Overflow("a"))?;
    let am1 = Integer::from(a.saturating_sub(1));
    let inv_m = Rational::from((Integer::from(1), approximant.m.clone()));

    let (margin, exact_margin, ceil) = match (h, &approximant.exact_delta) {
        (CfTarget::Field(e), Some(delta)) => {
            let field = e.field();
            let four_am1 = Rational::from(Integer::from(&am1 * 4u32));
            let margin = QuadFieldElement::from_rational(field, inv_m).checked_sub(&delta.abs().scale(&four_am1))?;
            if margin.signum() != Ordering::Greater {
                return Err(Error::InvalidArgument("selection margin is not positive".into()));
            }
            let one_plus_2h = QuadFieldElement::one(field).checked_add(&e.scale(&Rational::from(2)))?;
            let x = one_plus_2h.scale(&Rational::from(Integer::from(&am1 * 2u32))).checked_div(&margin)?;
            let ceil = -x.neg().floor();
            (margin.to_real(prec), Some(margin), ceil)
        }
        _ => {
            let hv = h.to_real(prec);
            let four_am1 = HighPrecReal::from_rational(&Rational::from(Integer::from(&am1 * 4u32)), prec);
            let margin = &HighPrecReal::from_rational(&inv_m, prec) - &(&four_am1 * &approximant.delta.abs());
            if margin.signum() != Ordering::Greater {
                return Err(Error::InvalidArgument("selection margin is not positive".into()));
            }
            let two = HighPrecReal::from_i64(2, prec);
            let one_plus_2h = &HighPrecReal::from_i64(1, prec) + &(&two * &hv);
            let am1_r = HighPrecReal::from_rational(&Rational::from(am1.clone()), prec);
            let x = &(&(&two * &one_plus_2h) * &am1_r) / &margin;
            (margin, None, x.ceil_integer())
        }
    };
    let w = (ceil + 1u32).to_u64().ok_or(Error::Overflow("W"))?;
    Ok(IrrationalSelection { h: h.clone(), approximant, epsilon, a, w, margin, exact_margin, degenerate: a <= 1 })
}
