use std::cmp::Ordering;

use rug::{Float, Integer, Rational};

use crate::numerics::{HighPrecReal, QuadFieldElement};
use crate::{Error, Result};

/// A value to expand: exact rational, exact field element, or a numeric real
/// whose relative error is at most 2^(3−prec).
#[derive(Clone, Debug, PartialEq)]
pub enum CfTarget {
    Rational(Rational),
    Field(QuadFieldElement),
    Real(HighPrecReal),
}

impl CfTarget {
    pub fn is_exact(&self) -> bool {
        !matches!(self, CfTarget::Real(_))
    }

    /// `Some` when the target is known to be rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            CfTarget::Rational(r) => Some(r.clone()),
            CfTarget::Field(e) => e.as_rational().cloned(),
            CfTarget::Real(_) => None,
        }
    }

    pub fn to_real(&self, prec: u32) -> HighPrecReal {
        match self {
            CfTarget::Rational(r) => HighPrecReal::from_rational(r, prec),
            CfTarget::Field(e) => e.to_real(prec),
            CfTarget::Real(x) => x.clone(),
        }
    }
}

/// Partial quotients a₀; a₁, … and convergents n_k/m_k.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuedFraction {
    pub target: CfTarget,
    pub quotients: Vec<Integer>,
    pub convergents: Vec<Rational>,
    /// The expansion ended because the target is rational.
    pub terminated: bool,
}

impl ContinuedFraction {
    fn from_quotients(target: CfTarget, quotients: Vec<Integer>, terminated: bool) -> Self {
        let (mut n2, mut n1) = (Integer::from(0), Integer::from(1));
        let (mut m2, mut m1) = (Integer::from(1), Integer::from(0));
        let mut convergents = Vec::with_capacity(quotients.len());
        for a in &quotients {
            let n = Integer::from(a * &n1) + &n2;
            let m = Integer::from(a * &m1) + &m2;
            convergents.push(Rational::from((n.clone(), m.clone())));
            (n2, n1) = (n1, n);
            (m2, m1) = (m1, m);
        }
        ContinuedFraction { target, quotients, convergents, terminated }
    }
}

/// Expands `x` to at most `k` partial quotients.
pub fn cf_expand(x: &CfTarget, k: usize) -> Result<ContinuedFraction> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be ≥ 1".into()));
    }
    if let Some(r) = x.as_rational() {
        let (q, t) = expand_rational(r, k);
        return Ok(ContinuedFraction::from_quotients(x.clone(), q, t));
    }
    match x {
        CfTarget::Field(e) => Ok(ContinuedFraction::from_quotients(x.clone(), expand_field(e, k)?, false)),
        CfTarget::Real(v) => {
            let (q, t) = expand_interval(v, k)?;
            Ok(ContinuedFraction::from_quotients(x.clone(), q, t))
        }
        CfTarget::Rational(_) => unreachable!(),
    }
}

fn expand_rational(mut r: Rational, k: usize) -> (Vec<Integer>, bool) {
    let mut out = Vec::new();
    while out.len() < k {
        let a = r.clone().floor().into_numer_denom().0;
        r -= &a;
        out.push(a);
        if r.cmp0() == Ordering::Equal {
            return (out, true);
        }
        r.recip_mut();
    }
    (out, false)
}

fn expand_field(x: &QuadFieldElement, k: usize) -> Result<Vec<Integer>> {
    let field = x.field();
    let mut x = x.clone();
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let a = x.floor();
        let frac = x.checked_sub(&QuadFieldElement::from_rational(field, Rational::from(&a)))?;
        out.push(a);
        if out.len() == k {
            break;
        }
        // Irrational elements never reach a zero remainder.
        x = frac.inv()?;
    }
    Ok(out)
}

/// Expands both ends of the error interval around `v`; quotients are kept
/// only while both ends agree.
fn expand_interval(v: &HighPrecReal, k: usize) -> Result<(Vec<Integer>, bool)> {
    let center =
        v.to_rational().ok_or_else(|| Error::InvalidArgument("continued fraction of a non-finite value".into()))?;
    let err = Rational::from(center.abs_ref())
        * Float::with_val(64, Float::i_exp(1, 3 - v.prec() as i32)).to_rational().expect("finite");
    let mut lo = Rational::from(&center - &err);
    let mut hi = Rational::from(&center + &err);
    let mut out = Vec::new();
    while out.len() < k {
        let a_lo = lo.clone().floor().into_numer_denom().0;
        let a_hi = hi.clone().floor().into_numer_denom().0;
        if a_lo != a_hi {
            return Err(Error::PrecisionExhausted { terms: out.len() });
        }
        lo -= &a_lo;
        hi -= &a_hi;
        out.push(a_lo);
        let lz = lo.cmp0() == Ordering::Equal;
        let hz = hi.cmp0() == Ordering::Equal;
        if lz && hz {
            return Ok((out, true));
        }
        if lz || hz {
            return Err(Error::PrecisionExhausted { terms: out.len() });
        }
        // Reciprocal reverses the interval.
        let new_lo = hi.clone().recip();
        let new_hi = lo.clone().recip();
        lo = new_lo;
        hi = new_hi;
    }
    Ok((out, false))
}
