use std::cmp::Ordering;
use std::fmt;

use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use super::HighPrecReal;
use crate::{Error, Result};

/// The field Q(√d₁, √d₂) with d₁ ≠ d₂ square-free and ≥ 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor", into = "RawDescriptor")]
pub struct FieldDescriptor {
    d1: u32,
    d2: u32,
}

#[derive(Serialize, Deserialize)]
struct RawDescriptor {
    d1: u32,
    d2: u32,
}

impl TryFrom<RawDescriptor> for FieldDescriptor {
    type Error = Error;
    fn try_from(raw: RawDescriptor) -> Result<Self> {
        FieldDescriptor::new(raw.d1, raw.d2)
    }
}

impl From<FieldDescriptor> for RawDescriptor {
    fn from(f: FieldDescriptor) -> Self {
        RawDescriptor { d1: f.d1, d2: f.d2 }
    }
}

fn is_square_free(n: u32) -> bool {
    let n = u64::from(n);
    let mut p = 2u64;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl FieldDescriptor {
    pub fn new(d1: u32, d2: u32) -> Result<Self> {
        if d1 < 2 || d2 < 2 {
            return Err(Error::InvalidField(format!("radicands must be ≥ 2, got ({d1}, {d2})")));
        }
        if d1 == d2 {
            return Err(Error::InvalidField(format!("radicands must differ, got ({d1}, {d2})")));
        }
        for d in [d1, d2] {
            if !is_square_free(d) {
                return Err(Error::InvalidField(format!("{d} is not square-free")));
            }
        }
        Ok(FieldDescriptor { d1, d2 })
    }

    pub fn d1(&self) -> u32 {
        self.d1
    }

    pub fn d2(&self) -> u32 {
        self.d2
    }

    /// Radicands of the basis {1, √d₁, √d₂, √(d₁d₂)}.
    pub fn radicands(&self) -> [u64; 4] {
        let (d1, d2) = (u64::from(self.d1), u64::from(self.d2));
        [1, d1, d2, d1 * d2]
    }

    pub fn check_same(&self, other: &FieldDescriptor) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(*self, *other))
        }
    }
}

impl Default for FieldDescriptor {
    fn default() -> Self {
        FieldDescriptor { d1: 2, d2: 3 }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}), sqrt({}))", self.d1, self.d2)
    }
}

/// c₀ + c₁√d₁ + c₂√d₂ + c₃√(d₁d₂) with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldElement {
    field: FieldDescriptor,
    coords: [Rational; 4],
}

/// Operation selector for [`qf_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Applies `op` to `a` (and `b` for binary operations).
pub fn qf_arith(a: &QuadFieldElement, b: &QuadFieldElement, op: QfOp) -> Result<QuadFieldElement> {
    match op {
        QfOp::Add => a.checked_add(b),
        QfOp::Mul => a.checked_mul(b),
        QfOp::Neg => Ok(a.neg()),
        QfOp::Inv => a.inv(),
    }
}

/// Numeric value with relative error at most 2^(3−precision).
pub fn qf_to_real(a: &QuadFieldElement, precision: u32) -> HighPrecReal {
    a.to_real(precision)
}

/// Sign of a + b√d for rational a, b and non-square d.
fn sign_sqrt(a: &Rational, b: &Rational, d: u64) -> Ordering {
    let sa = a.cmp0();
    let sb = b.cmp0();
    if sb == Ordering::Equal || sa == sb {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    // Opposite signs: a + b√d has the sign of a iff a² > d b².
    let lhs = Rational::from(a * a);
    let rhs = Rational::from(b * b) * Integer::from(d);
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => unreachable!("d is not a perfect square"),
    }
}

impl QuadFieldElement {
    pub fn new(field: FieldDescriptor, coords: [Rational; 4]) -> Self {
        QuadFieldElement { field, coords }
    }

    pub fn zero(field: FieldDescriptor) -> Self {
        Self::from_rational(field, Rational::new())
    }

    pub fn one(field: FieldDescriptor) -> Self {
        Self::from_rational(field, Rational::from(1))
    }

    pub fn from_rational(field: FieldDescriptor, value: Rational) -> Self {
        QuadFieldElement { field, coords: [value, Rational::new(), Rational::new(), Rational::new()] }
    }

    pub fn from_i64(field: FieldDescriptor, value: i64) -> Self {
        Self::from_rational(field, Rational::from(value))
    }

    /// Integer coordinates (c₀, c₁, c₂, c₃).
    pub fn from_ints(field: FieldDescriptor, coords: [i64; 4]) -> Self {
        QuadFieldElement { field, coords: coords.map(Rational::from) }
    }

    /// The basis element with index 0..4: 1, √d₁, √d₂, √(d₁d₂).
    pub fn basis(field: FieldDescriptor, index: usize) -> Self {
        let mut coords = [0i64; 4];
        coords[index] = 1;
        Self::from_ints(field, coords)
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn coords(&self) -> &[Rational; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.cmp0() == Ordering::Equal)
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.cmp0() == Ordering::Equal)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coords[0])
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        let mut coords = self.coords.clone();
        for (c, o) in coords.iter_mut().zip(&other.coords) {
            *c += o;
        }
        Ok(QuadFieldElement { field: self.field, coords })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        let d1 = Integer::from(self.field.d1);
        let d2 = Integer::from(self.field.d2);
        let d12 = Integer::from(&d1 * &d2);
        let [a0, a1, a2, a3] = &self.coords;
        let [b0, b1, b2, b3] = &other.coords;
        let p = |x: &Rational, y: &Rational| Rational::from(x * y);
        let c0 = p(a0, b0) + p(a1, b1) * &d1 + p(a2, b2) * &d2 + p(a3, b3) * &d12;
        let c1 = p(a0, b1) + p(a1, b0) + (p(a2, b3) + p(a3, b2)) * &d2;
        let c2 = p(a0, b2) + p(a2, b0) + (p(a1, b3) + p(a3, b1)) * &d1;
        let c3 = p(a0, b3) + p(a3, b0) + p(a1, b2) + p(a2, b1);
        Ok(QuadFieldElement { field: self.field, coords: [c0, c1, c2, c3] })
    }

    pub fn neg(&self) -> Self {
        QuadFieldElement { field: self.field, coords: self.coords.clone().map(|c| -c) }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        QuadFieldElement { field: self.field, coords: self.coords.clone().map(|c| c * factor) }
    }

    /// Image under √d₂ ↦ −√d₂.
    fn conj_d2(&self) -> Self {
        let [c0, c1, c2, c3] = self.coords.clone();
        QuadFieldElement { field: self.field, coords: [c0, c1, -c2, -c3] }
    }

    /// Image under √d₁ ↦ −√d₁.
    fn conj_d1(&self) -> Self {
        let [c0, c1, c2, c3] = self.coords.clone();
        QuadFieldElement { field: self.field, coords: [c0, -c1, c2, -c3] }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x·σ₂(x) lies in Q(√d₁); multiplying by its σ₁-conjugate lands in Q.
        let s2 = self.conj_d2();
        let n1 = self.checked_mul(&s2)?;
        let s1 = n1.conj_d1();
        let norm = n1.checked_mul(&s1)?;
        let norm = norm.as_rational().expect("norm is rational").clone();
        Ok(s2.checked_mul(&s1)?.scale(&norm.recip()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        self.checked_mul(&other.inv()?)
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let [c0, c1, c2, c3] = &self.coords;
        let d1 = u64::from(self.field.d1);
        let d2 = Integer::from(self.field.d2);
        let sp = sign_sqrt(c0, c1, d1);
        let sq = sign_sqrt(c2, c3, d1);
        if sq == Ordering::Equal || sp == sq {
            return sp;
        }
        if sp == Ordering::Equal {
            return sq;
        }
        // Opposite signs of p and q√d₂: compare p² with d₂q² in Q(√d₁).
        let sq2 = |x: &Rational| Rational::from(x * x);
        let e = sq2(c0) + sq2(c1) * Integer::from(d1) - sq2(c2) * &d2 - sq2(c3) * (Integer::from(d1) * &d2);
        let f = Rational::from(c0 * c1) * 2u32 - Rational::from(c2 * c3) * (d2 * 2u32);
        match sign_sqrt(&e, &f, d1) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => unreachable!("√d₂ is not in Q(√d₁)"),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// Largest integer ≤ self.
    pub fn floor(&self) -> Integer {
        let guess = self.to_real(64).floor_integer();
        let mut k = guess;
        // Step until k ≤ self < k + 1 holds exactly.
        loop {
            let below = self.checked_sub(&Self::from_rational(self.field, Rational::from(&k))).expect("same field");
            if below.signum() == Ordering::Less {
                k -= 1;
                continue;
            }
            let above = below.checked_sub(&Self::one(self.field)).expect("same field");
            if above.signum() != Ordering::Less {
                k += 1;
                continue;
            }
            return k;
        }
    }

    /// Value at `precision` bits with relative error ≤ 2^(3−precision).
    pub fn to_real(&self, precision: u32) -> HighPrecReal {
        let precision = precision.max(64);
        if self.is_zero() {
            return HighPrecReal::zero(precision);
        }
        if let Some(r) = self.as_rational() {
            return HighPrecReal::from_rational(r, precision);
        }
        let radicands = self.field.radicands();
        let mut work = precision + 32;
        loop {
            let mut sum = Float::new(work);
            let mut magnitude = Float::new(work);
            for (c, &r) in self.coords.iter().zip(&radicands) {
                if c.cmp0() == Ordering::Equal {
                    continue;
                }
                let term = Float::with_val(work, r).sqrt() * c;
                magnitude += term.clone().abs();
                sum += term;
            }
            // Each term carries relative error ≤ 2^(2−work); the sum adds ≤ 4 more roundings.
            let err = magnitude * Float::with_val(work, Float::i_exp(1, 4 - work as i32));
            let needed = Float::with_val(work, sum.clone().abs())
                * Float::with_val(work, Float::i_exp(1, -(precision as i32) - 1));
            if err < needed {
                return HighPrecReal::from_float(Float::with_val(precision, &sum));
            }
            work = work.saturating_mul(2);
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_real(64).to_f64()
    }

    /// Smallest common positive denominator of the coordinates.
    pub fn common_denominator(&self) -> Integer {
        self.coords.iter().fold(Integer::from(1), |acc, c| acc.lcm(c.denom()))
    }
}

impl PartialOrd for QuadFieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl fmt::Display for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let radicands = self.field.radicands();
        let mut first = true;
        for (c, r) in self.coords.iter().zip(radicands) {
            if c.cmp0() == Ordering::Equal {
                continue;
            }
            let negative = c.cmp0() == Ordering::Less;
            let mag = Rational::from(c.abs_ref());
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            first = false;
            match (r == 1, mag == 1) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "sqrt({r})")?,
                (false, false) => write!(f, "{mag}*sqrt({r})")?,
            }
        }
        Ok(())
    }
}
