//! Exact arithmetic in Q(√2, √3): signs, floors and rational rank.

use ria_core::numerics::{rational_rank, FieldDescriptor, QuadFieldElement};

fn main() -> ria_core::Result<()> {
    let f = FieldDescriptor::new(2, 3)?;
    let r2 = QuadFieldElement::basis(f, 1);
    let r3 = QuadFieldElement::basis(f, 2);

    // √2·√3 lands on the fourth coordinate.
    let r6 = r2.checked_mul(&r3)?;
    println!("sqrt2 * sqrt3 = {r6}");

    // The sign of 1 + √2 − √3 is decided exactly, without floating point.
    let x = QuadFieldElement::one(f).checked_add(&r2)?.checked_sub(&r3)?;
    println!("1 + sqrt2 - sqrt3 = {x} ≈ {:.6}, sign {:?}, floor {}", x.to_f64(), x.signum(), x.floor());

    let inv = x.inv()?;
    println!("1/(1 + sqrt2 - sqrt3) = {inv}");

    // {1, √2, 1+√2} spans a 2-dimensional rational space.
    let one_r2 = QuadFieldElement::one(f).checked_add(&r2)?;
    let rank = rational_rank(&[QuadFieldElement::one(f), r2.clone(), one_r2])?;
    println!("rank of {{1, sqrt2, 1+sqrt2}} over Q = {rank}");
    Ok(())
}
