//! Symmetric channel with h = √2: Hurwitz approximant, (a, W) and the d_min margin.

use ria_core::alignment::{symmetric_multilayer_model, Gain};
use ria_core::constellations::{aligned_power, select_irrational, MultiLayerConstellation};
use ria_core::decoder::{enumerate_received, verify_dmin_bounds, BoundExtras};
use ria_core::diophantine::CfTarget;
use ria_core::numerics::{FieldDescriptor, QuadFieldElement};

fn main() -> ria_core::Result<()> {
    let h = QuadFieldElement::basis(FieldDescriptor::default(), 1);
    let eps = 0.1;
    let sel = select_irrational(&CfTarget::Field(h.clone()), eps, 20)?;
    println!(
        "h = sqrt2: approximant {}/{}, a = {}, W = {}, margin = {:.6e}",
        sel.approximant.n,
        sel.approximant.m,
        sel.a,
        sel.w,
        sel.margin.to_f64()
    );
    for levels in 1..=2 {
        let power = aligned_power(sel.w, eps, levels)?;
        let (_, model) = symmetric_multilayer_model(
            &Gain::Exact(h.clone()),
            &MultiLayerConstellation::new(sel.w, sel.a, levels)?,
            power,
        )?;
        let rc = enumerate_received(&model)?;
        let extras = BoundExtras { irrational: Some(sel.clone()), ..Default::default() };
        for check in verify_dmin_bounds(&model, &rc, &extras)? {
            println!(
                "L={levels}: {} points, d_min/A = {:.6e} ≥ {:.6e}: {} (Γ {})",
                rc.len(),
                check.measured / model.scale,
                check.bound / model.scale,
                check.pass,
                rc.gamma().tag()
            );
        }
    }
    Ok(())
}
