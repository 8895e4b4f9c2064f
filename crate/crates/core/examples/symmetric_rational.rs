//! Symmetric three-user channel with h = 2/3: multilayer constellation, d_min and error rate.

use rug::Rational;

use ria_core::alignment::{symmetric_multilayer_model, Gain};
use ria_core::constellations::{aligned_power, dof_rational_formula, select_table_one, MultiLayerConstellation};
use ria_core::decoder::{enumerate_received, simulate};
use ria_core::numerics::{FieldDescriptor, RandomSource};

fn main() -> ria_core::Result<()> {
    let h = Rational::from((2, 3));
    let sel = select_table_one(&h)?;
    let eps = 0.05;
    println!("h = 2/3: case {}, a = {}, W = {}, DOF = {:.4}", sel.case, sel.a, sel.w, dof_rational_formula(&h)?);
    let gain = Gain::exact_rational(FieldDescriptor::default(), h);
    for levels in 1..=4 {
        let power = aligned_power(sel.w, eps, levels)?;
        let (_, model) =
            symmetric_multilayer_model(&gain, &MultiLayerConstellation::new(sel.w, sel.a, levels)?, power)?;
        let rc = enumerate_received(&model)?;
        let r = simulate(&model, &rc, 1.0, 20_000, &RandomSource::new(7, u64::from(levels)))?;
        println!(
            "L={levels} P={power:.3e}: {} points, d_min = {:.4} (A/3 = {:.4}), Pe = {:.4}, R ≥ {:.3}",
            rc.len(),
            r.dmin,
            model.scale / 3.0,
            r.pe,
            r.rate_bound
        );
    }
    Ok(())
}
