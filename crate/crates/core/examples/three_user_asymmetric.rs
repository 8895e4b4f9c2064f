//! Asymmetric three-user channel: standardize, then two streams at user 1.

use ria_core::alignment::{gic3_asymmetric_models, standardize_three_user, ChannelInstance, Gain, SchemeParams};
use ria_core::decoder::enumerate_received;
use ria_core::numerics::{FieldDescriptor, QuadFieldElement};

fn main() -> ria_core::Result<()> {
    let f = FieldDescriptor::default();
    let e = |c: [i64; 4]| Gain::Exact(QuadFieldElement::from_ints(f, c));
    let gains = vec![
        vec![e([2, 0, 0, 0]), e([1, 0, 0, 0]), e([0, 1, 0, 0])],
        vec![e([0, 0, 1, 0]), e([3, 0, 0, 0]), e([1, 0, 0, 0])],
        vec![e([1, 0, 0, 0]), e([1, 1, 0, 0]), e([2, 0, 0, 0])],
    ];
    let s = standardize_three_user(&ChannelInstance::new(gains, 1e8, 1.0)?)?;
    println!("G0 = {} ≈ {:.5}", s.g0, s.g0.to_f64());
    let bundle = gic3_asymmetric_models(&s, &SchemeParams::new(0.1), 1e8)?;
    for model in &bundle.models {
        let rc = enumerate_received(model)?;
        println!(
            "receiver {} stream {}: m = {}, {} points, d_min = {:.4}, Γ {}",
            model.receiver + 1,
            model.decoded.id,
            model.m(),
            rc.len(),
            rc.min_distance().map_or(f64::NAN, |d| d.scaled),
            rc.gamma().tag()
        );
    }
    Ok(())
}
