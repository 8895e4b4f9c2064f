//! Four-user interference channel whose cross gains span a 2-dimensional rational space.

use ria_core::alignment::{gic_single_stream_models, ChannelInstance, Gain, SchemeParams};
use ria_core::decoder::{enumerate_received, simulate};
use ria_core::numerics::{FieldDescriptor, QuadFieldElement, RandomSource};

fn main() -> ria_core::Result<()> {
    let f = FieldDescriptor::default();
    let e = |c: [i64; 4]| Gain::Exact(QuadFieldElement::from_ints(f, c));
    // Cross gains from {1, √2, 1+√2}; direct gains involve √3.
    let (one, r2, one_r2) = ([1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]);
    let direct = [[0, 0, 1, 0], [1, 0, 1, 0], [2, 0, 1, 0], [0, 0, 2, 0]];
    let cross = [[one, r2, one_r2], [r2, one_r2, one], [one_r2, one, r2], [one, one_r2, r2]];
    let gains = (0..4)
        .map(|i| {
            let mut it = cross[i].iter();
            (0..4).map(|j| if i == j { e(direct[i]) } else { e(*it.next().unwrap()) }).collect()
        })
        .collect();
    let power = 1e10;
    let bundle = gic_single_stream_models(&ChannelInstance::new(gains, power, 1.0)?, &SchemeParams::new(0.1))?;
    for (k, model) in bundle.models.iter().enumerate() {
        let rc = enumerate_received(model)?;
        let r = simulate(model, &rc, 1.0, 20_000, &RandomSource::new(4, k as u64))?;
        println!(
            "receiver {}: {} interference dimensions, Q = {}, Pe = {:.4}, R/(log2(P)/2) = {:.4}",
            k + 1,
            model.m(),
            bundle.q[k],
            r.pe,
            r.rate_bound / (0.5 * power.log2())
        );
    }
    Ok(())
}
