//! Two-user X channel with exact gains {1, √2; √3, 1}: alignment at each receiver and a short power sweep.

use ria_core::alignment::{x_channel_models, ChannelInstance, Gain, SchemeParams};
use ria_core::decoder::{enumerate_received, simulate, SweepPoint};
use ria_core::numerics::{FieldDescriptor, QuadFieldElement, RandomSource};

fn main() -> ria_core::Result<()> {
    let f = FieldDescriptor::default();
    let g = |i| Gain::Exact(QuadFieldElement::basis(f, i));
    let gains = vec![vec![g(0), g(1)], vec![g(2), g(0)]];
    for (pi, power) in [1e6, 1e8, 1e10].into_iter().enumerate() {
        let ch = ChannelInstance::new(gains.clone(), power, 1.0)?;
        let bundle = x_channel_models(&ch, &SchemeParams::new(0.1))?;
        let mut results = Vec::new();
        for (k, model) in bundle.models.iter().enumerate() {
            let rc = enumerate_received(model)?;
            let r = simulate(model, &rc, 1.0, 20_000, &RandomSource::new(3, (pi * 4 + k) as u64))?;
            println!(
                "P={power:.0e} receiver {} stream {}: m = {}, {} points, d_min = {:.3}, Pe = {:.4}",
                model.receiver + 1,
                model.decoded.id,
                model.m(),
                rc.len(),
                r.dmin,
                r.pe
            );
            results.push(r);
        }
        let point = SweepPoint { power, results };
        println!(
            "P={power:.0e}: Q = {}, sum rate ≥ {:.3}, r(P) = {:.3}",
            bundle.q[0],
            point.sum_rate(),
            point.multiplexing()
        );
    }
    Ok(())
}
