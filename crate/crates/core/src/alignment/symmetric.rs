use super::model::{Aggregate, AggregateMember, Labeling, ReceivedModel};
use super::{Gain, Stream, SymbolSet, TransmitScheme};
use crate::constellations::{multilayer_amplitude, MultiLayerConstellation};
use crate::Result;

/// Symmetric three-user channel y₁ = x₁ + h(x₂ + x₃) with every user on the
/// same multilayer constellation. Receiver 1 sees A·Σ(b_l + h·I_l)W^l with
/// I_l = b′_l + b″_l, and must recover (b, I) jointly.
pub fn symmetric_multilayer_model(
    h: &Gain,
    constellation: &MultiLayerConstellation,
    power: f64,
) -> Result<(TransmitScheme, ReceivedModel)> {
    let (w, a, l) = (constellation.base(), constellation.digit_bound(), constellation.levels());
    let amplitude = multilayer_amplitude(w, a, l, power)?;
    let set = SymbolSet::Digits { base: w, max_digit: a - 1, levels: l };
    let one = h.one_like();
    let streams: Vec<Stream> = ["u1", "u2", "u3"].iter().map(|id| Stream::new(id, set)).collect();
    let transmit = TransmitScheme { transmitter: 0, streams: vec![(streams[0].clone(), one.clone())], amplitude };
    let aggregate = Aggregate {
        basis: h.clone(),
        members: streams[1..].iter().map(|s| AggregateMember { stream: s.clone(), coefficient: 1 }).collect(),
        set: SymbolSet::Digits { base: w, max_digit: 2 * (a - 1), levels: l },
        bound: 2 * constellation.max_point(),
    };
    // Rational h is expected here; decodability comes from the digit structure, not independence.
    let model = ReceivedModel {
        receiver: 0,
        decoded: streams[0].clone(),
        signal_gain: one,
        aggregates: vec![aggregate],
        scale: amplitude,
        labeling: Labeling::Joint,
        degeneracy: None,
    };
    Ok((transmit, model))
}
