use super::model::{aligned_models, calibrate};
use super::{ChannelInstance, SchemeBundle, SchemeParams, Stream, SymbolSet, TransmitScheme};
use crate::constellations::scaling;
use crate::{Error, Result};

/// Two-user X channel: x₁ = G(h₂₂u₁ + h₁₂v₁), x₂ = G(h₂₁u₂ + h₁₁v₂).
///
/// Receiver 1 decodes u₁, u₂ and sees v₁, v₂ aligned along h₁₁h₁₂;
/// receiver 2 decodes v₁, v₂ and sees u₁, u₂ aligned along h₂₁h₂₂.
pub fn x_channel_models(ch: &ChannelInstance, params: &SchemeParams) -> Result<SchemeBundle> {
    if ch.users() != 2 {
        return Err(Error::InvalidArgument(format!("the X channel has 2 users, got {}", ch.users())));
    }
    let s = scaling(ch.power(), params.epsilon, 2, params.gamma, params.gamma_prime.unwrap_or(1.0))?;
    let set = SymbolSet::symmetric(s.q);
    let h = |i: usize, j: usize| ch.gain(i - 1, j - 1).clone();
    let mut transmit = vec![
        TransmitScheme {
            transmitter: 0,
            streams: vec![(Stream::new("u1", set), h(2, 2)), (Stream::new("v1", set), h(1, 2))],
            amplitude: s.amplitude,
        },
        TransmitScheme {
            transmitter: 1,
            streams: vec![(Stream::new("u2", set), h(2, 1)), (Stream::new("v2", set), h(1, 1))],
            amplitude: s.amplitude,
        },
    ];
    let amplitude = match params.gamma_prime {
        Some(_) => s.amplitude,
        None => calibrate(&mut transmit, ch.power()),
    };
    let decode = [(0, "u1"), (0, "u2"), (1, "v1"), (1, "v2")];
    let models = aligned_models(ch.gains(), &transmit, &decode, amplitude)?;
    for m in &models {
        if m.aggregates.len() != 2 {
            return Err(Error::InvalidArgument(format!(
                "stream {} at receiver {} sees {} interference directions instead of 2",
                m.decoded.id,
                m.receiver + 1,
                m.aggregates.len()
            )));
        }
    }
    Ok(SchemeBundle {
        transmit,
        models,
        q: vec![s.q, s.q],
        amplitude,
        power: ch.power(),
        gamma_prime: amplitude / ch.power().powf(s.amplitude_exponent()),
    })
}
