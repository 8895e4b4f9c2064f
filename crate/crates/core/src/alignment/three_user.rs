use super::model::{aligned_models, calibrate};
use super::{ChannelInstance, Gain, SchemeBundle, SchemeParams, Stream, SymbolSet, TransmitScheme};
use crate::constellations::scaling;
use crate::{Error, Result};

/// A three-user channel rewritten so that every cross gain is 1 except G₀:
///
/// ```text
/// y₁ = G₁x₁ + x₂ + x₃
/// y₂ = x₁ + G₂x₂ + x₃
/// y₃ = x₁ + G₀x₂ + G₃x₃
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct StandardizedThreeUser {
    pub g0: Gain,
    pub g1: Gain,
    /// G₁ as h₁₁h₁₂h₂₃/(h₁₂h₂₁h₁₃), before cancelling h₁₂.
    pub g1_displayed: Gain,
    pub g2: Gain,
    pub g3: Gain,
    /// x_j = t_j·x̃_j.
    pub tx_scale: [Gain; 3],
    /// ỹ_i = y_i / r_i.
    pub rx_scale: [Gain; 3],
    /// P̃_j = P/t_j².
    pub power_factors: [f64; 3],
    /// σ̃_i² = σ²/r_i².
    pub noise_factors: [f64; 3],
    /// h_ij·t_j/r_i recomputed from the original gains.
    pub effective: Vec<Vec<Gain>>,
}

impl StandardizedThreeUser {
    /// The standard-form gain matrix.
    pub fn standard_gains(&self) -> Vec<Vec<Gain>> {
        let one = self.g0.one_like();
        vec![
            vec![self.g1.clone(), one.clone(), one.clone()],
            vec![one.clone(), self.g2.clone(), one.clone()],
            vec![one, self.g0.clone(), self.g3.clone()],
        ]
    }

    /// Standard-form channel with common power and noise variance.
    pub fn channel(&self, power: f64, sigma2: f64) -> Result<ChannelInstance> {
        ChannelInstance::new(self.standard_gains(), power, sigma2)
    }
}

pub fn standardize_three_user(ch: &ChannelInstance) -> Result<StandardizedThreeUser> {
    if ch.users() != 3 {
        return Err(Error::InvalidArgument(format!("need a 3-user channel, got {}", ch.users())));
    }
    let h = |i: usize, j: usize| ch.gain(i - 1, j - 1);
    let p = |gs: &[&Gain]| Gain::product(gs);
    let g0 = p(&[h(1, 3), h(2, 1), h(3, 2)])?.div(&p(&[h(1, 2), h(2, 3), h(3, 1)])?)?;
    let g1_displayed = p(&[h(1, 1), h(1, 2), h(2, 3)])?.div(&p(&[h(1, 2), h(2, 1), h(1, 3)])?)?;
    let g1 = p(&[h(1, 1), h(2, 3)])?.div(&p(&[h(2, 1), h(1, 3)])?)?;
    let g2 = p(&[h(2, 2), h(1, 3)])?.div(&p(&[h(1, 2), h(2, 3)])?)?;
    let g3 = p(&[h(3, 3), h(1, 2), h(2, 1)])?.div(&p(&[h(1, 2), h(2, 3), h(3, 1)])?)?;
    let tx_scale = [p(&[h(2, 3), h(1, 2)])?.div(h(2, 1))?, h(1, 3).clone(), h(1, 2).clone()];
    // Receiver 3 divides by h₁₂h₂₃h₃₁/h₂₁, which makes both of its cross gains match the standard form.
    let rx_scale = [p(&[h(1, 2), h(1, 3)])?, p(&[h(1, 2), h(2, 3)])?, p(&[h(1, 2), h(2, 3), h(3, 1)])?.div(h(2, 1))?];
    let effective = (0..3)
        .map(|i| tx_scale.iter().enumerate().map(|(j, t)| ch.gain(i, j).mul(t)?.div(&rx_scale[i])).collect())
        .collect::<Result<Vec<Vec<Gain>>>>()?;
    let power_factors = tx_scale.clone().map(|t| t.to_f64().powi(-2));
    let noise_factors = rx_scale.clone().map(|r| r.to_f64().powi(-2));
    Ok(StandardizedThreeUser {
        g0,
        g1,
        g1_displayed,
        g2,
        g3,
        tx_scale,
        rx_scale,
        power_factors,
        noise_factors,
        effective,
    })
}

/// Asymmetric scheme: x₁ = A(u₁ + G₀u₁′), x₂ = Au₂, x₃ = Au₃, every stream
/// sized with m = 2.
pub fn gic3_asymmetric_models(std: &StandardizedThreeUser, params: &SchemeParams, power: f64) -> Result<SchemeBundle> {
    if let Some(e) = std.g0.as_exact() {
        if e.is_rational() {
            return Err(Error::RationalG0(e.to_string()));
        }
    }
    let s = scaling(power, params.epsilon, 2, params.gamma, params.gamma_prime.unwrap_or(1.0))?;
    let set = SymbolSet::symmetric(s.q);
    let one = std.g0.one_like();
    let mut transmit = vec![
        TransmitScheme {
            transmitter: 0,
            streams: vec![(Stream::new("u1", set), one.clone()), (Stream::new("u1'", set), std.g0.clone())],
            amplitude: s.amplitude,
        },
        TransmitScheme { transmitter: 1, streams: vec![(Stream::new("u2", set), one.clone())], amplitude: s.amplitude },
        TransmitScheme { transmitter: 2, streams: vec![(Stream::new("u3", set), one)], amplitude: s.amplitude },
    ];
    let amplitude = match params.gamma_prime {
        Some(_) => s.amplitude,
        None => calibrate(&mut transmit, power),
    };
    let decode = [(0, "u1"), (0, "u1'"), (1, "u2"), (2, "u3")];
    let models = aligned_models(&std.standard_gains(), &transmit, &decode, amplitude)?;
    Ok(SchemeBundle {
        transmit,
        models,
        q: vec![s.q; 3],
        amplitude,
        power,
        gamma_prime: amplitude / power.powf(s.amplitude_exponent()),
    })
}
