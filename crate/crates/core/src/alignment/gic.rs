use rug::{Integer, Rational};

use super::model::{calibrate, Aggregate, AggregateMember, Labeling, ReceivedModel};
use super::{ChannelInstance, Gain, SchemeBundle, SchemeParams, Stream, SymbolSet, TransmitScheme};
use crate::constellations::scaling;
use crate::numerics::{rational_basis, QuadFieldElement, RationalBasis};
use crate::{Error, Result};

/// Integer coefficients for one basis direction: α_j·D / g with D the common
/// denominator and g the gcd, and the rescaled basis element g·B/D.
fn clear_column(basis: &QuadFieldElement, column: &[Rational]) -> Result<(QuadFieldElement, Vec<i64>)> {
    let d = column.iter().fold(Integer::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Integer> = column.iter().map(|c| Rational::from(c * &d).into_numer_denom().0).collect();
    let g = ints.iter().fold(Integer::new(), |acc, c| acc.gcd(c));
    let g = if g == 0 { Integer::from(1) } else { g };
    let coeffs = ints
        .iter()
        .map(|c| Integer::from(c / &g).to_i64().ok_or(Error::Overflow("aggregation coefficient")))
        .collect::<Result<Vec<_>>>()?;
    Ok((basis.scale(&Rational::from((g, d))), coeffs))
}

/// K-user interference channel with one stream per user.
///
/// At receiver i the cross gains span m_i rational dimensions; each dimension
/// becomes one aggregate with integer coefficients. Transmitter i sizes its
/// constellation with m_i, the dimension at the only receiver that decodes it.
pub fn gic_single_stream_models(ch: &ChannelInstance, params: &SchemeParams) -> Result<SchemeBundle> {
    let k = ch.users();
    if k < 2 {
        return Err(Error::InvalidArgument("need at least two users".into()));
    }
    let mut exact = vec![vec![]; k];
    for (i, row) in exact.iter_mut().enumerate() {
        for j in 0..k {
            row.push(ch.gain(i, j).as_exact().ok_or(Error::ExactModeRequired)?.clone());
        }
    }
    let mut bases: Vec<(Vec<usize>, RationalBasis)> = Vec::with_capacity(k);
    for (i, row) in exact.iter().enumerate() {
        let cross: Vec<usize> = (0..k).filter(|&j| j != i).collect();
        let elems: Vec<QuadFieldElement> = cross.iter().map(|&j| row[j].clone()).collect();
        bases.push((cross, rational_basis(&elems)?));
    }
    let mut qs = Vec::with_capacity(k);
    let mut amp_exponent: f64 = 0.0;
    for (_, b) in &bases {
        let s = scaling(ch.power(), params.epsilon, b.rank() as u32, params.gamma, params.gamma_prime.unwrap_or(1.0))?;
        amp_exponent = amp_exponent.max(s.amplitude_exponent());
        qs.push(s.q);
    }
    let streams: Vec<Stream> =
        (0..k).map(|i| Stream::new(&format!("u{}", i + 1), SymbolSet::symmetric(qs[i]))).collect();
    let one = Gain::Exact(QuadFieldElement::one(exact[0][0].field()));
    let mut transmit: Vec<TransmitScheme> = (0..k)
        .map(|i| TransmitScheme { transmitter: i, streams: vec![(streams[i].clone(), one.clone())], amplitude: 1.0 })
        .collect();
    let amplitude = match params.gamma_prime {
        Some(gp) => {
            let a = gp * ch.power().powf(amp_exponent);
            transmit.iter_mut().for_each(|t| t.amplitude = a);
            a
        }
        None => calibrate(&mut transmit, ch.power()),
    };
    let mut models = Vec::with_capacity(k);
    for (i, (cross, basis)) in bases.iter().enumerate() {
        let mut aggregates = Vec::with_capacity(basis.rank());
        for (l, b) in basis.basis.iter().enumerate() {
            let column: Vec<Rational> = basis.coefficients.iter().map(|c| c[l].clone()).collect();
            let (g, coeffs) = clear_column(b, &column)?;
            let members = cross
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| *c != 0)
                .map(|(&j, c)| AggregateMember { stream: streams[j].clone(), coefficient: c })
                .collect();
            aggregates.push(Aggregate::interval(Gain::Exact(g), members)?);
        }
        let mut model = ReceivedModel {
            receiver: i,
            decoded: streams[i].clone(),
            signal_gain: Gain::Exact(exact[i][i].clone()),
            aggregates,
            scale: amplitude,
            labeling: Labeling::Signal,
            degeneracy: None,
        };
        model.flag_rank()?;
        models.push(model);
    }
    Ok(SchemeBundle {
        transmit,
        models,
        q: qs,
        amplitude,
        power: ch.power(),
        gamma_prime: amplitude / ch.power().powf(amp_exponent),
    })
}
