use std::fmt;

use serde::{Deserialize, Serialize};

use super::Gain;
use crate::numerics::{rational_rank, QuadFieldElement, RandomSource};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StreamId(pub String);

impl StreamId {
    pub fn new(s: impl Into<String>) -> Self {
        StreamId(s.into())
    }
}

impl fmt::Display for StreamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite set of integers indexed 0..len in increasing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymbolSet {
    /// Every integer in [lo, hi].
    Range { lo: i64, hi: i64 },
    /// Σ d_l W^l with d_l ∈ {0, …, max_digit}; increasing only while max_digit < W.
    Digits { base: u64, max_digit: u64, levels: u32 },
}

impl SymbolSet {
    pub fn symmetric(q: u64) -> Self {
        SymbolSet::Range { lo: -(q as i64), hi: q as i64 }
    }

    pub fn len(&self) -> u64 {
        match *self {
            SymbolSet::Range { lo, hi } => (hi - lo + 1) as u64,
            SymbolSet::Digits { max_digit, levels, .. } => (max_digit + 1).pow(levels),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn value(&self, mut index: u64) -> i64 {
        match *self {
            SymbolSet::Range { lo, .. } => lo + index as i64,
            SymbolSet::Digits { base, max_digit, levels } => {
                let mut v = 0u64;
                let mut w = 1u64;
                for _ in 0..levels {
                    v += (index % (max_digit + 1)) * w;
                    index /= max_digit + 1;
                    w *= base;
                }
                v as i64
            }
        }
    }

    /// Index of `value`, when it belongs to the set.
    pub fn index_of(&self, value: i64) -> Option<u64> {
        match *self {
            SymbolSet::Range { lo, hi } => (lo..=hi).contains(&value).then(|| (value - lo) as u64),
            SymbolSet::Digits { base, max_digit, levels } => {
                if value < 0 || max_digit >= base {
                    return None;
                }
                let mut rest = value as u64;
                let mut index = 0;
                let mut weight = 1;
                for _ in 0..levels {
                    let d = rest % base;
                    if d > max_digit {
                        return None;
                    }
                    index += d * weight;
                    weight *= max_digit + 1;
                    rest /= base;
                }
                (rest == 0).then_some(index)
            }
        }
    }

    /// max |value|.
    pub fn bound(&self) -> u64 {
        match *self {
            SymbolSet::Range { lo, hi } => lo.unsigned_abs().max(hi.unsigned_abs()),
            SymbolSet::Digits { base, max_digit, levels } => max_digit * (base.pow(levels) - 1) / (base - 1),
        }
    }

    /// E[x²] under the uniform distribution on the set.
    pub fn mean_square(&self) -> f64 {
        let n = self.len();
        if let SymbolSet::Range { lo, hi } = *self {
            if lo == -hi {
                let q = hi as f64;
                return q * (q + 1.0) / 3.0;
            }
        }
        (0..n).map(|i| (self.value(i) as f64).powi(2)).sum::<f64>() / n as f64
    }

    pub fn sample(&self, rng: &mut RandomSource) -> i64 {
        self.value(rng.index(self.len()))
    }
}

/// A transmitted data stream and its constellation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stream {
    pub id: StreamId,
    pub set: SymbolSet,
}

impl Stream {
    pub fn new(id: &str, set: SymbolSet) -> Self {
        Stream { id: StreamId::new(id), set }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateMember {
    pub stream: Stream,
    pub coefficient: i64,
}

/// I = Σ c_j u_j received along `basis`; enumerated over `set`.
#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub basis: Gain,
    pub members: Vec<AggregateMember>,
    pub set: SymbolSet,
    /// max |I| = Σ |c_j|·Q_j for single-layer members.
    pub bound: u64,
}

impl Aggregate {
    /// Aggregate whose enumeration set is the interval hull of the member sums.
    pub fn interval(basis: Gain, members: Vec<AggregateMember>) -> Result<Self> {
        let mut lo = 0i64;
        let mut hi = 0i64;
        for m in &members {
            let SymbolSet::Range { lo: a, hi: b } = m.stream.set else {
                return Err(Error::InvalidArgument("interval aggregates need range-valued members".into()));
            };
            let (x, y) = (a.checked_mul(m.coefficient), b.checked_mul(m.coefficient));
            let (x, y) = (x.ok_or(Error::Overflow("aggregate"))?, y.ok_or(Error::Overflow("aggregate"))?);
            lo += x.min(y);
            hi += x.max(y);
        }
        let set = SymbolSet::Range { lo, hi };
        Ok(Aggregate { basis, members, bound: set.bound(), set })
    }

    pub fn sample(&self, rng: &mut RandomSource) -> i64 {
        self.members.iter().map(|m| m.coefficient * m.stream.set.sample(rng)).sum()
    }
}

/// How received points are labeled when checking decodability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Labeling {
    /// Label = decoded symbol; collisions between equal symbols are harmless.
    Signal,
    /// Label = (decoded symbol, aggregate values); Γ means joint injectivity.
    Joint,
}

/// What one receiver sees while decoding one stream:
/// `scale · (signal_gain·u₀ + Σ basis_k·I_k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReceivedModel {
    pub receiver: usize,
    pub decoded: Stream,
    pub signal_gain: Gain,
    pub aggregates: Vec<Aggregate>,
    pub scale: f64,
    pub labeling: Labeling,
    /// Why the model violates the independence condition, if it does.
    pub degeneracy: Option<String>,
}

impl ReceivedModel {
    /// Number of interference directions.
    pub fn m(&self) -> usize {
        self.aggregates.len()
    }

    /// All bases, signal first.
    pub fn bases(&self) -> Vec<&Gain> {
        std::iter::once(&self.signal_gain).chain(self.aggregates.iter().map(|a| &a.basis)).collect()
    }

    /// Symbol sets, signal first.
    pub fn sets(&self) -> Vec<SymbolSet> {
        std::iter::once(self.decoded.set).chain(self.aggregates.iter().map(|a| a.set)).collect()
    }

    /// |U₀|·Π|I_k|.
    pub fn tuple_count(&self) -> u128 {
        self.sets().iter().map(|s| u128::from(s.len())).product()
    }

    /// Interfering streams with multiplicity, sorted by id.
    pub fn interfering_streams(&self) -> Vec<StreamId> {
        let mut ids: Vec<StreamId> =
            self.aggregates.iter().flat_map(|a| a.members.iter().map(|m| m.stream.id.clone())).collect();
        ids.sort();
        ids
    }

    /// Sets the degeneracy flag when the exact bases are rationally dependent.
    pub(crate) fn flag_rank(&mut self) -> Result<()> {
        let exact: Option<Vec<QuadFieldElement>> = self.bases().iter().map(|g| g.as_exact().cloned()).collect();
        if let Some(exact) = exact {
            let rank = rational_rank(&exact)?;
            if rank < self.m() + 1 {
                self.degeneracy = Some(format!(
                    "receiver {} stream {}: rational rank {} < {} of the bases",
                    self.receiver,
                    self.decoded.id,
                    rank,
                    self.m() + 1
                ));
            }
        }
        Ok(())
    }
}

/// One transmitter: x = amplitude · Σ direction·u.
#[derive(Clone, Debug, PartialEq)]
pub struct TransmitScheme {
    pub transmitter: usize,
    pub streams: Vec<(Stream, Gain)>,
    pub amplitude: f64,
}

impl TransmitScheme {
    /// E[x²] for independent uniform streams.
    pub fn mean_power(&self) -> f64 {
        self.amplitude.powi(2) * self.streams.iter().map(|(s, d)| d.to_f64().powi(2) * s.set.mean_square()).sum::<f64>()
    }

    /// amplitude · Σ |direction|·max|u|.
    pub fn peak(&self) -> f64 {
        self.amplitude * self.streams.iter().map(|(s, d)| d.to_f64().abs() * s.set.bound() as f64).sum::<f64>()
    }

    /// Exact rational rank of the directions; `None` in numeric mode.
    pub fn direction_rank(&self) -> Result<Option<usize>> {
        let exact: Option<Vec<QuadFieldElement>> = self.streams.iter().map(|(_, d)| d.as_exact().cloned()).collect();
        exact.map(|e| rational_rank(&e)).transpose()
    }
}

/// ε, γ and an optional γ′; without γ′ the amplitude meets the power
/// constraint with equality for the most demanding transmitter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub epsilon: f64,
    pub gamma: f64,
    pub gamma_prime: Option<f64>,
}

impl SchemeParams {
    pub fn new(epsilon: f64) -> Self {
        SchemeParams { epsilon, gamma: 1.0, gamma_prime: None }
    }
}

/// Transmit schemes and received models for one channel at one power.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeBundle {
    pub transmit: Vec<TransmitScheme>,
    pub models: Vec<ReceivedModel>,
    /// Constellation bound Q per transmitter.
    pub q: Vec<u64>,
    pub amplitude: f64,
    pub power: f64,
    /// γ′ actually in use.
    pub gamma_prime: f64,
}

impl SchemeBundle {
    pub fn degeneracies(&self) -> Vec<String> {
        self.models.iter().filter_map(|m| m.degeneracy.clone()).collect()
    }

    /// Every model's interfering streams are exactly the transmitted streams
    /// other than the decoded one.
    pub fn check_conservation(&self) -> Result<()> {
        let mut all: Vec<StreamId> =
            self.transmit.iter().flat_map(|t| t.streams.iter().map(|(s, _)| s.id.clone())).collect();
        all.sort();
        for model in &self.models {
            let mut seen = model.interfering_streams();
            seen.dedup();
            let expected: Vec<StreamId> = all.iter().filter(|id| **id != model.decoded.id).cloned().collect();
            if seen != expected {
                return Err(Error::InvalidArgument(format!(
                    "receiver {} decoding {}: interference {:?} differs from {:?}",
                    model.receiver, model.decoded.id, seen, expected
                )));
            }
        }
        Ok(())
    }
}

/// Amplitude that gives the most demanding transmitter mean power `power`.
pub(crate) fn calibrate(transmit: &mut [TransmitScheme], power: f64) -> f64 {
    let unit = transmit.iter().map(|t| TransmitScheme { amplitude: 1.0, ..t.clone() }.mean_power()).fold(0.0, f64::max);
    let amplitude = (power / unit).sqrt();
    for t in transmit.iter_mut() {
        t.amplitude = amplitude;
    }
    amplitude
}

/// Models for every (receiver, stream) pair in `decode`, grouping the other
/// streams into aggregates by equal received coefficient
/// h[rx][tx]·direction.
pub(crate) fn aligned_models(
    gains: &[Vec<Gain>],
    transmit: &[TransmitScheme],
    decode: &[(usize, &str)],
    amplitude: f64,
) -> Result<Vec<ReceivedModel>> {
    let mut models = Vec::with_capacity(decode.len());
    for &(rx, wanted) in decode {
        let mut coefficients: Vec<(Stream, Gain)> = Vec::new();
        for t in transmit {
            for (s, d) in &t.streams {
                coefficients.push((s.clone(), gains[rx][t.transmitter].mul(d)?));
            }
        }
        let (decoded, signal_gain) = coefficients
            .iter()
            .find(|(s, _)| s.id.0 == wanted)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown stream {wanted}")))?;
        let mut groups: Vec<(Gain, Vec<AggregateMember>)> = Vec::new();
        for (s, g) in coefficients.into_iter().filter(|(s, _)| s.id != decoded.id) {
            let member = AggregateMember { stream: s, coefficient: 1 };
            match groups.iter_mut().find(|(basis, _)| *basis == g) {
                Some((_, members)) => members.push(member),
                None => groups.push((g, vec![member])),
            }
        }
        let aggregates =
            groups.into_iter().map(|(basis, members)| Aggregate::interval(basis, members)).collect::<Result<_>>()?;
        let mut model = ReceivedModel {
            receiver: rx,
            decoded,
            signal_gain,
            aggregates,
            scale: amplitude,
            labeling: Labeling::Signal,
            degeneracy: None,
        };
        model.flag_rank()?;
        models.push(model);
    }
    Ok(models)
}
