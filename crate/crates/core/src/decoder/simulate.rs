use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};

use super::received::{hard_decode, ReceivedConstellation};
use crate::alignment::{ReceivedModel, StreamId};
use crate::numerics::RandomSource;
use crate::{Error, Result};

/// Trials per independently seeded block.
pub const BLOCK_TRIALS: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub stream_id: StreamId,
    pub receiver: usize,
    pub trials: u64,
    pub errors: u64,
    pub pe: f64,
    /// √(P_e(1−P_e)/trials).
    pub pe_stderr: f64,
    /// Scaled d_min; zero when Γ fails.
    pub dmin: f64,
    /// exp(−d_min²/8σ²).
    pub union_bound: f64,
    /// Q(d_min/2σ).
    pub q_bound: f64,
    /// max(0, (1−P_e)·log₂|U₀| − 1), bits per channel use.
    pub rate_bound: f64,
    pub log2_cardinality: f64,
    pub power: Option<f64>,
    pub sigma2: f64,
    pub seed: u64,
}

impl SimulationResult {
    pub fn at_power(mut self, power: f64) -> Self {
        self.power = Some(power);
        self
    }
}

/// R = max(0, (1−P_e)·log₂|U₀| − 1).
pub fn rate_lower_bound(pe: f64, cardinality: u64) -> f64 {
    ((1.0 - pe) * (cardinality as f64).log2() - 1.0).max(0.0)
}

/// exp(−d²/8σ²); one when σ > 0 and d = 0, zero when σ = 0 and d > 0.
pub fn union_bound(dmin: f64, sigma: f64) -> f64 {
    if sigma == 0.0 {
        return if dmin > 0.0 { 0.0 } else { 1.0 };
    }
    (-(dmin * dmin) / (8.0 * sigma * sigma)).exp()
}

/// Q(d/2σ) = ½·erfc(d/(2√2·σ)).
pub fn q_function_bound(dmin: f64, sigma: f64) -> f64 {
    if sigma == 0.0 {
        return if dmin > 0.0 { 0.0 } else { 0.5 };
    }
    let x = Float::with_val(128, dmin) / (2.0 * std::f64::consts::SQRT_2 * sigma);
    (x.erfc() / 2u32).to_f64()
}

/// Monte Carlo symbol error rate of the decoded stream.
///
/// Trial block k draws from `rng.substream(k)`, so the error count depends only
/// on (seed, stream, trials) and not on the thread count.
pub fn simulate(
    model: &ReceivedModel,
    rc: &ReceivedConstellation,
    sigma: f64,
    trials: u64,
    rng: &RandomSource,
) -> Result<SimulationResult> {
    if rc.model() != model {
        return Err(Error::ModelMismatch);
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidArgument(format!("noise deviation {sigma} must be finite and non-negative")));
    }
    let blocks = trials.div_ceil(BLOCK_TRIALS);
    let errors = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let n = BLOCK_TRIALS.min(trials - b * BLOCK_TRIALS);
            run_block(model, rc, sigma, n, &mut rng.substream(b))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let pe = errors as f64 / trials as f64;
    let card = model.decoded.set.len();
    let dmin = rc.min_distance().map_or(0.0, |d| d.scaled);
    Ok(SimulationResult {
        stream_id: model.decoded.id.clone(),
        receiver: model.receiver,
        trials,
        errors,
        pe,
        pe_stderr: (pe * (1.0 - pe) / trials as f64).sqrt(),
        dmin,
        union_bound: union_bound(dmin, sigma),
        q_bound: q_function_bound(dmin, sigma),
        rate_bound: rate_lower_bound(pe, card),
        log2_cardinality: (card as f64).log2(),
        power: None,
        sigma2: sigma * sigma,
        seed: rng.seed(),
    })
}

/// [`simulate`] on a dedicated pool of `workers` threads.
pub fn simulate_with_workers(
    model: &ReceivedModel,
    rc: &ReceivedConstellation,
    sigma: f64,
    trials: u64,
    rng: &RandomSource,
    workers: usize,
) -> Result<SimulationResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| simulate(model, rc, sigma, trials, rng))
}

fn run_block(
    model: &ReceivedModel,
    rc: &ReceivedConstellation,
    sigma: f64,
    n: u64,
    rng: &mut RandomSource,
) -> Result<u64> {
    let set = model.decoded.set;
    let mut symbols = vec![0i64; model.m() + 1];
    let mut errors = 0;
    for _ in 0..n {
        let sent = rng.index(set.len());
        symbols[0] = set.value(sent);
        for (s, agg) in symbols[1..].iter_mut().zip(&model.aggregates) {
            *s = agg.sample(rng);
        }
        let y = rc.noiseless(&symbols) + rng.gaussian(sigma)?;
        if rc.signal_index(hard_decode(rc, y)) != sent {
            errors += 1;
        }
    }
    Ok(errors)
}
