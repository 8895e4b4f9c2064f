use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{Error, Result};

/// Seeded ChaCha8 stream. Equal (seed, stream) pairs give equal sequences.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    draws: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomSource { seed, stream, draws: 0, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Number of values drawn so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// Fresh source on a stream determined by (this stream, index).
    pub fn substream(&self, index: u64) -> RandomSource {
        let stream = self.stream.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index.wrapping_add(1));
        RandomSource::new(self.seed, stream)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.draws += 1;
        self.rng.random()
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.draws += 1;
        self.rng.random()
    }

    /// Uniform in [lo, hi).
    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer index in 0..n. `n` must be positive.
    pub fn index(&mut self, n: u64) -> u64 {
        self.draws += 1;
        self.rng.random_range(0..n)
    }

    pub fn gaussian(&mut self, sigma: f64) -> Result<f64> {
        gaussian_sample(self, sigma)
    }
}

/// Zero-mean normal draw with standard deviation `sigma`.
pub fn gaussian_sample(rng: &mut RandomSource, sigma: f64) -> Result<f64> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidArgument(format!("sigma must be a finite value ≥ 0, got {sigma}")));
    }
    rng.draws += 1;
    let z: f64 = rng.rng.sample(StandardNormal);
    Ok(if sigma == 0.0 { 0.0 } else { sigma * z })
}
