use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::gains::GainSpec;
use crate::alignment::GainMode;
use crate::decoder::DEFAULT_CAP;
use crate::numerics::FieldDescriptor;
use crate::{Error, Result};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    XChannel,
    GicK,
    Gic3Asymmetric,
    Gic3Standardize,
    SymmetricRational,
    SymmetricIrrational,
    GammaCheck,
    Khintchine,
    GainScan,
}

impl Scenario {
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::XChannel => "x-channel",
            Scenario::GicK => "gic-k",
            Scenario::Gic3Asymmetric => "gic3-asymmetric",
            Scenario::Gic3Standardize => "gic3-standardize",
            Scenario::SymmetricRational => "symmetric-rational",
            Scenario::SymmetricIrrational => "symmetric-irrational",
            Scenario::GammaCheck => "gamma-check",
            Scenario::Khintchine => "khintchine",
            Scenario::GainScan => "gain-scan",
        }
    }

    /// Scenarios that produce a power sweep.
    pub fn is_sweep(self) -> bool {
        matches!(
            self,
            Scenario::XChannel
                | Scenario::GicK
                | Scenario::Gic3Asymmetric
                | Scenario::SymmetricRational
                | Scenario::SymmetricIrrational
        )
    }

    pub fn is_symmetric(self) -> bool {
        matches!(self, Scenario::SymmetricRational | Scenario::SymmetricIrrational)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn default_version() -> u32 {
    CONFIG_VERSION
}
fn default_epsilon() -> f64 {
    0.1
}
fn default_trials() -> u64 {
    100_000
}
fn default_cap() -> u64 {
    DEFAULT_CAP
}
fn default_out() -> PathBuf {
    PathBuf::from("ria-out")
}
fn default_gamma() -> f64 {
    1.0
}
fn default_random_range() -> [f64; 2] {
    [0.5, 2.0]
}
fn default_levels() -> Vec<u32> {
    vec![1, 2, 3]
}
fn default_max_denominator() -> u64 {
    12
}
fn default_m_min() -> u64 {
    20
}
fn default_farey_order() -> u64 {
    8
}
fn default_qmax() -> Vec<u32> {
    vec![64, 128, 256, 512]
}
fn default_samples() -> u32 {
    50
}
fn default_dimension() -> usize {
    2
}
fn default_threshold() -> f64 {
    crate::decoder::DEFAULT_PE_THRESHOLD
}

/// A versioned experiment description.
///
/// `sigma2` has no default: every run must state its noise variance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_version")]
    pub version: u32,
    pub scenario: Scenario,
    #[serde(default)]
    pub mode: GainMode,
    #[serde(default)]
    pub field: FieldDescriptor,
    /// Square gain matrix, rows indexed by receiver.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gains: Option<Vec<Vec<GainSpec>>>,
    /// Number of users when `gains` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub users: Option<usize>,
    /// Cross gain of the symmetric channel.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<GainSpec>,
    /// Range for "random-uniform" gains.
    #[serde(default = "default_random_range")]
    pub random_range: [f64; 2],
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_prime: Option<f64>,
    /// Transmit powers; symmetric scenarios default to the aligned grid.
    #[serde(default)]
    pub powers: Vec<f64>,
    pub sigma2: f64,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub seed: u64,
    /// Largest received-constellation tuple count enumerated.
    #[serde(default = "default_cap")]
    pub cap: u64,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    #[serde(default = "default_threshold")]
    pub pe_threshold: f64,
    /// Multilayer levels, for the aligned grid and gamma-check.
    #[serde(default = "default_levels")]
    pub levels: Vec<u32>,
    /// gamma-check: largest max(n, m).
    #[serde(default = "default_max_denominator")]
    pub max_denominator: u64,
    /// symmetric-irrational: smallest approximant denominator.
    #[serde(default = "default_m_min")]
    pub m_min: u64,
    #[serde(default = "default_farey_order")]
    pub farey_order: u64,
    /// gain-scan: also measure a slope for each gain.
    #[serde(default)]
    pub measure: bool,
    #[serde(default = "default_qmax")]
    pub qmax: Vec<u32>,
    /// khintchine: random α samples when `alphas` is absent.
    #[serde(default = "default_samples")]
    pub samples: u32,
    #[serde(default = "default_dimension")]
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<Vec<f64>>>,
}

impl ExperimentConfig {
    /// A configuration with every optional field at its default.
    pub fn new(scenario: Scenario, sigma2: f64) -> Self {
        let mut c: ExperimentConfig =
            serde_json::from_value(serde_json::json!({ "scenario": scenario, "sigma2": sigma2 }))
                .expect("defaults parse");
        c.scenario = scenario;
        c
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: ExperimentConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.version != CONFIG_VERSION {
            return bad(format!("unsupported config version {} (expected {CONFIG_VERSION})", self.version));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return bad(format!("epsilon must lie in (0, 1/2), got {}", self.epsilon));
        }
        if self.trials < 1 {
            return bad("trials must be at least 1".into());
        }
        if !(self.sigma2 >= 0.0 && self.sigma2.is_finite()) {
            return bad(format!("sigma2 must be finite and non-negative, got {}", self.sigma2));
        }
        if self.powers.iter().any(|p| !(*p > 0.0 && p.is_finite())) {
            return bad("powers must be positive and finite".into());
        }
        if self.powers.windows(2).any(|w| w[1] <= w[0]) {
            return bad("powers must be strictly increasing (no duplicates)".into());
        }
        if !(self.random_range[0] > 0.0 && self.random_range[0] < self.random_range[1]) {
            return bad(format!("random_range must satisfy 0 < lo < hi, got {:?}", self.random_range));
        }
        if !(self.gamma > 0.0) || self.gamma_prime.is_some_and(|g| !(g > 0.0)) {
            return bad("gamma and gamma_prime must be positive".into());
        }
        if self.levels.is_empty() || self.levels.contains(&0) {
            return bad("levels must be a non-empty list of positive integers".into());
        }
        if self.qmax.is_empty() || self.qmax.contains(&0) {
            return bad("qmax must be a non-empty list of positive integers".into());
        }
        if !(self.pe_threshold > 0.0 && self.pe_threshold <= 1.0) {
            return bad(format!("pe_threshold must lie in (0, 1], got {}", self.pe_threshold));
        }
        if let Some(g) = &self.gains {
            if g.is_empty() || g.iter().any(|row| row.len() != g.len()) {
                return bad("gains must be a non-empty square matrix".into());
            }
        }
        match self.scenario {
            Scenario::XChannel | Scenario::GicK | Scenario::Gic3Asymmetric | Scenario::Gic3Standardize => {
                if self.gains.is_none() && self.users.is_none() && self.scenario == Scenario::GicK {
                    return bad("gic-k needs gains or users".into());
                }
            }
            Scenario::SymmetricRational | Scenario::SymmetricIrrational if self.h.is_none() => {
                return bad(format!("{} needs h", self.scenario));
            }
            _ => {}
        }
        if self.scenario.is_sweep() && !self.scenario.is_symmetric() && self.powers.len() < 3 {
            return bad(format!("{} sweeps need at least 3 powers", self.scenario));
        }
        if self.scenario.is_sweep() && self.mode == GainMode::Numeric && self.scenario != Scenario::XChannel {
            return bad(format!("{} requires exact gains", self.scenario));
        }
        if self.scenario == Scenario::Khintchine && self.dimension == 0 {
            return bad("dimension must be at least 1".into());
        }
        Ok(())
    }
}
