use serde::{Deserialize, Serialize};

use super::SimulationResult;
use crate::{Error, Result};

/// Default P_e ceiling for points used in the slope fit.
pub const DEFAULT_PE_THRESHOLD: f64 = 1e-2;

/// All streams measured at one power.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub power: f64,
    pub results: Vec<SimulationResult>,
}

impl SweepPoint {
    pub fn sum_rate(&self) -> f64 {
        self.results.iter().map(|r| r.rate_bound).sum()
    }

    /// r(P) = ΣR / (½·log₂ P).
    pub fn multiplexing(&self) -> f64 {
        self.sum_rate() / (0.5 * self.power.log2())
    }

    pub fn worst_pe(&self) -> f64 {
        self.results.iter().map(|r| r.pe).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// Sorted by increasing power.
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn new(mut points: Vec<SweepPoint>) -> Self {
        points.sort_by(|a, b| a.power.total_cmp(&b.power));
        SweepResult { points }
    }
}

/// Least-squares slope of ΣR against ½·log₂ P over points whose worst P_e is
/// below `threshold`.
pub fn dof_slope(sweep: &SweepResult, threshold: f64) -> Result<f64> {
    let usable: Vec<(f64, f64)> = sweep
        .points
        .iter()
        .filter(|p| p.worst_pe() < threshold)
        .map(|p| (0.5 * p.power.log2(), p.sum_rate()))
        .collect();
    if usable.is_empty() && !sweep.points.is_empty() {
        return Err(Error::NoiseDominated);
    }
    if usable.len() < 3 {
        return Err(Error::TooFewPoints { usable: usable.len(), needed: 3 });
    }
    let n = usable.len() as f64;
    let mx = usable.iter().map(|p| p.0).sum::<f64>() / n;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = usable.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = usable.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("slope needs at least two distinct powers".into()));
    }
    Ok(sxy / sxx)
}
