//! Received constellations, hard decoding and Monte Carlo measurement.

mod bounds;
mod received;
mod scan;
mod simulate;
mod sweep;

pub use bounds::{
    kg_alphas, kg_bound, kg_qmax, verify_dmin_bounds, BoundCheck, BoundExtras, BoundKind, CERTIFIED_GAP_BITS,
};
pub use received::{
    check_gamma, enumerate_received, enumerate_received_with, hard_decode, min_distance, EnumerationOptions,
    GammaVerdict, Label, MinDistance, ReceivedConstellation, ReceivedPoint, DEFAULT_CAP,
};
pub use scan::{scan_rational_multilayer, RationalScan};
pub use simulate::{
    q_function_bound, rate_lower_bound, simulate, simulate_with_workers, union_bound, SimulationResult, BLOCK_TRIALS,
};
pub use sweep::{dof_slope, SweepPoint, SweepResult, DEFAULT_PE_THRESHOLD};
