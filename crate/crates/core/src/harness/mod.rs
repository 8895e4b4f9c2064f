//! Experiment configs, scenario runners, CSV records and run manifests.

mod config;
mod gain_scan;
mod gains;
mod manifest;
mod records;
mod run;

pub use config::{ExperimentConfig, Scenario, CONFIG_VERSION};
pub use gain_scan::{default_irrationals, farey, gain_scan_records, ScanIrrational, IRRATIONAL_DOF};
pub use gains::{parse_rational, resolve_matrix, CoordSpec, GainSpec, RANDOM_DECIMALS};
pub use manifest::{checksum_file, config_digest, sha256_hex, FileChecksum, RunManifest};
pub use records::{
    header, read_csv, to_csv_string, write_csv, BoundRow, DminRow, GainScanRecord, GammaRow, KhintchineRow, SweepRow,
};
pub use run::{
    run_dmin, run_scenario, run_sweep, symmetric_powers, symmetric_sweep, RunReport, SweepOutcome, GAIN_STREAM,
};
