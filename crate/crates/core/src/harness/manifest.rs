use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ExperimentConfig;
use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileChecksum {
    /// Relative to the output directory.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

/// Provenance of one run. Timestamps are the only fields that differ between
/// identical reruns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub scenario: String,
    pub config_digest: String,
    pub seed: u64,
    pub precision_bits: u32,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub files: Vec<FileChecksum>,
    pub warnings: Vec<String>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of the configuration with the output directory blanked, so the
/// same experiment written to two places has one digest.
pub fn config_digest(config: &ExperimentConfig) -> String {
    let mut c = config.clone();
    c.out = Default::default();
    sha256_hex(c.to_json().as_bytes())
}

pub fn now_unix_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis())
}

pub fn checksum_file(dir: &Path, name: &str) -> Result<FileChecksum> {
    let bytes = std::fs::read(dir.join(name))?;
    Ok(FileChecksum { path: name.to_owned(), sha256: sha256_hex(&bytes), bytes: bytes.len() as u64 })
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(dir.join("manifest.json"), text + "\n")?;
        Ok(())
    }

    pub fn read(dir: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json"))?)?)
    }
}
