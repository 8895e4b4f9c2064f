use std::io::{Read, Write};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::Result;

/// One stream at one power.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub scenario: String,
    pub mode: String,
    pub h_spec: String,
    #[serde(rename = "P")]
    pub power: f64,
    pub sigma2: f64,
    pub epsilon: f64,
    pub stream_id: String,
    #[serde(rename = "Q_or_aWL")]
    pub q_or_awl: String,
    pub dmin: f64,
    pub union_bound: f64,
    pub trials: u64,
    pub errors: u64,
    pub pe: f64,
    pub rate_bound: f64,
    /// Sum-rate multiplexing estimate at this power, repeated on each stream row.
    #[serde(rename = "r_of_P")]
    pub r_of_p: f64,
}

/// One gain of the discontinuity dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GainScanRecord {
    /// Numerator, or the irrational's expression.
    pub h_num: String,
    /// Denominator, or "irrational".
    pub h_den_or_tag: String,
    pub case: String,
    pub a: u64,
    #[serde(rename = "W")]
    pub w: u64,
    pub theory_dof: f64,
    pub measured_slope: Option<f64>,
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaRow {
    pub n: u64,
    pub m: u64,
    pub case: String,
    pub a: u64,
    #[serde(rename = "W")]
    pub w: u64,
    #[serde(rename = "L")]
    pub levels: u32,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KhintchineRow {
    pub sample: u32,
    /// Components joined by ';'.
    pub alpha: String,
    pub epsilon: f64,
    pub qmax: u32,
    pub kappa_hat: f64,
    pub witness_p: i64,
    pub witness_q: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DminRow {
    pub receiver: usize,
    pub stream_id: String,
    pub tuples: u64,
    pub points: u64,
    pub dmin: f64,
    /// Exact unscaled d_min when available.
    pub dmin_exact: String,
    pub gamma: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub receiver: usize,
    pub stream_id: String,
    pub kind: String,
    pub bound: f64,
    pub measured: f64,
    pub pass: bool,
    pub certified_gap: Option<f64>,
}

pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<T: DeserializeOwned, R: Read>(input: R) -> Result<Vec<T>> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(Into::into)).collect()
}

pub fn to_csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Column names in order, taken from the header line.
pub fn header<T: Serialize>(sample: &T) -> Result<Vec<String>> {
    let text = to_csv_string(std::slice::from_ref(sample))?;
    Ok(text.lines().next().unwrap_or_default().split(',').map(str::to_owned).collect())
}
