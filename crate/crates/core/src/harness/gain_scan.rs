use rug::Rational;

use super::records::GainScanRecord;
use super::run::symmetric_sweep;
use super::ExperimentConfig;
use crate::alignment::Gain;
use crate::constellations::{dof_rational_formula, select_irrational, select_table_one};
use crate::decoder::dof_slope;
use crate::diophantine::CfTarget;
use crate::numerics::{FieldDescriptor, QuadFieldElement};
use crate::Result;

/// DOF achievable for every irrational symmetric gain.
pub const IRRATIONAL_DOF: f64 = 1.5;

/// Reduced fractions n/m in (0, 1) with m ≤ order, ascending.
pub fn farey(order: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    if order < 2 {
        return out;
    }
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, order);
    while c < d {
        out.push((c, d));
        let k = (order + b) / d;
        (a, b, c, d) = (c, d, k * c - a, k * d - b);
    }
    out
}

/// √d − ⌊√d⌋ for a non-square d, as an exact field element.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanIrrational {
    pub d: u64,
    pub whole: u64,
    pub value: QuadFieldElement,
}

impl ScanIrrational {
    pub fn new(d: u64) -> Option<Self> {
        let whole = d.isqrt();
        if whole * whole == d {
            return None;
        }
        // d = k²s with s square-free.
        let (mut k, mut s) = (1u64, d);
        let mut p = 2;
        while p * p <= s {
            while s % (p * p) == 0 {
                s /= p * p;
                k *= p;
            }
            p += 1;
        }
        let partner = (2u64..).find(|&t| t != s && is_square_free(t) && gcd(t, s) == 1).expect("infinitely many");
        let field = FieldDescriptor::new(s as u32, partner as u32).ok()?;
        let value = QuadFieldElement::from_ints(field, [-(whole as i64), k as i64, 0, 0]);
        Some(ScanIrrational { d, whole, value })
    }

    pub fn label(&self) -> String {
        format!("sqrt({})-{}", self.d, self.whole)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn is_square_free(n: u64) -> bool {
    (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p * p))
}

/// frac(√d) for the twenty non-squares d in 2..=24.
pub fn default_irrationals() -> Vec<ScanIrrational> {
    (2..=24).filter_map(ScanIrrational::new).collect()
}

enum ScanGain {
    Rational(u64, u64),
    Irrational(ScanIrrational),
}

/// Theory (and optionally measured) DOF over Farey fractions and quadratic irrationals, sorted by h.
pub fn gain_scan_records(config: &ExperimentConfig) -> Result<(Vec<GainScanRecord>, Vec<String>)> {
    let mut gains: Vec<(f64, ScanGain)> = farey(config.farey_order)
        .into_iter()
        .map(|(n, m)| (n as f64 / m as f64, ScanGain::Rational(n, m)))
        .chain(default_irrationals().into_iter().map(|x| (x.value.to_f64(), ScanGain::Irrational(x))))
        .collect();
    gains.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut warnings = Vec::new();
    let mut records = Vec::with_capacity(gains.len());
    for (index, (_, g)) in gains.iter().enumerate() {
        let (mut record, h) = match g {
            ScanGain::Rational(n, m) => {
                let q = Rational::from((*n, *m));
                let sel = select_table_one(&q)?;
                let record = GainScanRecord {
                    h_num: n.to_string(),
                    h_den_or_tag: m.to_string(),
                    case: sel.case.to_string(),
                    a: sel.a,
                    w: sel.w,
                    theory_dof: dof_rational_formula(&q)?,
                    measured_slope: None,
                    degenerate: sel.degenerate,
                };
                (record, Gain::exact_rational(config.field, q))
            }
            ScanGain::Irrational(x) => {
                let sel = select_irrational(&CfTarget::Field(x.value.clone()), config.epsilon, config.m_min)?;
                let record = GainScanRecord {
                    h_num: x.label(),
                    h_den_or_tag: "irrational".into(),
                    case: "irrational".into(),
                    a: sel.a,
                    w: sel.w,
                    theory_dof: IRRATIONAL_DOF,
                    measured_slope: None,
                    degenerate: sel.degenerate,
                };
                (record, Gain::Exact(x.value.clone()))
            }
        };
        if config.measure && !record.degenerate {
            let stream_base = (index as u64 + 1) << 24;
            let slope = symmetric_sweep(config, &h, record.a, record.w, stream_base)
                .and_then(|s| dof_slope(&s.sweep, config.pe_threshold));
            match slope {
                Ok(s) => record.measured_slope = Some(s),
                Err(e) => warnings.push(format!("h={}/{}: no measured slope: {e}", record.h_num, record.h_den_or_tag)),
            }
        }
        records.push(record);
    }
    Ok((records, warnings))
}
