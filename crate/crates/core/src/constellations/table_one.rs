use std::cmp::Ordering;
use std::fmt;

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableCase {
    /// 2n ≥ m.
    I,
    /// 2n < m, m odd.
    II,
    /// 2n < m, m even.
    III,
}

impl fmt::Display for TableCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableCase::I => "I",
            TableCase::II => "II",
            TableCase::III => "III",
        })
    }
}

/// Digit bound a and base W for a rational gain h = n/m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOneSelection {
    pub n: u64,
    pub m: u64,
    pub case: TableCase,
    pub s: Option<u64>,
    pub a: u64,
    pub w: u64,
    /// a ≤ 1 or W ≤ 1: no usable constellation.
    pub degenerate: bool,
}

impl TableOneSelection {
    pub fn h(&self) -> Rational {
        Rational::from((self.n, self.m))
    }
}

fn parts(h: &Rational) -> Result<(u64, u64)> {
    if h.cmp0() != Ordering::Greater {
        return Err(Error::InvalidArgument(format!("gain must be positive, got {h}")));
    }
    let n = h.numer().to_u64().ok_or(Error::Overflow("numerator"))?;
    let m = h.denom().to_u64().ok_or(Error::Overflow("denominator"))?;
    if n > u64::from(u32::MAX) || m > u64::from(u32::MAX) {
        return Err(Error::Overflow("table selection"));
    }
    Ok((n, m))
}

pub fn select_table_one(h: &Rational) -> Result<TableOneSelection> {
    let (n, m) = parts(h)?;
    let (case, s, a, w) = if 2 * n >= m {
        (TableCase::I, None, n, n * (2 * n - 1))
    } else if m % 2 == 1 {
        let s = (m - 1) / 2;
        (TableCase::II, Some(s), s + 1, (s + 1) * (2 * s + 1))
    } else {
        let s = m / 2;
        // 2n < m = 2s gives n < s, so 2s² − n > 0.
        (TableCase::III, Some(s), s, 2 * s * s - n)
    };
    Ok(TableOneSelection { n, m, case, s, a, w, degenerate: a <= 1 || w <= 1 })
}

/// 3·log a / log W from the table; 0 for degenerate selections.
pub fn dof_rational_formula(h: &Rational) -> Result<f64> {
    let sel = select_table_one(h)?;
    if sel.degenerate {
        return Ok(0.0);
    }
    Ok(3.0 * (sel.a as f64).ln() / (sel.w as f64).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, m: u64) -> Rational {
        Rational::from((n, m))
    }

    #[test]
    fn table_rows() {
        let s = select_table_one(&r(2, 3)).unwrap();
        assert_eq!((s.case, s.a, s.w, s.degenerate), (TableCase::I, 2, 6, false));
        let s = select_table_one(&r(1, 3)).unwrap();
        assert_eq!((s.case, s.s, s.a, s.w), (TableCase::II, Some(1), 2, 6));
        let s = select_table_one(&r(1, 4)).unwrap();
        assert_eq!((s.case, s.s, s.a, s.w), (TableCase::III, Some(2), 2, 7));
        let s = select_table_one(&r(1, 2)).unwrap();
        assert!(s.degenerate);
        assert!(select_table_one(&Rational::new()).is_err());
        assert!(select_table_one(&Rational::from(-1)).is_err());
    }

    #[test]
    fn dof_values() {
        assert!((dof_rational_formula(&r(2, 3)).unwrap() - 1.1605584217036247).abs() < 1e-15);
        assert!((dof_rational_formula(&r(1, 4)).unwrap() - 1.0686215613240664).abs() < 1e-15);
        assert!((dof_rational_formula(&r(3, 4)).unwrap() - 1.2170516132466387).abs() < 1e-15);
        assert_eq!(dof_rational_formula(&r(1, 2)).unwrap(), 0.0);
    }

    #[test]
    fn formula_cases_agree_with_selection() {
        for m in 1u64..=12 {
            for n in 1u64..=12 {
                if num_gcd(n, m) != 1 || n.max(m) < 2 {
                    continue;
                }
                let sel = select_table_one(&r(n, m)).unwrap();
                if sel.degenerate {
                    continue;
                }
                let (nf, mf) = (n as f64, m as f64);
                let expect = if 2 * n >= m {
                    3.0 * nf.ln() / (nf * (2.0 * nf - 1.0)).ln()
                } else if m % 2 == 1 {
                    let s = (mf - 1.0) / 2.0;
                    3.0 * (s + 1.0).ln() / ((s + 1.0) * (2.0 * s + 1.0)).ln()
                } else {
                    let s = mf / 2.0;
                    3.0 * s.ln() / (2.0 * s * s - nf).ln()
                };
                assert_eq!(dof_rational_formula(&r(n, m)).unwrap(), expect, "{n}/{m}");
                assert!(sel.a < sel.w);
            }
        }
    }

    fn num_gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            num_gcd(b, a % b)
        }
    }
}
