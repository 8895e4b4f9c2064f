use std::cmp::Ordering;

use rug::{Integer, Rational};

use super::{FieldDescriptor, QuadFieldElement};
use crate::{Error, Result};

fn shared_field(elements: &[QuadFieldElement]) -> Result<FieldDescriptor> {
    let first = elements.first().ok_or_else(|| Error::InvalidArgument("rank of an empty list".into()))?;
    let field = first.field();
    for e in elements {
        field.check_same(&e.field())?;
    }
    Ok(field)
}

/// Rank over Q of the coordinate vectors, by fraction-free (Bareiss) elimination.
pub fn rational_rank(elements: &[QuadFieldElement]) -> Result<usize> {
    shared_field(elements)?;
    let mut rows: Vec<[Integer; 4]> = elements
        .iter()
        .map(|e| {
            let d = e.common_denominator();
            e.coords().clone().map(|c| {
                let scaled = c * &d;
                scaled.into_numer_denom().0
            })
        })
        .collect();
    let mut rank = 0;
    let mut prev = Integer::from(1);
    for col in 0..4 {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            for c in col + 1..4 {
                let v = Integer::from(&rows[rank][col] * &rows[r][c]) - Integer::from(&rows[r][col] * &rows[rank][c]);
                rows[r][c] = v.div_exact(&prev);
            }
            rows[r][col] = Integer::new();
        }
        prev = rows[rank][col].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Ok(rank)
}

/// A Q-basis of span{elements} in reduced row echelon form, plus the
/// coordinates of every element on that basis.
#[derive(Clone, Debug)]
pub struct RationalBasis {
    pub basis: Vec<QuadFieldElement>,
    /// `coefficients[j][l]` is the weight of `basis[l]` in element j.
    pub coefficients: Vec<Vec<Rational>>,
}

impl RationalBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Reduced row echelon basis of the coordinate vectors.
#[allow(clippy::needless_range_loop)]
pub fn rational_basis(elements: &[QuadFieldElement]) -> Result<RationalBasis> {
    let field = shared_field(elements)?;
    let mut rows: Vec<[Rational; 4]> = elements.iter().map(|e| e.coords().clone()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..4 {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col].cmp0() != Ordering::Equal) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].clone().recip();
        for c in 0..4 {
            rows[rank][c] *= &inv;
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].cmp0() == Ordering::Equal {
                continue;
            }
            let f = rows[r][col].clone();
            for c in 0..4 {
                let delta = Rational::from(&f * &rows[rank][c]);
                rows[r][c] -= delta;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let basis = rows[..rank].iter().map(|r| QuadFieldElement::new(field, r.clone())).collect();
    let coefficients = elements.iter().map(|e| pivots.iter().map(|&c| e.coords()[c].clone()).collect()).collect();
    Ok(RationalBasis { basis, coefficients })
}
