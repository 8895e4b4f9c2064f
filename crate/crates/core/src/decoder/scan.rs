use rug::Rational;

use super::GammaVerdict;
use crate::{Error, Result};

/// Largest key range the occupancy bitmap may cover (512 MiB).
const MAX_KEY_BITS: u64 = 1 << 32;

/// Exhaustive Γ and d_min scan of the symmetric receiver with rational gain
/// h = n/m and A = 1: points Σ_l (b_l + h·I_l) W^l, b_l < a, I_l ≤ 2(a−1).
///
/// Points are keyed by m·value = Σ (m·b_l + n·I_l) W^l, an integer, so the scan
/// is exact. Labels are digit vectors; a ≥ W is accepted so that colliding
/// selections produce a witness instead of an error.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalScan {
    pub n: u64,
    pub m: u64,
    pub w: u64,
    pub a: u64,
    pub levels: u32,
    pub tuples: u128,
    pub verdict: GammaVerdict,
    /// Unscaled minimum distance; zero on a collision.
    pub dmin: Rational,
}

impl RationalScan {
    fn per_level(&self) -> u64 {
        self.a * (2 * self.a - 1)
    }

    /// (b_l, I_l) for each level of a tuple index, least significant first.
    pub fn digits(&self, mut tuple: u64) -> Vec<(u64, u64)> {
        let p = self.per_level();
        (0..self.levels)
            .map(|_| {
                let d = tuple % p;
                tuple /= p;
                (d % self.a, d / self.a)
            })
            .collect()
    }

    /// m · value of a tuple.
    pub fn key(&self, tuple: u64) -> u64 {
        let mut w = 1;
        let mut k = 0;
        for (b, i) in self.digits(tuple) {
            k += (self.m * b + self.n * i) * w;
            w *= self.w;
        }
        k
    }
}

struct Bitmap(Vec<u64>);

impl Bitmap {
    fn test_and_set(&mut self, k: u64) -> bool {
        let (word, bit) = ((k / 64) as usize, k % 64);
        let was = self.0[word] >> bit & 1 == 1;
        self.0[word] |= 1 << bit;
        was
    }

    /// Smallest difference between consecutive set bits.
    fn min_gap(&self) -> Option<u64> {
        let mut last: Option<u64> = None;
        let mut best: Option<u64> = None;
        for (wi, &word) in self.0.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let k = wi as u64 * 64 + u64::from(bits.trailing_zeros());
                if let Some(l) = last {
                    best = Some(best.map_or(k - l, |b| b.min(k - l)));
                }
                last = Some(k);
                bits &= bits - 1;
            }
        }
        best
    }
}

pub fn scan_rational_multilayer(n: u64, m: u64, w: u64, a: u64, levels: u32) -> Result<RationalScan> {
    if n == 0 || m == 0 || a == 0 || w < 2 || levels == 0 {
        return Err(Error::InvalidArgument(format!(
            "scan needs n, m, a ≥ 1, W ≥ 2, L ≥ 1; got {n}/{m}, a={a}, W={w}, L={levels}"
        )));
    }
    let per_level = a * (2 * a - 1);
    let tuples = u128::from(per_level).pow(levels);
    let top = (0..levels).try_fold(0u64, |acc, l| {
        let wl = w.checked_pow(l)?;
        ((m + 2 * n) * (a - 1)).checked_mul(wl)?.checked_add(acc)
    });
    let top = top.filter(|&t| t < MAX_KEY_BITS && tuples <= u128::from(u64::MAX)).ok_or(Error::CapExceeded {
        needed: tuples,
        cap: MAX_KEY_BITS,
        bytes: u128::from(MAX_KEY_BITS / 8),
    })?;
    let mut scan = RationalScan { n, m, w, a, levels, tuples, verdict: GammaVerdict::Holds, dmin: Rational::new() };
    let values: Vec<u64> = (0..per_level).map(|p| m * (p % a) + n * (p / a)).collect();
    let weights: Vec<u64> = (0..levels).map(|l| w.pow(l)).collect();
    let mut map = Bitmap(vec![0; (top / 64 + 1) as usize]);
    let mut collision: Option<(u64, u64)> = None;
    visit(&values, &weights, levels as usize, 0, 0, per_level, &mut |key, tuple| {
        if map.test_and_set(key) && collision.is_none() {
            collision = Some((key, tuple));
        }
    });
    match collision {
        Some((key, second)) => {
            let first = (0..second).find(|&t| scan.key(t) == key).expect("an earlier tuple set the bit");
            scan.verdict = GammaVerdict::Violated { first, second };
        }
        None => {
            let gap = map.min_gap().ok_or(Error::SingleLabel)?;
            scan.dmin = Rational::from((gap, m));
        }
    }
    Ok(scan)
}

/// Calls `f(key, tuple)` for every tuple in increasing tuple order.
fn visit(
    values: &[u64],
    weights: &[u64],
    level: usize,
    key: u64,
    tuple: u64,
    radix: u64,
    f: &mut impl FnMut(u64, u64),
) {
    let l = level - 1;
    let w = weights[l];
    for (p, v) in values.iter().enumerate() {
        let k = key + v * w;
        let t = tuple * radix + p as u64;
        if l == 0 {
            f(k, t);
        } else {
            visit(values, weights, l, k, t, radix, f);
        }
    }
}
