use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Points Σ b_l W^l with digits b_l ∈ {0, …, a−1}, l < L.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiLayerConstellation {
    base: u64,
    digit_bound: u64,
    levels: u32,
}

impl MultiLayerConstellation {
    /// Requires W ≥ 2, 1 ≤ a < W, L ≥ 1 and W^L representable in i64.
    pub fn new(base: u64, digit_bound: u64, levels: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidArgument(format!("base W must be ≥ 2, got {base}")));
        }
        if digit_bound < 1 || digit_bound >= base {
            return Err(Error::InvalidArgument(format!(
                "digit bound a must satisfy 1 ≤ a < W, got a={digit_bound}, W={base}"
            )));
        }
        if levels < 1 {
            return Err(Error::InvalidArgument("levels L must be ≥ 1".into()));
        }
        base.checked_pow(levels).filter(|&p| p <= i64::MAX as u64).ok_or(Error::Overflow("W^L"))?;
        Ok(MultiLayerConstellation { base, digit_bound, levels })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digit_bound(&self) -> u64 {
        self.digit_bound
    }

    pub fn levels(&self) -> u32 {
        self.levels
    }

    /// a^L.
    pub fn cardinality(&self) -> Result<u64> {
        self.digit_bound.checked_pow(self.levels).ok_or(Error::Overflow("a^L"))
    }

    /// (a−1)(W^L−1)/(W−1).
    pub fn max_point(&self) -> u64 {
        (self.digit_bound - 1) * (self.base.pow(self.levels) - 1) / (self.base - 1)
    }

    /// W^L.
    pub fn span(&self) -> u64 {
        self.base.pow(self.levels)
    }

    pub fn encode(&self, digits: &[u64]) -> Result<u64> {
        digits_encode(self, digits)
    }

    pub fn decode(&self, point: u64) -> Result<Vec<u64>> {
        digits_decode(self, point)
    }

    /// Point with the given index in 0..a^L, digits read in base a.
    pub fn point(&self, mut index: u64) -> u64 {
        let mut value = 0;
        let mut weight = 1;
        for _ in 0..self.levels {
            value += (index % self.digit_bound) * weight;
            index /= self.digit_bound;
            weight *= self.base;
        }
        value
    }

    /// All points in increasing order.
    pub fn points(&self) -> Result<Vec<u64>> {
        let n = self.cardinality()?;
        Ok((0..n).map(|i| self.point(i)).collect())
    }

    /// E[u²] for uniform digits.
    pub fn mean_square(&self) -> f64 {
        let a = self.digit_bound as f64;
        let w = self.base as f64;
        let mean_b = (a - 1.0) / 2.0;
        let var_b = (a * a - 1.0) / 12.0;
        let weights: Vec<f64> = (0..self.levels).map(|l| w.powi(l as i32)).collect();
        let sum: f64 = weights.iter().sum();
        let sum_sq: f64 = weights.iter().map(|x| x * x).sum();
        var_b * sum_sq + (mean_b * sum).powi(2)
    }
}

/// Σ b_l W^l; every digit must be below a.
pub fn digits_encode(c: &MultiLayerConstellation, digits: &[u64]) -> Result<u64> {
    if digits.len() != c.levels as usize {
        return Err(Error::InvalidArgument(format!("expected {} digits, got {}", c.levels, digits.len())));
    }
    let mut value = 0;
    let mut weight = 1;
    for (level, &digit) in digits.iter().enumerate() {
        if digit >= c.digit_bound {
            return Err(Error::DigitOutOfRange { level, digit, bound: c.digit_bound });
        }
        value += digit * weight;
        weight *= c.base;
    }
    Ok(value)
}

/// Base-W digits of `point`, least significant first.
pub fn digits_decode(c: &MultiLayerConstellation, point: u64) -> Result<Vec<u64>> {
    let mut rest = point;
    let mut digits = Vec::with_capacity(c.levels as usize);
    for _ in 0..c.levels {
        let d = rest % c.base;
        if d >= c.digit_bound {
            return Err(Error::NotInConstellation(point as i64));
        }
        digits.push(d);
        rest /= c.base;
    }
    if rest != 0 {
        return Err(Error::NotInConstellation(point as i64));
    }
    Ok(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encode_decode_examples() {
        let c = MultiLayerConstellation::new(6, 2, 3).unwrap();
        assert_eq!(c.encode(&[1, 0, 1]).unwrap(), 37);
        assert_eq!(c.decode(37).unwrap(), vec![1, 0, 1]);
        let c1 = MultiLayerConstellation::new(6, 2, 1).unwrap();
        assert!(matches!(c1.decode(14), Err(Error::NotInConstellation(14))));
        assert!(matches!(c.encode(&[2, 0, 0]), Err(Error::DigitOutOfRange { level: 0, digit: 2, bound: 2 })));
        assert!(MultiLayerConstellation::new(6, 6, 1).is_err());
        assert_eq!(c.max_point(), 1 + 6 + 36);
    }

    #[test]
    fn cardinality_and_distinctness() {
        for (w, a, l) in [(6, 2, 3), (7, 3, 4), (15, 3, 5), (2, 1, 8), (28, 4, 4)] {
            let c = MultiLayerConstellation::new(w, a, l).unwrap();
            let pts = c.points().unwrap();
            assert_eq!(pts.len() as u64, c.cardinality().unwrap());
            assert!(pts.windows(2).all(|p| p[0] < p[1]));
            assert_eq!(*pts.last().unwrap(), c.max_point());
            let exact: f64 = pts.iter().map(|&x| (x as f64).powi(2)).sum::<f64>() / pts.len() as f64;
            assert!((exact - c.mean_square()).abs() <= 1e-9 * exact.max(1.0));
        }
    }

    proptest! {
        #[test]
        fn roundtrip(w in 2u64..40, a_frac in 0.0f64..1.0, l in 1u32..6, seed in any::<u64>()) {
            let a = 1 + ((w - 1) as f64 * a_frac) as u64;
            let a = a.min(w - 1);
            let c = MultiLayerConstellation::new(w, a, l).unwrap();
            let mut s = seed;
            let digits: Vec<u64> = (0..l).map(|_| { s = s.wrapping_mul(6364136223846793005).wrapping_add(1); (s >> 33) % a }).collect();
            let p = c.encode(&digits).unwrap();
            prop_assert_eq!(c.decode(p).unwrap(), digits);
        }
    }
}
