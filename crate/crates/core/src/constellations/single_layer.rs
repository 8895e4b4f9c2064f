use serde::{Deserialize, Serialize};

/// All integers in [−Q, Q].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SingleLayerConstellation {
    q: u64,
}

pub fn build_single_layer(q: u64) -> SingleLayerConstellation {
    SingleLayerConstellation { q }
}

impl SingleLayerConstellation {
    pub fn bound(&self) -> u64 {
        self.q
    }

    /// 2Q + 1.
    pub fn cardinality(&self) -> u64 {
        2 * self.q + 1
    }

    pub fn contains(&self, x: i64) -> bool {
        x.unsigned_abs() <= self.q
    }

    pub fn points(&self) -> impl Iterator<Item = i64> {
        let q = self.q as i64;
        -q..=q
    }

    /// E[u²] for a uniform point: Q(Q+1)/3.
    pub fn mean_square(&self) -> f64 {
        let q = self.q as f64;
        q * (q + 1.0) / 3.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sets() {
        let c = build_single_layer(0);
        assert_eq!(c.points().collect::<Vec<_>>(), vec![0]);
        assert_eq!(c.cardinality(), 1);
        let c = build_single_layer(2);
        assert_eq!(c.points().collect::<Vec<_>>(), vec![-2, -1, 0, 1, 2]);
        let ms: f64 = c.points().map(|x| (x * x) as f64).sum::<f64>() / 5.0;
        assert_eq!(ms, c.mean_square());
    }
}
