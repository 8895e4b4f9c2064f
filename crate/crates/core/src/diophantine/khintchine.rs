use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Brute-force minimum of |p + α·q|·(max|qᵢ|)^{m+ε} over 0 < max|qᵢ| ≤ Qmax.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KhintchineEstimate {
    pub alpha: Vec<f64>,
    pub epsilon: f64,
    pub qmax: u32,
    pub kappa_hat: f64,
    pub witness_p: i64,
    pub witness_q: Vec<i64>,
}

/// |p + α·q|·(max|qᵢ|)^{m+ε} with p the nearest integer to −α·q.
/// Returns (value, p).
pub fn linear_form_value(alpha: &[f64], epsilon: f64, q: &[i64]) -> (f64, i64) {
    let s: f64 = alpha.iter().zip(q).map(|(a, &qi)| a * qi as f64).sum();
    let p = -s.round();
    let norm = q.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0) as f64;
    let value = (p + s).abs() * norm.powf(alpha.len() as f64 + epsilon);
    (value, p as i64)
}

#[derive(Clone)]
struct Best {
    value: f64,
    norm: u64,
    q: Vec<i64>,
    p: i64,
}

impl Best {
    /// Order: value, then max|q|, then q lexicographically.
    fn better_than(&self, other: &Best) -> bool {
        self.value.total_cmp(&other.value).then(self.norm.cmp(&other.norm)).then_with(|| self.q.cmp(&other.q)).is_lt()
    }
}

fn pick(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.better_than(&a) { b } else { a }),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Scans every q whose first nonzero component is positive (q and −q give
/// the same value) with the tail ranging over [−Qmax, Qmax].
fn scan_tail(alpha: &[f64], epsilon: f64, qmax: i64, head: &[i64]) -> Option<Best> {
    let m = alpha.len();
    let mut q = head.to_vec();
    let free = m - head.len();
    q.resize(m, -qmax);
    let leading_zero = head.iter().all(|&x| x == 0);
    let mut best: Option<Best> = None;
    if free == 0 {
        if leading_zero {
            return None;
        }
        let (value, p) = linear_form_value(alpha, epsilon, &q);
        let norm = q.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
        return Some(Best { value, norm, q, p });
    }
    loop {
        let first_nz = q.iter().find(|&&x| x != 0).copied();
        if first_nz.is_some_and(|x| x > 0) {
            let (value, p) = linear_form_value(alpha, epsilon, &q);
            let norm = q.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
            let cand = Best { value, norm, q: q.clone(), p };
            if best.as_ref().is_none_or(|b| cand.better_than(b)) {
                best = Some(cand);
            }
        }
        let mut i = m;
        loop {
            if i == m - free {
                return best;
            }
            i -= 1;
            if q[i] < qmax {
                q[i] += 1;
                break;
            }
            q[i] = -qmax;
        }
    }
}

/// Exhaustive estimate of the Khintchine–Groshev constant for `alpha`.
pub fn khintchine_kappa(alpha: &[f64], epsilon: f64, qmax: u32) -> Result<KhintchineEstimate> {
    if alpha.is_empty() {
        return Err(Error::InvalidArgument("alpha must have at least one component".into()));
    }
    if qmax == 0 {
        return Err(Error::InvalidArgument("Qmax must be ≥ 1".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    if alpha.iter().any(|a| !a.is_finite()) {
        return Err(Error::InvalidArgument("alpha must be finite".into()));
    }
    let qm = i64::from(qmax);
    // Canonical q has q₁ ≥ 0; split the lattice on q₁ for the workers.
    let best = (0..=qm)
        .into_par_iter()
        .map(|q1| scan_tail(alpha, epsilon, qm, &[q1]))
        .reduce(|| None, pick)
        .expect("at least one canonical q");
    Ok(KhintchineEstimate {
        alpha: alpha.to_vec(),
        epsilon,
        qmax,
        kappa_hat: best.value,
        witness_p: best.p,
        witness_q: best.q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RandomSource;

    #[test]
    fn rational_alpha_has_zero_kappa() {
        let k = khintchine_kappa(&[0.5], 0.2, 16).unwrap();
        assert_eq!(k.kappa_hat, 0.0);
        assert_eq!((k.witness_p, k.witness_q.clone()), (-1, vec![2]));
    }

    #[test]
    fn silver_ratio_is_badly_approximable() {
        let k = khintchine_kappa(&[std::f64::consts::SQRT_2 - 1.0], 0.2, 64).unwrap();
        assert!(k.kappa_hat > 0.0);
    }

    #[test]
    fn spec_pair_at_256() {
        let a = [6f64.sqrt(), 2f64.sqrt()];
        let k = khintchine_kappa(&a, 0.2, 256).unwrap();
        assert_eq!(k.witness_q, vec![194, 14]);
        assert_eq!(k.witness_p, -495);
        // 40-digit reference |194√6 + 14√2 − 495|·194^2.2; f64 cancellation costs ~1e-8.
        assert!((k.kappa_hat - 0.002_896_998_237_564_78).abs() < 2e-8, "{}", k.kappa_hat);
    }

    #[test]
    fn witness_reproduces_and_monotone() {
        let mut rng = RandomSource::new(11, 0);
        for _ in 0..5 {
            let a = [rng.uniform(), rng.uniform()];
            let small = khintchine_kappa(&a, 0.2, 16).unwrap();
            let large = khintchine_kappa(&a, 0.2, 48).unwrap();
            assert!(large.kappa_hat <= small.kappa_hat);
            let (v, p) = linear_form_value(&a, 0.2, &large.witness_q);
            assert_eq!(v, large.kappa_hat);
            assert_eq!(p, large.witness_p);
        }
    }
}
