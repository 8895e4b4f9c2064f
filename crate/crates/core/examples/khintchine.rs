//! Brute-force Khintchine–Groshev constants for a few direction pairs.

use ria_core::diophantine::khintchine_kappa;
use ria_core::numerics::RandomSource;

fn main() -> ria_core::Result<()> {
    let mut alphas = vec![vec![2f64.sqrt(), 3f64.sqrt()], vec![0.5, 0.25]];
    let mut rng = RandomSource::new(1, 0);
    alphas.extend((0..3).map(|_| vec![rng.uniform(), rng.uniform()]));
    for alpha in &alphas {
        let row: Vec<String> = [64u32, 128, 256]
            .iter()
            .map(|&q| khintchine_kappa(alpha, 0.2, q).map(|k| format!("{:.3e}", k.kappa_hat)))
            .collect::<Result<_, _>>()?;
        let last = khintchine_kappa(alpha, 0.2, 256)?;
        println!(
            "alpha = [{:.5}, {:.5}]: kappa(64,128,256) = {} witness p={} q={:?}",
            alpha[0],
            alpha[1],
            row.join(", "),
            last.witness_p,
            last.witness_q
        );
    }
    Ok(())
}
