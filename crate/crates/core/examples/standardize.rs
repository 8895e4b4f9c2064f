//! Rescaling a rational three-user channel to unit cross gains.

use rug::Rational;

use ria_core::alignment::{standardize_three_user, ChannelInstance, Gain};
use ria_core::numerics::FieldDescriptor;

fn main() -> ria_core::Result<()> {
    let f = FieldDescriptor::default();
    let q = |n: i64, d: i64| Gain::exact_rational(f, Rational::from((n, d)));
    let gains =
        vec![vec![q(3, 2), q(1, 3), q(5, 4)], vec![q(2, 7), q(-1, 2), q(4, 1)], vec![q(7, 5), q(2, 9), q(6, 5)]];
    let s = standardize_three_user(&ChannelInstance::new(gains, 1e6, 1.0)?)?;
    println!("G0 = {}, G1 = {} (displayed {}), G2 = {}, G3 = {}", s.g0, s.g1, s.g1_displayed, s.g2, s.g3);
    for (i, row) in s.effective.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!(
            "row {}: [{}]  power factor {:.4}, noise factor {:.4}",
            i + 1,
            cells.join(", "),
            s.power_factors[i],
            s.noise_factors[i]
        );
    }
    Ok(())
}
