//! Theoretical DOF over Farey fractions and quadratic irrationals: the rational discontinuity.

use ria_core::harness::{gain_scan_records, ExperimentConfig, Scenario};

fn main() -> ria_core::Result<()> {
    let mut config = ExperimentConfig::new(Scenario::GainScan, 1.0);
    config.farey_order = 6;
    let (rows, _) = gain_scan_records(&config)?;
    for r in rows {
        let h =
            if r.h_den_or_tag == "irrational" { r.h_num.clone() } else { format!("{}/{}", r.h_num, r.h_den_or_tag) };
        let bar = "#".repeat((r.theory_dof * 30.0) as usize);
        println!("{h:>12} {:>10} a={:<3} W={:<6} {:.4} {bar}", r.case, r.a, r.w, r.theory_dof);
    }
    Ok(())
}
