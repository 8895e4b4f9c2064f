//! Property Γ over rational multilayer selections, plus the a = W failure.

use rug::Rational;

use ria_core::constellations::select_table_one;
use ria_core::decoder::{scan_rational_multilayer, GammaVerdict};

fn main() -> ria_core::Result<()> {
    let mut holds = 0;
    for (n, m) in [(1u64, 2u64), (2, 3), (1, 3), (3, 4), (1, 4), (5, 7), (3, 11), (7, 12)] {
        let sel = select_table_one(&Rational::from((n, m)))?;
        if sel.degenerate {
            println!("{n}/{m}: degenerate selection (a={}, W={}), skipped", sel.a, sel.w);
            continue;
        }
        for levels in 1..=3 {
            let scan = scan_rational_multilayer(n, m, sel.w, sel.a, levels)?;
            println!(
                "{n}/{m} case {} a={} W={} L={levels}: {} tuples, d_min = {}, {}",
                sel.case,
                sel.a,
                sel.w,
                scan.tuples,
                scan.dmin,
                scan.verdict.tag()
            );
            holds += usize::from(scan.verdict == GammaVerdict::Holds);
        }
    }
    println!("{holds} scans hold");

    let scan = scan_rational_multilayer(2, 3, 6, 6, 2)?;
    if let GammaVerdict::Violated { first, second } = scan.verdict {
        println!("a = W = 6, L = 2: digits {:?} and {:?} collide", scan.digits(first), scan.digits(second));
    }
    Ok(())
}
