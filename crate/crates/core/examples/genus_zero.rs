//! The conic Y^2 = -(X^2+1) over K_1, K_2, K_3.

use hypersq::expr::parse_curve;
use hypersq::{analyze, AnalyzeOptions, NormalizeOptions};

fn main() -> hypersq::Result<()> {
    for n in 1..=3 {
        let c = parse_curve("Y^2 = -(X^2+1)", n, &NormalizeOptions::default())?;
        let a = analyze(&c, &AnalyzeOptions::default())?;
        println!("n = {n}: m = {}, |S/S2| = {:?}, bound 2^{}", a.m(), a.order_g(), a.bound());
        for w in &a.chains {
            println!("  {w}");
        }
    }
    // A real conic has no level-two valuations.
    let c = parse_curve("Y^2 = X^2+1", 2, &NormalizeOptions::default())?;
    let a = analyze(&c, &AnalyzeOptions::default())?;
    println!("Y^2 = X^2+1 over K_2: m = {}, pythagoras {}", a.m(), a.pythagoras());
    Ok(())
}
