//! One generator of S(F)/S2(F) per counted valuation.

use hypersq::analyzer::{count_bad_valuations, make_generator};
use hypersq::expr::parse_curve;
use hypersq::{phi, AnalyzeOptions, NormalizeOptions};

fn main() -> hypersq::Result<()> {
    for (src, n) in [("Y^2 = -(X^2+1)", 2), ("Y^2 = -(X^2+1)*(X^2+t1^2)", 1), ("Y^2 = -(X^2+1)*(X^2+t2^2)", 2)] {
        let c = parse_curve(src, n, &NormalizeOptions::default())?;
        let (set, _) = count_bad_valuations(&c, &AnalyzeOptions::default())?;
        println!("{c} over K_{n}: m = {}", set.len());
        for w in &set {
            let s = make_generator(&c, w, &set)?;
            let text = s.to_string();
            let short = if text.len() > 100 { format!("{}...", &text[..100]) } else { text };
            println!("  {w}\n    phi = {:?}\n    {short}", phi(&set, &s)?);
        }
    }
    Ok(())
}
