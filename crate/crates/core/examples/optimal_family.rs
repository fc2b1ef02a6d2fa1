//! Curves reaching m = n(g+1): f = -prod_{j<=g} (X^2 + t_n^{2j}).

use std::time::Instant;

use hypersq::expr::parse_curve;
use hypersq::{analyze, AnalyzeOptions, NormalizeOptions};

fn family(n: usize, g: usize) -> String {
    let tn = format!("t{n}");
    let factors: Vec<String> = (0..=g).map(|j| format!("(X^2 + {tn}^{})", 2 * j)).collect();
    format!("Y^2 = -{}", factors.join("*"))
}

fn main() -> hypersq::Result<()> {
    let opts = AnalyzeOptions { generators: false, ..AnalyzeOptions::default() };
    for (n, g) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
        let src = family(n, g);
        let c = parse_curve(&src, n, &NormalizeOptions::default())?;
        let start = Instant::now();
        let a = analyze(&c, &opts)?;
        println!("{src} over K_{n}: m = {} of bound {} ({:.2}s)", a.m(), a.bound(), start.elapsed().as_secs_f64());
    }
    Ok(())
}
