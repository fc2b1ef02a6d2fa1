//! Search trace for Y^2 = (t1 X - 1)(X^2 + 1), which has a linear factor
//! with a large root. The element t1*X is a sum of squares but not of two.

use hypersq::analyzer::membership;
use hypersq::expr::{parse_curve, parse_element};
use hypersq::report::AnalysisReport;
use hypersq::{analyze, phi, AnalyzeOptions, NormalizeOptions};

fn main() -> hypersq::Result<()> {
    let c = parse_curve("Y^2 = (t1*X-1)*(X^2+1)", 1, &NormalizeOptions::default())?;
    let opts = AnalyzeOptions { trace: true, ..AnalyzeOptions::default() };
    let a = analyze(&c, &opts)?;
    print!("{}", AnalysisReport::from(&a).to_text());

    let tx = parse_element("t1*X", &c)?;
    println!("phi(t1*X) = {:?}", phi(&a.chains, &tx)?);
    println!("t1*X in S2: {}", membership(&a, &tx, true)?);
    Ok(())
}
