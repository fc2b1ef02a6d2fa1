use hypersq::analyzer::membership;
use hypersq::expr::{parse_curve, parse_element};
use hypersq::{analyze, phi, AnalyzeOptions, NormalizeOptions};

fn main() -> hypersq::Result<()> {
    let c = parse_curve("Y^2 = -(X^2+1)*(X^2+t1^2)", 1, &NormalizeOptions::default())?;
    let a = analyze(&c, &AnalyzeOptions { generators: false, ..AnalyzeOptions::default() })?;
    for src in ["1 + X^2", "X^2 + t1^2", "t1*(X^2+1)", "(X^2+1)*(X^2+t1^2)", "X", "-1"] {
        let sigma = parse_element(src, &c)?;
        let verdict = membership(&a, &sigma, true)?;
        println!("{src:>22}: phi = {:?}, sum of two squares: {verdict}", phi(&a.chains, &sigma)?);
    }
    // Elements with a sqrt part skip the positivity check.
    let sigma = parse_element("2 + Y", &c)?;
    println!("2 + Y: phi = {:?}", phi(&a.chains, &sigma)?);
    Ok(())
}
