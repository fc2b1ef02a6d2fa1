use hypersq::expr::parse_curve;
use hypersq::report::AnalysisReport;
use hypersq::{analyze, AnalyzeOptions, NormalizeOptions};

fn main() -> hypersq::Result<()> {
    let c = parse_curve("Y^2 = -(X^2+1)*(X^2+t1^2)", 1, &NormalizeOptions::default())?;
    let a = analyze(&c, &AnalyzeOptions::default())?;
    print!("{}", AnalysisReport::from(&a).to_text());
    Ok(())
}
