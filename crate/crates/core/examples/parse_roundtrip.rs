use hypersq::expr::{parse_curve, parse_element, parse_expr, parse_kn};
use hypersq::NormalizeOptions;

fn main() -> hypersq::Result<()> {
    let e = parse_expr("(t1*X - 1)^2 / t2 + sqrt(3)")?;
    println!("expr: {e:?}");
    let x = parse_kn("(1 + t1)^2 - t2^-1", 2)?;
    println!("K_2 element: {x}, value {}", x.valuation()?);
    let c = parse_curve("Y^2 = -2*(X^2+1)*(X-t1)*(X+1)", 1, &NormalizeOptions::default())?;
    println!("curve: {c}, genus {}", c.genus());
    let again = parse_curve(&c.to_string(), 1, &NormalizeOptions::default())?;
    println!("reparsed equal: {}", again.poly() == c.poly());
    let s = parse_element("X/(X+1) + (X-t1)*s", &c)?;
    println!("element: {s}");
    for bad in ["X^", "t9 + 1", "Y^2 = X^3 + 1", "(X-1)^2*(X+1)"] {
        match parse_curve(bad, 1, &NormalizeOptions::default()) {
            Ok(c) => println!("{bad:?} -> {c}"),
            Err(e) => println!("{bad:?} -> error: {e}"),
        }
    }
    Ok(())
}
