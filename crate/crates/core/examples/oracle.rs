//! Diagonal forms over K_n and sums of squares of constants.

use hypersq::expr::{parse_form, parse_kn};
use hypersq::quadform::is_sum_of_k_squares;

fn main() -> hypersq::Result<()> {
    for (src, n) in [("<1, 1, -t1>", 1), ("<1, -1>", 1), ("<1, t1, -t2, -t1*t2>", 2), ("<1, t1, t2>", 2)] {
        let f = parse_form(src, n)?;
        let (u, v) = f.springer_split()?;
        let word = if f.is_isotropic() { "isotropic" } else { "anisotropic" };
        println!("{f}: {word} (units {u}, t-part {v})");
    }
    for (src, n) in [("1 + t1^2", 1), ("t1", 1), ("1 + t1", 1), ("-1", 2), ("2 + t2/t1", 2)] {
        let x = parse_kn(src, n)?;
        let k: Vec<bool> = (1..=3).map(|k| is_sum_of_k_squares(&x, k)).collect::<Result<_, _>>()?;
        println!("{x}: sum of 1/2/3 squares {k:?}");
    }
    Ok(())
}
