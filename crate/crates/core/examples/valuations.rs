//! Building chains by hand, evaluating elements, and residual chains.

use hypersq::expr::{parse_curve, parse_element};
use hypersq::{KnElem, NormalizeOptions, ValChain};

fn main() -> hypersq::Result<()> {
    let c = parse_curve("Y^2 = -(X^2+1)*(X^2+t2^2)", 2, &NormalizeOptions::default())?;
    let zero = KnElem::zero(2);
    let w = ValChain::from_discs(&c, &[(zero.clone(), 1), (KnElem::zero(1), 0)])?;
    println!("chain {w}, depth {}", w.depth());
    for (i, s) in w.steps.iter().enumerate() {
        println!("  step {i}: ramified {}, next curve {}", s.ramified, s.next_curve());
    }
    for src in ["X", "X^2 + t2^2", "t1 + X", "Y", "1 + Y/t2"] {
        let sigma = parse_element(src, &c)?;
        println!("  value({src}) = {}", w.value(&sigma)?);
    }
    let first = w.coarsen(1)?;
    let rest = w.residual(1)?;
    println!("coarsen(1) = {first}, residual(1) = {rest}");
    println!("compose gives back: {}", first.compose(&rest)?.equivalent(&w));
    Ok(())
}
