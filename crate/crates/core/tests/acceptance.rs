mod common;

use std::time::Instant;

use common::{curve, kn, optimal, rand_elem, random_curve};
use hypersq::analyzer::{check_totally_positive, count_bad_valuations, make_generator};
use hypersq::expr::parse_element;
use hypersq::quadform::is_sum_of_k_squares;
use hypersq::{analyze, phi, AnalyzeOptions, CurveData, KnElem, ValChain};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn m_of(c: &CurveData) -> usize {
    count_bad_valuations(c, &AnalyzeOptions::default()).unwrap().0.len()
}

fn genus_zero(n: usize) -> CurveData {
    curve("Y^2 = -(X^2+1)", n)
}

fn two_quadratics() -> CurveData {
    curve("Y^2 = -(X^2+1)*(X^2+t1^2)", 1)
}

const OPTIMAL: [(usize, usize); 5] = [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)];

/// Curves of criteria 1 to 4.
fn main_curves() -> Vec<CurveData> {
    let mut v: Vec<CurveData> = (1..=3).map(genus_zero).collect();
    v.extend((1..=2).map(|n| curve("Y^2 = X^2+1", n)));
    v.push(two_quadratics());
    v.extend(OPTIMAL.iter().map(|&(n, g)| optimal(n, g)));
    v
}

fn large_root_curve() -> CurveData {
    curve("Y^2 = (t1*X-1)*(X^2+1)", 1)
}

fn no_gens() -> AnalyzeOptions {
    AnalyzeOptions { generators: false, ..AnalyzeOptions::default() }
}

fn c1() -> Result<(), String> {
    for n in 1..=3 {
        let a = analyze(&genus_zero(n), &no_gens()).map_err(|e| e.to_string())?;
        if a.m() != n || a.order_g() != Some(1 << n) {
            return Err(format!("n={n}: m={}", a.m()));
        }
    }
    Ok(())
}

fn c2() -> Result<(), String> {
    for n in 1..=2 {
        let a = analyze(&curve("Y^2 = X^2+1", n), &no_gens()).map_err(|e| e.to_string())?;
        if a.m() != 0 || a.order_g() != Some(1) || a.pythagoras() != "≤2" {
            return Err(format!("n={n}: m={} pythagoras {}", a.m(), a.pythagoras()));
        }
    }
    Ok(())
}

fn c3() -> Result<(), String> {
    let a = analyze(&two_quadratics(), &no_gens()).map_err(|e| e.to_string())?;
    if a.order_g() != Some(4) {
        return Err(format!("order {:?}", a.order_g()));
    }
    Ok(())
}

fn c4() -> Result<(), String> {
    for (n, g) in OPTIMAL {
        let start = Instant::now();
        let a = analyze(&optimal(n, g), &no_gens()).map_err(|e| e.to_string())?;
        let secs = start.elapsed().as_secs_f64();
        if a.m() != n * (g + 1) || a.m() != a.bound() || a.order_g() != Some(1 << a.bound()) {
            return Err(format!("(n,g)=({n},{g}): m={}", a.m()));
        }
        if (n, g) == (3, 1) && secs >= 10.0 {
            return Err(format!("(3,1) took {secs:.1}s"));
        }
    }
    Ok(())
}

fn c5() -> Result<(), String> {
    let c = large_root_curve();
    let tx = parse_element("t1*X", &c).map_err(|e| e.to_string())?;
    let opts = AnalyzeOptions { trace: true, generators: false, ..AnalyzeOptions::default() };
    let a = analyze(&c, &opts).map_err(|e| e.to_string())?;
    let sos = check_totally_positive(&c, &tx.p).map_err(|e| e.to_string())?;
    let member = sos && a.is_sum_two_squares(&tx).map_err(|e| e.to_string())?;
    if member || !sos {
        return Err(format!("tX: sum of squares {sos}, member {member}"));
    }
    let w = ValChain::from_discs(&c, &[(KnElem::zero(1), 0)]).map_err(|e| e.to_string())?;
    if phi(&[w], &tx).map_err(|e| e.to_string())? != vec![1] {
        return Err("phi(tX) vanishes at Gauss(0,0)".into());
    }
    let trace = a.trace.clone().unwrap_or_default();
    let counted = trace.iter().filter(|t| t.counted).count();
    if trace.is_empty() || counted != a.m() {
        return Err("trace does not certify the count".into());
    }
    if a.m() != 1 {
        return Err(format!("m={} , expected 1", a.m()));
    }
    Ok(())
}

fn c6() -> Result<(), String> {
    for src in ["Y^2 = (X^2+1)*(X^2+t1^2)", "Y^2 = (X^2+1)*(X^2+4)"] {
        for n in 1..=2 {
            let m = m_of(&curve(src, n));
            if m != 0 {
                return Err(format!("{src}, n={n}: m={m}"));
            }
        }
    }
    Ok(())
}

fn c7() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=2 {
        for g in 0..=2 {
            for _ in 0..1000 {
                let c = random_curve(&mut rng, n, g);
                let m = m_of(&c);
                if m > n * (g + 1) {
                    return Err(format!("{c} over K_{n}: m={m}"));
                }
                if n == 1 && m == g + 1 && !c.is_nonreal() {
                    return Err(format!("{c}: optimal but real"));
                }
            }
        }
    }
    Ok(())
}

fn c8() -> Result<(), String> {
    for c in main_curves() {
        let (set, _) = count_bad_valuations(&c, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
        for (i, w) in set.iter().enumerate() {
            let s = make_generator(&c, w, &set).map_err(|e| format!("{c}: {e}"))?;
            let e: Vec<u8> = (0..set.len()).map(|j| u8::from(i == j)).collect();
            if phi(&set, &s).map_err(|e| e.to_string())? != e {
                return Err(format!("{c}: generator {i}"));
            }
        }
    }
    Ok(())
}

fn c9() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=3);
        let x = kn(&mut rng, n);
        let a = x.is_sum_two_squares().map_err(|e| e.to_string())?;
        let b = is_sum_of_k_squares(&x, 2).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("{x}: {a} vs {b}"));
        }
    }
    Ok(())
}

fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

fn c10() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for c in main_curves() {
        let (set, _) = count_bad_valuations(&c, &AnalyzeOptions::default()).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let (s, t, r) = (rand_elem(&mut rng, &c), rand_elem(&mut rng, &c), rand_elem(&mut rng, &c));
            let ps = phi(&set, &s).map_err(|e| e.to_string())?;
            let pt = phi(&set, &t).map_err(|e| e.to_string())?;
            let pst = phi(&set, &s.mul(&t).unwrap()).map_err(|e| e.to_string())?;
            let psr = phi(&set, &s.mul(&r.square()).unwrap()).map_err(|e| e.to_string())?;
            if pst != xor(&ps, &pt) || psr != ps {
                return Err(format!("{c}: sigma = {s}, tau = {t}"));
            }
        }
    }
    Ok(())
}

fn c11() -> Result<(), String> {
    let mut curves: Vec<CurveData> = main_curves().into_iter().filter(|c| c.rank <= 2).collect();
    curves.push(large_root_curve());
    for src in ["Y^2 = (X^2+1)*(X^2+t1^2)", "Y^2 = (X^2+1)*(X^2+4)"] {
        curves.extend((1..=2).map(|n| curve(src, n)));
    }
    let full = AnalyzeOptions { prune: false, generators: false, ..AnalyzeOptions::default() };
    for c in curves {
        let a = m_of(&c);
        let b = count_bad_valuations(&c, &full).map_err(|e| e.to_string())?.0.len();
        if a != b {
            return Err(format!("{c}: pruned {a}, full {b}"));
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Result<(), String>); 11] = [
        ("genus zero nonreal: m = n", c1),
        ("genus zero real: m = 0, pythagoras <= 2", c2),
        ("two-quadratic curve: order 4", c3),
        ("optimal family reaches the bound", c4),
        ("t1*X on the curve with a large linear root", c5),
        ("real curves with imaginary roots: m = 0", c6),
        ("random curves respect the bound", c7),
        ("generators map to the basis", c8),
        ("two squares in K_n: recursion vs isotropy", c9),
        ("phi is a homomorphism killing squares", c10),
        ("pruning does not change m", c11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
