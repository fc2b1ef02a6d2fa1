#![allow(dead_code)]

use hypersq::curve::NormalizeOptions;
use hypersq::expr::parse_curve;
use hypersq::{CurveData, FunElem, KnElem, QuadFactor, RatFun, Scalar, UPoly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn curve(src: &str, n: usize) -> CurveData {
    parse_curve(src, n, &NormalizeOptions::default()).unwrap()
}

/// `-prod_{i=0}^{g} (X^2 + t_n^{2i})`.
pub fn optimal(n: usize, g: usize) -> CurveData {
    let fs: Vec<String> = (0..=g).map(|i| format!("(X^2 + t{n}^{})", 2 * i)).collect();
    curve(&format!("-{}", fs.join("*")), n)
}

pub fn coeff(rng: &mut ChaCha8Rng) -> Scalar {
    let c = [(-2, 1), (-1, 1), (1, 1), (2, 1), (1, 2), (3, 1), (-3, 2)][rng.gen_range(0..7)];
    let s = Scalar::from_frac(c.0, c.1);
    if rng.gen_ratio(1, 8) { &s * &Scalar::sqrt_of_int(2) } else { s }
}

pub fn monomial(rng: &mut ChaCha8Rng, n: usize) -> KnElem {
    let e: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=2)).collect();
    KnElem::monomial(n, &e).scale(&coeff(rng))
}

/// Nonzero sum of a few monomials.
pub fn kn(rng: &mut ChaCha8Rng, n: usize) -> KnElem {
    loop {
        let k = rng.gen_range(1..=3);
        let mut x = KnElem::zero(n);
        for _ in 0..k {
            x = &x + &monomial(rng, n);
        }
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random square-free factored curve of genus `g`.
pub fn random_curve(rng: &mut ChaCha8Rng, n: usize, g: usize) -> CurveData {
    loop {
        let q = rng.gen_range(0..=g + 1);
        let deg = 2 * g + 1 + rng.gen_range(0..=1);
        if 2 * q > deg {
            continue;
        }
        let l = deg - 2 * q;
        let alpha = monomial(rng, n);
        let small = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.4) { KnElem::zero(n) } else { kn(rng, n) };
        let quads: Vec<QuadFactor> = (0..q)
            .map(|_| {
                let a = small(rng);
                QuadFactor::from_ab(a, monomial(rng, n)).unwrap()
            })
            .collect();
        let lins: Vec<KnElem> = (0..l).map(|_| small(rng)).collect();
        if let Ok(c) = CurveData::new(alpha, quads, lins) {
            if c.genus() == g {
                return c;
            }
        }
    }
}

pub fn rand_poly(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> UPoly {
    let c = (0..=deg).map(|_| if rng.gen_bool(0.3) { KnElem::zero(n) } else { kn(rng, n) }).collect();
    UPoly::from_coeffs(n, c)
}

/// Random nonzero element of the function field of `c`.
pub fn rand_elem(rng: &mut ChaCha8Rng, c: &CurveData) -> FunElem {
    let n = c.rank;
    let f = c.poly();
    loop {
        let dp = rng.gen_range(0..=2);
        let p = rand_poly(rng, n, dp);
        let dq = rng.gen_range(0..=1);
        let q = if rng.gen_bool(0.5) { UPoly::zero(n) } else { rand_poly(rng, n, dq) };
        let mut e = FunElem::new(f.clone(), RatFun::from_poly(p), RatFun::from_poly(q));
        if rng.gen_ratio(1, 4) {
            let d = UPoly::linear(-&kn(rng, n), KnElem::one(n));
            e = e.mul_rat(&RatFun::from_poly(d).inv().unwrap());
        }
        if !e.is_zero() {
            return e;
        }
    }
}
