mod common;

use common::{curve, kn, rand_elem, random_curve};
use hypersq::analyzer::{count_bad_valuations, enumerate_candidates};
use hypersq::expr::parse_curve;
use hypersq::funfield::reduce;
use hypersq::{phi, AnalyzeOptions, Error, FunElem, KnElem, NormalizeOptions, UPoly, ValChain};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn discs(rng: &mut ChaCha8Rng, c: &hypersq::CurveData) -> Vec<(KnElem, i64)> {
    let mut v = enumerate_candidates(c);
    v.push((kn(rng, c.rank), rng.gen_range(-2..=3)));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_matches_direct_gauss(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let g = rng.gen_range(0..=2);
        let c = random_curve(&mut rng, n, g);
        for (center, s) in discs(&mut rng, &c) {
            let r = reduce(&c, &center, s).unwrap();
            let (k, res) = c.poly().gauss(&center, s).unwrap();
            prop_assert_eq!(r.k, k);
            prop_assert_eq!(r.ramified, k % 2 != 0);
            prop_assert_eq!(r.square.mul(&r.square).mul(&r.core.poly()), res);
        }
    }

    #[test]
    fn count_invariant_under_square_scaling(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=2);
        let g = rng.gen_range(0..=1);
        let c = random_curve(&mut rng, n, g);
        let u = kn(&mut rng, n);
        let opts = AnalyzeOptions { generators: false, ..AnalyzeOptions::default() };
        let a = count_bad_valuations(&c, &opts).unwrap().0.len();
        let b = count_bad_valuations(&c.scaled_by_square(&u), &opts).unwrap().0.len();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn curve_display_reparses(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let g = rng.gen_range(0..=2);
        let c = random_curve(&mut rng, n, g);
        let again = parse_curve(&c.to_string(), n, &NormalizeOptions::default()).unwrap();
        prop_assert_eq!(again.poly(), c.poly());
    }

    #[test]
    fn element_arithmetic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_curve(&mut rng, 1, 1);
        let (x, y, z) = (rand_elem(&mut rng, &c), rand_elem(&mut rng, &c), rand_elem(&mut rng, &c));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let one = FunElem::constant(&c.poly(), KnElem::one(1));
        prop_assert_eq!(x.mul(&x.inv().unwrap()).unwrap(), one);
        let s = FunElem::sqrt_f(&c.poly());
        prop_assert_eq!(s.square(), FunElem::from_poly(&c.poly(), c.poly()));
    }

    #[test]
    fn value_is_additive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_curve(&mut rng, 1, 1);
        let (x, y) = (rand_elem(&mut rng, &c), rand_elem(&mut rng, &c));
        for (center, s) in enumerate_candidates(&c) {
            let w = ValChain::from_discs(&c, &[(center, s)]).unwrap();
            let v = match w.value(&x.mul(&y).unwrap()) {
                Err(Error::PreconditionUnverified(_)) => continue,
                v => v.unwrap(),
            };
            prop_assert_eq!(v, w.value(&x).unwrap().checked_add(&w.value(&y).unwrap()).unwrap());
        }
    }

    #[test]
    fn phi_matches_chain_values(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = [curve("Y^2 = -(X^2+1)*(X^2+t2^2)", 2), curve("Y^2 = -(X^2+1)", 3)][rng.gen_range(0..2)].clone();
        let (set, _) = count_bad_valuations(&c, &AnalyzeOptions::default()).unwrap();
        let x = rand_elem(&mut rng, &c);
        let direct: Vec<u8> = set.iter().map(|w| w.value(&x).unwrap().last().rem_euclid(2) as u8).collect();
        prop_assert_eq!(phi(&set, &x).unwrap(), direct);
    }
}

#[test]
fn constant_polynomial_reduction() {
    let c = curve("Y^2 = -(X^2+1)*(X^2+t1^2)", 1);
    let r = reduce(&c, &KnElem::zero(1), 1).unwrap();
    assert_eq!(r.k, 2);
    assert!(!r.ramified);
    assert_eq!(r.square, UPoly::one(0));
}
