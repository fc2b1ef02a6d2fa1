//! Elements of `K_n = R((t1))...((tn))` as reduced rational functions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::lexgroup::LexVec;
use crate::mpoly::{t_names, MPoly};
use crate::scalar::{owned_ops, Scalar};

/// `num/den` with `gcd(num, den) = 1` and the least term of `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KnElem {
    rank: usize,
    num: MPoly,
    den: MPoly,
}

/// Class in `K_n^x / K_n^x2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SquareClass {
    pub parity: LexVec,
    pub residue_sign: i32,
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        self.parity.is_zero() && self.residue_sign > 0
    }

    pub fn is_minus_square(&self) -> bool {
        self.parity.is_zero() && self.residue_sign < 0
    }
}

impl KnElem {
    pub fn from_parts(num: MPoly, den: MPoly) -> Result<KnElem> {
        if num.nvars() != den.nvars() {
            return Err(Error::RankMismatch { expected: num.nvars(), found: den.nvars() });
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let rank = num.nvars();
        if num.is_zero() {
            return Ok(KnElem::zero(rank));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.low_term().expect("nonzero").1.clone();
        if lc.is_one() {
            return Ok(KnElem { rank, num, den });
        }
        let inv = lc.inv()?;
        Ok(KnElem { rank, num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(num: MPoly) -> KnElem {
        let n = num.nvars();
        KnElem::from_parts(num, MPoly::one(n)).expect("unit denominator")
    }

    pub fn zero(rank: usize) -> KnElem {
        KnElem { rank, num: MPoly::zero(rank), den: MPoly::one(rank) }
    }

    pub fn one(rank: usize) -> KnElem {
        KnElem::from_scalar(rank, Scalar::one())
    }

    pub fn from_scalar(rank: usize, c: Scalar) -> KnElem {
        KnElem { rank, num: MPoly::constant(rank, c), den: MPoly::one(rank) }
    }

    pub fn int(rank: usize, n: i64) -> KnElem {
        KnElem::from_scalar(rank, Scalar::from_int(n))
    }

    pub fn frac(rank: usize, n: i64, d: i64) -> KnElem {
        KnElem::from_scalar(rank, Scalar::from_frac(n, d))
    }

    /// The parameter `t_i`, `1 <= i <= rank`.
    pub fn t(rank: usize, i: usize) -> Result<KnElem> {
        if i < 1 || i > rank {
            return Err(Error::OutOfRange { index: i as i64, max: rank as i64 });
        }
        Ok(KnElem::from_poly(MPoly::var(rank, rank - i)))
    }

    /// The outermost parameter `t_rank`.
    pub fn t_top(rank: usize) -> KnElem {
        KnElem::from_poly(MPoly::var(rank, 0))
    }

    /// `t_rank^e` for any integer `e`.
    pub fn t_top_pow(rank: usize, e: i64) -> KnElem {
        let mut m = vec![0i64; rank];
        m[0] = e;
        KnElem::monomial(rank, &m)
    }

    /// Monomial with signed exponents in storage order.
    pub fn monomial(rank: usize, e: &[i64]) -> KnElem {
        KnElem::one(rank).mul_monomial(e)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn scalar_value(&self) -> Option<Scalar> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn check(&self, o: &KnElem) {
        assert_eq!(self.rank, o.rank, "rank mismatch in K_n arithmetic");
    }

    pub fn inv(&self) -> Result<KnElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = self.num.low_term().expect("nonzero").1.inv()?;
        Ok(KnElem { rank: self.rank, num: self.den.scale(&lc), den: self.num.scale(&lc) })
    }

    pub fn div(&self, o: &KnElem) -> Result<KnElem> {
        self.check(o);
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<KnElem> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(KnElem { rank: self.rank, num: self.num.pow(e), den: self.den.pow(e) })
    }

    pub fn scale(&self, c: &Scalar) -> KnElem {
        if c.is_zero() {
            return KnElem::zero(self.rank);
        }
        KnElem { rank: self.rank, num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiply by the monomial `t^e` (storage order, signed exponents).
    pub fn mul_monomial(&self, e: &[i64]) -> KnElem {
        let up: Vec<u32> = e.iter().map(|&x| x.max(0) as u32).collect();
        let down: Vec<u32> = e.iter().map(|&x| (-x).max(0) as u32).collect();
        let num = self.num.mul_monomial(&up);
        let den = self.den.mul_monomial(&down);
        let g: Vec<u32> =
            num.min_monomial().iter().zip(den.min_monomial()).map(|(a, b)| (*a).min(b)).collect();
        if self.is_zero() {
            return self.clone();
        }
        KnElem { rank: self.rank, num: num.div_monomial(&g), den: den.div_monomial(&g) }
    }

    pub fn valuation(&self) -> Result<LexVec> {
        let (ne, _) = self.num.low_term().ok_or(Error::ZeroInput)?;
        let (de, _) = self.den.low_term().expect("nonzero denominator");
        Ok(LexVec::new(ne.iter().zip(de).map(|(a, b)| *a as i64 - *b as i64).collect()))
    }

    /// First coordinate of the valuation: the `t_rank`-adic order.
    pub fn first_value(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.rank == 0 {
            return Err(Error::OutOfRange { index: 1, max: 0 });
        }
        Ok(self.num.min_exp_in(0) as i64 - self.den.min_exp_in(0) as i64)
    }

    /// `t_rank`-adic order, `None` for zero.
    pub fn v1(&self) -> Option<i64> {
        self.first_value().ok()
    }

    /// `x / t^v(x)`.
    pub fn angular(&self) -> Result<KnElem> {
        let v = self.valuation()?;
        Ok(self.mul_monomial(&v.neg().coords().to_vec()))
    }

    /// Residue modulo the `t_rank`-adic valuation, an element of `K_{rank-1}`.
    pub fn residue(&self) -> Result<KnElem> {
        if self.rank == 0 {
            return Err(Error::OutOfRange { index: 1, max: 0 });
        }
        if self.is_zero() {
            return Ok(KnElem::zero(self.rank - 1));
        }
        match self.first_value()? {
            v if v < 0 => Err(Error::NegativeValue),
            v if v > 0 => Ok(KnElem::zero(self.rank - 1)),
            _ => self.unit_residue(),
        }
    }

    /// Residue of `x / t_rank^{v1(x)}`; nonzero for nonzero `x`.
    pub fn unit_residue(&self) -> Result<KnElem> {
        if self.rank == 0 {
            return Err(Error::OutOfRange { index: 1, max: 0 });
        }
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let shift = |p: &MPoly| {
            let mut m = vec![0; self.rank];
            m[0] = p.min_exp_in(0);
            p.div_monomial(&m).at_top_zero()
        };
        KnElem::from_parts(shift(&self.num), shift(&self.den))
    }

    pub fn residue_sign(&self) -> i32 {
        match self.num.low_term() {
            None => 0,
            Some((_, c)) => c.sign(),
        }
    }

    pub fn square_class(&self) -> Result<SquareClass> {
        Ok(SquareClass { parity: self.valuation()?.parity(), residue_sign: self.residue_sign() })
    }

    pub fn is_square_class_trivial(&self) -> bool {
        self.square_class().is_ok_and(|c| c.is_trivial())
    }

    /// Membership in `S_2(K_n)`, by recursion on the rank.
    pub fn is_sum_two_squares(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.rank == 0 {
            return Ok(self.residue_sign() > 0);
        }
        if self.first_value()? % 2 != 0 {
            return Ok(false);
        }
        self.unit_residue()?.is_sum_two_squares()
    }

    /// Sign under the ordering in which `t_i` is a positive or negative
    /// infinitesimal; `signs[j]` is the sign of the variable at storage index `j`.
    pub fn sign_under(&self, signs: &[i32]) -> i32 {
        let Ok(v) = self.valuation() else { return 0 };
        let mut s = self.residue_sign();
        for (c, &e) in v.coords().iter().zip(signs) {
            if c.rem_euclid(2) == 1 {
                s *= e;
            }
        }
        s
    }

    /// `K_{rank} -> K_{rank+1}`, the new outermost parameter not occurring.
    pub fn embed_up(&self) -> KnElem {
        KnElem { rank: self.rank + 1, num: self.num.embed_up(), den: self.den.embed_up() }
    }

    /// Square root inside the rational functions, if `self` is the square of one.
    pub fn try_sqrt(&self) -> Option<KnElem> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if !self.is_square_class_trivial() {
            return None;
        }
        let sd = poly_sqrt(&self.den)?;
        let sn = poly_sqrt(&self.num)?;
        let y = KnElem::from_parts(sn, sd).ok()?;
        let y = if y.residue_sign() < 0 { -&y } else { y };
        (&(&y * &y) == self).then_some(y)
    }
}

/// Square root of a polynomial by peeling off highest terms.
fn poly_sqrt(p: &MPoly) -> Option<MPoly> {
    let n = p.nvars();
    let (he, hc) = p.terms().iter().next_back()?;
    if he.iter().any(|e| e % 2 != 0) {
        return None;
    }
    let bounds: Vec<u32> = (0..n).map(|v| p.degree_in(v) / 2).collect();
    let lows: Vec<u32> = (0..n).map(|v| p.min_exp_in(v)).collect();
    let lead_c = hc.sqrt_extending().ok()??;
    let lead_e: Vec<u32> = he.iter().map(|e| e / 2).collect();
    let lead = MPoly::monomial(lead_e.clone(), lead_c.clone());
    let two_lead_inv = (&lead_c * &Scalar::from_int(2)).inv().ok()?;
    let mut q = lead.clone();
    let mut rem = p.sub(&q.mul(&q));
    while let Some((re, rc)) = rem.terms().iter().next_back() {
        if re.iter().zip(&lead_e).any(|(a, b)| a < b) {
            return None;
        }
        let e: Vec<u32> = re.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
        if e.iter().zip(&bounds).any(|(a, b)| a > b) || e.iter().zip(&lows).any(|(a, l)| 2 * a < *l) {
            return None;
        }
        let t = MPoly::monomial(e, rc * &two_lead_inv);
        rem = rem.sub(&t.mul(&t).add(&t.mul(&q).scale(&Scalar::from_int(2))));
        q = q.add(&t);
    }
    Some(q)
}

impl Add for &KnElem {
    type Output = KnElem;
    fn add(self, o: &KnElem) -> KnElem {
        self.check(o);
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return KnElem::from_parts(self.num.add(&o.num), self.den.clone()).expect("nonzero den");
        }
        KnElem::from_parts(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
            .expect("nonzero den")
    }
}

impl Sub for &KnElem {
    type Output = KnElem;
    fn sub(self, o: &KnElem) -> KnElem {
        self + &(-o)
    }
}

impl Mul for &KnElem {
    type Output = KnElem;
    fn mul(self, o: &KnElem) -> KnElem {
        self.check(o);
        if self.is_zero() || o.is_zero() {
            return KnElem::zero(self.rank);
        }
        if self.den.is_one() && o.den.is_one() {
            return KnElem { rank: self.rank, num: self.num.mul(&o.num), den: self.den.clone() };
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = o.den.div_exact(&g1).expect("gcd divides");
        let n2 = o.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.low_term().expect("nonzero").1.inv().expect("nonzero");
        KnElem { rank: self.rank, num: num.scale(&lc), den: den.scale(&lc) }
    }
}

impl Neg for &KnElem {
    type Output = KnElem;
    fn neg(self) -> KnElem {
        KnElem { rank: self.rank, num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for KnElem {
    type Output = KnElem;
    fn neg(self) -> KnElem {
        -&self
    }
}

owned_ops!(KnElem, Add add, Sub sub, Mul mul);

impl fmt::Display for KnElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = t_names(self.rank);
        if self.den.is_one() {
            return self.num.fmt_with(f, &names);
        }
        write!(f, "(")?;
        self.num.fmt_with(f, &names)?;
        write!(f, ")/(")?;
        self.den.fmt_with(f, &names)?;
        write!(f, ")")
    }
}
