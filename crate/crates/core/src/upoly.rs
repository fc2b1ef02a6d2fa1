//! Polynomials and rational functions in one variable over `K_n`, with the
//! Gauss valuations `(X - c) / t_n^s`.

use std::fmt;

use crate::error::{Error, Result};
use crate::kn::KnElem;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly {
    rank: usize,
    c: Vec<KnElem>,
}

impl UPoly {
    pub fn zero(rank: usize) -> UPoly {
        UPoly { rank, c: Vec::new() }
    }

    pub fn constant(k: KnElem) -> UPoly {
        let rank = k.rank();
        UPoly::from_coeffs(rank, vec![k])
    }

    pub fn one(rank: usize) -> UPoly {
        UPoly::constant(KnElem::one(rank))
    }

    pub fn x(rank: usize) -> UPoly {
        UPoly::from_coeffs(rank, vec![KnElem::zero(rank), KnElem::one(rank)])
    }

    /// `a + b X`.
    pub fn linear(a: KnElem, b: KnElem) -> UPoly {
        let rank = a.rank();
        UPoly::from_coeffs(rank, vec![a, b])
    }

    pub fn from_coeffs(rank: usize, mut c: Vec<KnElem>) -> UPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { rank, c }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeffs(&self) -> &[KnElem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> KnElem {
        self.c.get(i).cloned().unwrap_or_else(|| KnElem::zero(self.rank))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&KnElem> {
        self.c.last()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs(self.rank, (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        UPoly::from_coeffs(self.rank, (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly { rank: self.rank, c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.rank);
        }
        let mut r = vec![KnElem::zero(self.rank); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    r[i + j] = &r[i + j] + &(a * b);
                }
            }
        }
        UPoly::from_coeffs(self.rank, r)
    }

    pub fn scale(&self, k: &KnElem) -> UPoly {
        UPoly::from_coeffs(self.rank, self.c.iter().map(|x| x * k).collect())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut r = UPoly::one(self.rank);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, x: &KnElem) -> KnElem {
        let mut acc = KnElem::zero(self.rank);
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `self(g)`.
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero(self.rank);
        for c in self.c.iter().rev() {
            acc = acc.mul(g).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    /// `self(a + b X)`.
    pub fn compose_affine(&self, a: &KnElem, b: &KnElem) -> UPoly {
        if a.is_zero() {
            let mut bp = KnElem::one(self.rank);
            let mut c = Vec::with_capacity(self.c.len());
            for x in &self.c {
                c.push(x * &bp);
                bp = &bp * b;
            }
            return UPoly::from_coeffs(self.rank, c);
        }
        self.compose(&UPoly::linear(a.clone(), b.clone()))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::from_coeffs(
            self.rank,
            self.c.iter().enumerate().skip(1).map(|(i, x)| x * &KnElem::int(self.rank, i as i64)).collect(),
        )
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let li = d.lead().expect("nonzero").inv()?;
        let mut r = self.clone();
        let mut q = vec![KnElem::zero(self.rank); self.c.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let coef = &r.c[rd] * &li;
            let mut shifted = vec![KnElem::zero(self.rank); rd - dd];
            shifted.extend(d.c.iter().map(|x| x * &coef));
            r = r.sub(&UPoly::from_coeffs(self.rank, shifted));
            q[rd - dd] = coef;
        }
        Ok((UPoly::from_coeffs(self.rank, q), r))
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn embed_up(&self) -> UPoly {
        UPoly { rank: self.rank + 1, c: self.c.iter().map(|x| x.embed_up()).collect() }
    }

    /// Gauss valuation at `(X - center)/t^scale` and the residue polynomial
    /// in the rescaled variable over `K_{rank-1}`.
    pub fn gauss(&self, center: &KnElem, scale: i64) -> Result<(i64, UPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.rank == 0 {
            return Err(Error::OutOfRange { index: 1, max: 0 });
        }
        let sub = self.compose_affine(center, &KnElem::t_top_pow(self.rank, scale));
        let m = sub.c.iter().filter_map(|x| x.v1()).min().expect("nonzero");
        let mut shift = vec![0i64; self.rank];
        shift[0] = -m;
        let res: Result<Vec<KnElem>> = sub.c.iter().map(|x| x.mul_monomial(&shift).residue()).collect();
        Ok((m, UPoly::from_coeffs(self.rank - 1, res?)))
    }

    pub fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let simple = !cs.contains(' ');
            let (neg, body) = if simple && cs.starts_with('-') { (true, cs[1..].to_string()) } else { (false, cs) };
            let body = if simple { body } else { format!("({body})") };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            match (first, neg) {
                (true, true) => write!(f, "-{term}")?,
                (true, false) => write!(f, "{term}")?,
                (false, true) => write!(f, " - {term}")?,
                (false, false) => write!(f, " + {term}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "X")
    }
}

/// Rational function `num/den` in one variable; not reduced.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: UPoly,
    den: UPoly,
}

impl PartialEq for RatFun {
    fn eq(&self, o: &RatFun) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl RatFun {
    pub fn new(num: UPoly, den: UPoly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFun::zero(den.rank()));
        }
        if den.degree() == Some(0) && monomial_lead(&den) {
            let li = den.c[0].inv()?;
            return Ok(RatFun { num: num.scale(&li), den: UPoly::one(den.rank()) });
        }
        Ok(RatFun { num, den })
    }

    pub fn from_poly(p: UPoly) -> RatFun {
        let r = p.rank();
        RatFun { num: p, den: UPoly::one(r) }
    }

    pub fn constant(k: KnElem) -> RatFun {
        RatFun::from_poly(UPoly::constant(k))
    }

    pub fn zero(rank: usize) -> RatFun {
        RatFun::from_poly(UPoly::zero(rank))
    }

    pub fn one(rank: usize) -> RatFun {
        RatFun::from_poly(UPoly::one(rank))
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Polynomial part if the denominator is constant.
    pub fn as_poly(&self) -> Option<UPoly> {
        (self.den.degree() == Some(0)).then(|| self.num.scale(&self.den.c[0].inv().expect("nonzero")))
    }

    fn reduce_trivial(num: UPoly, den: UPoly) -> RatFun {
        if num.is_zero() {
            return RatFun::zero(den.rank());
        }
        if num == den {
            return RatFun::one(den.rank());
        }
        RatFun::new(num, den).expect("nonzero den")
    }

    pub fn add(&self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::reduce_trivial(self.num.add(&o.num), self.den.clone());
        }
        RatFun::reduce_trivial(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &RatFun) -> RatFun {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero(self.rank());
        }
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        RatFun::reduce_trivial(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn mul_poly(&self, p: &UPoly) -> RatFun {
        self.mul(&RatFun::from_poly(p.clone()))
    }

    pub fn scale(&self, k: &KnElem) -> RatFun {
        RatFun { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFun) -> Result<RatFun> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<RatFun> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(RatFun { num: self.num.pow(e as u32), den: self.den.pow(e as u32) })
    }

    pub fn compose_affine(&self, a: &KnElem, b: &KnElem) -> Result<RatFun> {
        RatFun::new(self.num.compose_affine(a, b), self.den.compose_affine(a, b))
    }

    pub fn embed_up(&self) -> RatFun {
        RatFun { num: self.num.embed_up(), den: self.den.embed_up() }
    }

    pub fn gauss(&self, center: &KnElem, scale: i64) -> Result<(i64, RatFun)> {
        let (vn, rn) = self.num.gauss(center, scale)?;
        let (vd, rd) = self.den.gauss(center, scale)?;
        Ok((vn - vd, RatFun::new(rn, rd)?))
    }

    pub fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.c[0].is_one() {
            return self.num.fmt_var(f, var);
        }
        write!(f, "(")?;
        self.num.fmt_var(f, var)?;
        write!(f, ")/(")?;
        self.den.fmt_var(f, var)?;
        write!(f, ")")
    }
}

fn monomial_lead(p: &UPoly) -> bool {
    p.lead().is_some_and(|l| l.num().len() == 1 && l.den().len() == 1)
}

/// Cancel common factors of the cheap kind: exact divisibility by a
/// polynomial with monomial leading coefficient.
/// Image of `p` with `t_i` sent to a fixed nonzero integer, if every
/// coefficient denominator survives.
fn image(p: &UPoly) -> Option<Vec<Scalar>> {
    const PTS: [i64; 6] = [3, 5, 7, 11, 13, 17];
    let pts = &PTS[..p.rank.min(PTS.len())];
    if pts.len() < p.rank {
        return None;
    }
    p.c.iter()
        .map(|x| {
            let d = x.den().eval_at(pts);
            if d.is_zero() {
                return None;
            }
            Some(&x.num().eval_at(pts) * &d.inv().ok()?)
        })
        .collect()
}

/// False only when `b` certainly does not divide `a`; `b` has a monomial lead.
fn may_divide(a: &UPoly, b: &UPoly) -> bool {
    let (Some(mut r), Some(d)) = (image(a), image(b)) else {
        return true;
    };
    let Some(li) = d.last().and_then(|l| l.inv().ok()) else {
        return true;
    };
    while r.len() >= d.len() {
        let q = &r[r.len() - 1] * &li;
        let off = r.len() - d.len();
        for (i, c) in d.iter().enumerate() {
            r[off + i] = &r[off + i] - &(&q * c);
        }
        r.pop();
    }
    r.iter().all(|c| c.is_zero())
}

fn cancel(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
    if da == 0 || db == 0 {
        return (a.clone(), b.clone());
    }
    if da >= db && monomial_lead(b) && may_divide(a, b) {
        if let Ok((q, r)) = a.divrem(b) {
            if r.is_zero() {
                return (q, UPoly::one(a.rank()));
            }
        }
    }
    if db >= da && monomial_lead(a) && may_divide(b, a) {
        if let Ok((q, r)) = b.divrem(a) {
            if r.is_zero() {
                return (UPoly::one(a.rank()), q);
            }
        }
    }
    (a.clone(), b.clone())
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "X")
    }
}
