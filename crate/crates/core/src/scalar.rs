//! Exact real numbers in multiquadratic towers `Q(sqrt p1, ..., sqrt pk)`.
//!
//! An element is a finite sum `c_r * sqrt(r)` over square-free radicals `r`
//! (with `r = 1` the rational part). The tower is implicit in the radicals
//! that occur; [`Tower`] only matters when asking for square roots.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    terms: BTreeMap<u64, BigRational>,
}

/// The set of primes whose square roots are admitted.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Tower {
    primes: BTreeSet<u64>,
}

pub fn prime_factors(mut r: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= r {
        if r % p == 0 {
            out.push(p);
            while r % p == 0 {
                r /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if r > 1 {
        out.push(r);
    }
    out
}

/// `m = s^2 * r` with `r` square-free.
fn square_free_split(m: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut r = 1u64;
    let mut m = m;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            r *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, r * m)
}

pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

impl Tower {
    pub fn rational() -> Self {
        Tower::default()
    }

    pub fn from_primes(ps: impl IntoIterator<Item = u64>) -> Self {
        Tower { primes: ps.into_iter().collect() }
    }

    /// Smallest tower containing every given element.
    pub fn of<'a>(xs: impl IntoIterator<Item = &'a Scalar>) -> Self {
        let mut t = Tower::default();
        for x in xs {
            t.primes.extend(x.primes());
        }
        t
    }

    pub fn primes(&self) -> &BTreeSet<u64> {
        &self.primes
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        x.primes().is_subset(&self.primes)
    }

    /// Adjoin `sqrt(q)` for a positive rational `q`.
    pub fn adjoin_rational_sqrt(&mut self, q: &BigRational) -> Result<()> {
        if !q.is_positive() {
            return Err(Error::NegativeInput);
        }
        let m = (q.numer() * q.denom()).to_u64().ok_or(Error::NotRepresentable)?;
        let (_, r) = square_free_split(m);
        self.primes.extend(prime_factors(r));
        Ok(())
    }

    pub fn union(&self, other: &Tower) -> Tower {
        Tower { primes: self.primes.union(&other.primes).copied().collect() }
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        Scalar { terms }
    }

    /// `sqrt(q)` for a nonnegative rational `q`, simplified.
    pub fn sqrt_of_rational(q: &BigRational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::NegativeInput);
        }
        if q.is_zero() {
            return Ok(Scalar::zero());
        }
        // sqrt(n/d) = sqrt(n*d)/d
        let m = (q.numer() * q.denom()).to_u64().ok_or(Error::NotRepresentable)?;
        let (s, r) = square_free_split(m);
        let c = BigRational::new(BigInt::from(s), q.denom().clone());
        Ok(Scalar::radical(r, c))
    }

    pub fn sqrt_of_int(d: u64) -> Self {
        let (s, r) = square_free_split(d);
        Scalar::radical(r, BigRational::from_integer(BigInt::from(s)))
    }

    fn radical(r: u64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(r, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&1).is_some_and(|c| c.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&r| r == 1)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.is_rational() {
            return None;
        }
        Some(self.terms.get(&1).cloned().unwrap_or_else(BigRational::zero))
    }

    /// Number of radical terms; used to decide on parentheses when printing.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn primes(&self) -> BTreeSet<u64> {
        self.terms.keys().flat_map(|&r| prime_factors(r)).collect()
    }

    fn insert_term(terms: &mut BTreeMap<u64, BigRational>, r: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = terms.entry(r).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            terms.remove(&r);
        }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(&r, c)| (r, c * q)).collect() }
    }

    /// `x = a + b*sqrt(p)` with `a`, `b` free of `p`.
    fn split(&self, p: u64) -> (Scalar, Scalar) {
        let mut a = Scalar::zero();
        let mut b = Scalar::zero();
        for (&r, c) in &self.terms {
            if r % p == 0 {
                b.terms.insert(r / p, c.clone());
            } else {
                a.terms.insert(r, c.clone());
            }
        }
        (a, b)
    }

    fn join(a: &Scalar, b: &Scalar, p: u64) -> Scalar {
        a + &(b * &Scalar::radical(p, BigRational::one()))
    }

    /// Exact sign under the real embedding with positive square roots.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let Some(&p) = self.primes().iter().next_back() else {
            return if self.terms[&1].is_positive() { 1 } else { -1 };
        };
        let (a, b) = self.split(p);
        let (sa, sb) = (a.sign(), b.sign());
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with p*b^2
        let pq = BigRational::from_integer(BigInt::from(p));
        let n = &(&a * &a) - &(&b * &b).scale_rational(&pq);
        sa * n.sign()
    }

    pub fn abs(&self) -> Scalar {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some(&p) = self.primes().iter().next_back() else {
            return Ok(Scalar::from_rational(self.terms[&1].recip()));
        };
        let (a, b) = self.split(p);
        let pq = BigRational::from_integer(BigInt::from(p));
        let n = &(&a * &a) - &(&b * &b).scale_rational(&pq);
        let ninv = n.inv()?;
        Ok(&Scalar::join(&a, &(-&b), p) * &ninv)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut r = Scalar::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Nonnegative square root inside `tower`, if there is one.
    pub fn try_sqrt(&self, tower: &Tower) -> Result<Option<Scalar>> {
        if self.sign() < 0 {
            return Err(Error::NegativeInput);
        }
        if !tower.contains(self) {
            return Ok(None);
        }
        let ps: Vec<u64> = tower.primes.iter().copied().collect();
        Ok(sqrt_in(self, &ps).map(|y| y.abs()))
    }

    /// Square root in the tower of `self`, adjoining `sqrt(self)` when `self`
    /// is rational. `None` means the root is not multiquadratic.
    pub fn sqrt_extending(&self) -> Result<Option<Scalar>> {
        let t = Tower::of([self]);
        if let Some(y) = self.try_sqrt(&t)? {
            return Ok(Some(y));
        }
        if let Some(q) = self.to_rational() {
            return Ok(Some(Scalar::sqrt_of_rational(&q)?));
        }
        Ok(None)
    }
}

fn sqrt_in(x: &Scalar, ps: &[u64]) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    let Some((&p, rest)) = ps.split_last() else {
        return rational_sqrt(&x.to_rational()?).map(Scalar::from_rational);
    };
    let (a, b) = x.split(p);
    let pq = BigRational::from_integer(BigInt::from(p));
    if b.is_zero() {
        if let Some(c) = sqrt_in(&a, rest) {
            return Some(c);
        }
        let e = sqrt_in(&a.scale_rational(&pq.recip()), rest)?;
        return Some(Scalar::join(&Scalar::zero(), &e, p));
    }
    let n = &(&a * &a) - &(&b * &b).scale_rational(&pq);
    if n.sign() < 0 {
        return None;
    }
    let rn = sqrt_in(&n, rest)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for cand in [&a + &rn, &a - &rn] {
        let cand = cand.scale_rational(&half);
        if cand.sign() <= 0 {
            continue;
        }
        if let Some(c) = sqrt_in(&cand, rest) {
            let e = b.div(&c.scale_rational(&BigRational::from_integer(BigInt::from(2)))).ok()?;
            let y = Scalar::join(&c, &e, p);
            if &(&y * &y) == x {
                return Some(y);
            }
        }
    }
    None
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (&r, c) in &o.terms {
            Scalar::insert_term(&mut terms, r, c.clone());
        }
        Scalar { terms }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let mut terms = self.terms.clone();
        for (&r, c) in &o.terms {
            Scalar::insert_term(&mut terms, r, -c.clone());
        }
        Scalar { terms }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        let mut terms = BTreeMap::new();
        for (&r, c) in &self.terms {
            for (&s, d) in &o.terms {
                let g = r.gcd(&s);
                let rad = (r / g) * (s / g);
                let coef = c * d * BigRational::from_integer(BigInt::from(g));
                Scalar::insert_term(&mut terms, rad, coef);
            }
        }
        Scalar { terms }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(&r, c)| (r, -c.clone())).collect() }
    }
}

macro_rules! owned_ops {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { (&self).$m(&o) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t { (&self).$m(o) }
        }
    )*};
}
pub(crate) use owned_ops;

owned_ops!(Scalar, Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&r, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (r, a.is_one()) {
                (1, _) => write!(f, "{}", fmt_rational(&a))?,
                (_, true) => write!(f, "sqrt({r})")?,
                (_, false) => write!(f, "{}*sqrt({r})", fmt_rational(&a))?,
            }
        }
        Ok(())
    }
}
