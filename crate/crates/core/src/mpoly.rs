//! Sparse multivariate polynomials over [`Scalar`].
//!
//! Exponent vectors are stored most significant variable first: index 0 is
//! `t_n`, the last index is `t_1`. With this layout the derived `Ord` on
//! `Vec<u32>` is the lexicographic monomial order matching [`crate::LexVec`],
//! so the first key of the map is the monomial of least value.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        MPoly::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Scalar::one())
    }

    pub fn monomial(exp: Vec<u32>, c: Scalar) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        MPoly { nvars, terms }
    }

    /// The variable stored at `idx`.
    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        MPoly::monomial(e, Scalar::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Scalar::zero))
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Term of least value.
    pub fn low_term(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next()
    }

    fn high_term(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn min_exp_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).min().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &[u32]) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Divide by a monomial that divides every term.
    pub fn div_monomial(&self, m: &[u32]) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum of exponents over all terms.
    pub fn min_monomial(&self) -> Vec<u32> {
        let mut m: Option<Vec<u32>> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(m) => m.iter().zip(e).map(|(a, b)| (*a).min(*b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.nvars])
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut r = MPoly::one(self.nvars);
        let mut b = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// Substitute 0 for the variable at index 0 and drop it.
    pub fn at_top_zero(&self) -> MPoly {
        let mut r = MPoly::zero(self.nvars.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[0] == 0 {
                r.terms.insert(e[1..].to_vec(), c.clone());
            }
        }
        r
    }

    /// The same polynomial in one more variable, placed at index 0.
    pub fn embed_up(&self) -> MPoly {
        MPoly {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = Vec::with_capacity(e.len() + 1);
                    f.push(0);
                    f.extend_from_slice(e);
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Make the coefficient of the least term equal to 1.
    pub fn normalize_low(&self) -> MPoly {
        match self.low_term() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero coefficient")),
        }
    }

    /// Exact quotient, `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &MPoly) -> Option<MPoly> {
        let (be, bc) = b.high_term()?;
        let bc_inv = bc.inv().ok()?;
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.high_term() {
            if re.iter().zip(be).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(be).map(|(a, b)| a - b).collect();
            let c = rc * &bc_inv;
            let t = MPoly::monomial(e, c);
            rem = rem.sub(&t.mul(b));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Substitute small integers for every variable but `v`.
    fn eval_except(&self, v: usize, pts: &[i64]) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut k = c.clone();
            for (j, &x) in e.iter().enumerate() {
                if j != v && x > 0 {
                    k = &k * &Scalar::from_int(pts[j]).pow(x);
                }
            }
            let mut f = vec![0; self.nvars];
            f[v] = e[v];
            out.add_term(f, k);
        }
        out
    }

    /// Value at the integer point `pts`.
    pub fn eval_at(&self, pts: &[i64]) -> Scalar {
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            let mut k = c.clone();
            for (&x, &p) in e.iter().zip(pts) {
                if x > 0 {
                    k = &k * &Scalar::from_int(p).pow(x);
                }
            }
            out = &out + &k;
        }
        out
    }

    /// True when the images of `a`, `b` at some point keep their degree in
    /// `v` and are coprime, which forces the gcd to be free of `v`.
    fn coprime_image(a: &MPoly, b: &MPoly, v: usize) -> bool {
        let n = a.nvars;
        if (0..n).all(|j| j == v || (a.degree_in(j) == 0 && b.degree_in(j) == 0)) {
            return false;
        }
        const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
        for shift in 0..2 {
            let pts: Vec<i64> = (0..n).map(|j| PRIMES[(j + 3 * shift) % 8] + shift as i64).collect();
            let (ea, eb) = (a.eval_except(v, &pts), b.eval_except(v, &pts));
            if ea.degree_in(v) != a.degree_in(v) || eb.degree_in(v) != b.degree_in(v) {
                continue;
            }
            return ea.gcd(&eb).is_constant();
        }
        false
    }

    fn first_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&v| self.terms.keys().any(|e| e[v] > 0))
    }

    /// Coefficients with respect to variable `v`.
    fn coeffs_in(&self, v: usize) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[v] = 0;
            out.entry(e[v]).or_insert_with(|| MPoly::zero(self.nvars)).terms.insert(f, c.clone());
        }
        out
    }

    fn lead_coeff_in(&self, v: usize) -> MPoly {
        let d = self.degree_in(v);
        self.coeffs_in(v).remove(&d).unwrap_or_else(|| MPoly::zero(self.nvars))
    }

    fn content_in(&self, v: usize) -> MPoly {
        let mut it = self.coeffs_in(v).into_values();
        let first = it.next().unwrap_or_else(|| MPoly::zero(self.nvars));
        let mut g = first.normalize_low();
        for c in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(&c);
        }
        g
    }

    fn primitive_in(&self, v: usize) -> MPoly {
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    fn prem(&self, b: &MPoly, v: usize) -> MPoly {
        let db = b.degree_in(v);
        let lb = b.lead_coeff_in(v);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= db {
            let dr = r.degree_in(v);
            let lr = r.lead_coeff_in(v);
            let mut shift = vec![0; self.nvars];
            shift[v] = dr - db;
            r = r.mul(&lb).sub(&lr.mul(&b.mul_monomial(&shift)));
        }
        r
    }

    /// Greatest common divisor, normalized by [`MPoly::normalize_low`].
    pub fn gcd(&self, b: &MPoly) -> MPoly {
        if self.is_zero() {
            return b.normalize_low();
        }
        if b.is_zero() {
            return self.normalize_low();
        }
        if self.is_constant() || b.is_constant() {
            return MPoly::one(self.nvars);
        }
        if self.len() == 1 || b.len() == 1 {
            let m: Vec<u32> =
                self.min_monomial().iter().zip(b.min_monomial()).map(|(x, y)| (*x).min(y)).collect();
            return MPoly::monomial(m, Scalar::one());
        }
        let v = match (self.first_var(), b.first_var()) {
            (Some(x), Some(y)) => x.min(y),
            _ => return MPoly::one(self.nvars),
        };
        let ca = self.content_in(v);
        let cb = b.content_in(v);
        let mut pa = self.div_exact(&ca).expect("content divides");
        let mut pb = b.div_exact(&cb).expect("content divides");
        let c = ca.gcd(&cb);
        if MPoly::coprime_image(&pa, &pb, v) {
            return c.normalize_low();
        }
        let g = loop {
            if pa.degree_in(v) < pb.degree_in(v) {
                std::mem::swap(&mut pa, &mut pb);
            }
            if pb.degree_in(v) == 0 {
                break MPoly::one(self.nvars);
            }
            let r = pa.prem(&pb, v);
            if r.is_zero() {
                break pb;
            }
            if r.degree_in(v) == 0 {
                break MPoly::one(self.nvars);
            }
            pa = pb;
            pb = r.primitive_in(v).normalize_low();
        };
        c.mul(&g).normalize_low()
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, names: &[String]) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(j, &x)| if x == 1 { names[j].clone() } else { format!("{}^{}", names[j], x) })
                .collect();
            let (neg, mag) = if c.term_count() == 1 && c.sign() < 0 { (true, -c) } else { (false, c.clone()) };
            let coef = if mag.term_count() > 1 { format!("({mag})") } else { mag.to_string() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if mono.is_empty() {
                write!(f, "{coef}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", coef, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Names `t_n, ..., t_1` in storage order.
pub fn t_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("t{}", n - i)).collect()
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &t_names(self.nvars))
    }
}
