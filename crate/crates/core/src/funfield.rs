//! Valuations on `F = K(X)(sqrt f)` given as chains of Gauss steps.
//!
//! A step `(c, s)` on a curve over `K_l` is the Gauss valuation of the
//! `t_l`-adic valuation with respect to `Z = (X - c)/t_l^s`, extended to
//! `sqrt f`. Its residue field is `K_{l-1}(Z)(sqrt h0)` where `h0` is the
//! square-free part of the residue of `f / t_l^k`; the next step of the chain
//! lives on `h0`.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::curve::{CurveData, QuadFactor};
use crate::error::{Error, Result};
use crate::kn::KnElem;
use crate::lexgroup::LexVec;
use crate::upoly::{RatFun, UPoly};

/// `p + q sqrt f`.
#[derive(Clone, Debug)]
pub struct FunElem {
    pub f: UPoly,
    pub p: RatFun,
    pub q: RatFun,
}

impl PartialEq for FunElem {
    fn eq(&self, o: &FunElem) -> bool {
        self.f == o.f && self.p == o.p && self.q == o.q
    }
}

impl FunElem {
    pub fn new(f: UPoly, p: RatFun, q: RatFun) -> FunElem {
        FunElem { f, p, q }
    }

    pub fn from_rat(f: &UPoly, p: RatFun) -> FunElem {
        let r = f.rank();
        FunElem { f: f.clone(), p, q: RatFun::zero(r) }
    }

    pub fn from_poly(f: &UPoly, p: UPoly) -> FunElem {
        FunElem::from_rat(f, RatFun::from_poly(p))
    }

    pub fn constant(f: &UPoly, k: KnElem) -> FunElem {
        FunElem::from_rat(f, RatFun::constant(k))
    }

    /// `sqrt f` itself.
    pub fn sqrt_f(f: &UPoly) -> FunElem {
        let r = f.rank();
        FunElem { f: f.clone(), p: RatFun::zero(r), q: RatFun::one(r) }
    }

    pub fn rank(&self) -> usize {
        self.f.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn same_curve(&self, o: &FunElem) -> Result<()> {
        if self.f != o.f {
            return Err(Error::CurveMismatch("elements over different curves".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &FunElem) -> Result<FunElem> {
        self.same_curve(o)?;
        Ok(FunElem { f: self.f.clone(), p: self.p.add(&o.p), q: self.q.add(&o.q) })
    }

    pub fn sub(&self, o: &FunElem) -> Result<FunElem> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> FunElem {
        FunElem { f: self.f.clone(), p: self.p.neg(), q: self.q.neg() }
    }

    pub fn mul(&self, o: &FunElem) -> Result<FunElem> {
        self.same_curve(o)?;
        let pp = self.p.mul(&o.p);
        let qq = self.q.mul(&o.q);
        let p = if qq.is_zero() { pp } else { pp.add(&qq.mul_poly(&self.f)) };
        let q = self.p.mul(&o.q).add(&self.q.mul(&o.p));
        Ok(FunElem { f: self.f.clone(), p, q })
    }

    pub fn square(&self) -> FunElem {
        self.mul(self).expect("same curve")
    }

    pub fn scale(&self, k: &KnElem) -> FunElem {
        FunElem { f: self.f.clone(), p: self.p.scale(k), q: self.q.scale(k) }
    }

    pub fn mul_rat(&self, r: &RatFun) -> FunElem {
        FunElem { f: self.f.clone(), p: self.p.mul(r), q: self.q.mul(r) }
    }

    /// `(p - q sqrt f) / (p^2 - q^2 f)`.
    pub fn inv(&self) -> Result<FunElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = self.p.mul(&self.p).sub(&self.q.mul(&self.q).mul_poly(&self.f));
        let ni = norm.inv()?;
        Ok(FunElem { f: self.f.clone(), p: self.p.mul(&ni), q: self.q.neg().mul(&ni) })
    }
}

impl fmt::Display for FunElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", self.p),
            (true, false) => write!(f, "({})*s", self.q),
            (false, false) => write!(f, "{} + ({})*s", self.p, self.q),
        }
    }
}

/// Data of one Gauss step on a given curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// `t_l`-adic Gauss value of `f`.
    pub k: i64,
    pub ramified: bool,
    /// Residue constant of `f / t^k`.
    pub eps: KnElem,
    /// `eps` times the odd-multiplicity residue factors.
    pub core: CurveData,
    /// Product of the even parts, so residue of `f/t^k` is `square^2 * core`.
    pub square: UPoly,
}

#[derive(Clone, Debug)]
enum Item {
    Lin(KnElem),
    Quad(KnElem, KnElem, Option<KnElem>),
}

impl Item {
    fn same(&self, o: &Item) -> bool {
        match (self, o) {
            (Item::Lin(a), Item::Lin(b)) => a == b,
            (Item::Quad(a, b, _), Item::Quad(c, d, _)) => a == c && b == d,
            _ => false,
        }
    }

    fn poly(&self, rank: usize) -> UPoly {
        match self {
            Item::Lin(r) => UPoly::linear(-r, KnElem::one(rank)),
            Item::Quad(a, b, _) => {
                let l = UPoly::linear(-a, KnElem::one(rank));
                l.mul(&l).add(&UPoly::constant(b.clone()))
            }
        }
    }
}

fn v1_or_inf(x: &KnElem) -> Option<i64> {
    x.v1()
}

/// Reduce `curve` at the disc `(center, scale)`.
pub fn reduce(curve: &CurveData, center: &KnElem, scale: i64) -> Result<Reduction> {
    let l = curve.rank;
    if l == 0 {
        return Err(Error::MalformedCandidate("no Gauss step over the base field".into()));
    }
    if center.rank() != l {
        return Err(Error::RankMismatch { expected: l, found: center.rank() });
    }
    let s = scale;
    let resid = |x: &KnElem, e: i64| -> Result<KnElem> { (x * &KnElem::t_top_pow(l, -e)).residue() };
    let mut k = curve.alpha.first_value()?;
    let mut eps = curve.alpha.unit_residue()?;
    let mut items: Vec<Item> = Vec::new();
    let zero_root = KnElem::zero(l - 1);
    for c in &curve.lins {
        let d = center - c;
        match v1_or_inf(&d) {
            None => {
                k += s;
                items.push(Item::Lin(zero_root.clone()));
            }
            Some(delta) if s < delta => {
                k += s;
                items.push(Item::Lin(zero_root.clone()));
            }
            Some(delta) if s > delta => {
                k += delta;
                eps = &eps * &d.unit_residue()?;
            }
            Some(_) => {
                k += s;
                items.push(Item::Lin(-&resid(&d, s)?));
            }
        }
    }
    for q in &curve.quads {
        let d = center - &q.a;
        let beta = q.beta();
        let mu = v1_or_inf(&d).map_or(beta, |delta| delta.min(beta));
        if s < mu {
            k += 2 * s;
            items.push(Item::Lin(zero_root.clone()));
            items.push(Item::Lin(zero_root.clone()));
        } else if s > mu {
            k += 2 * mu;
            eps = &eps * &resid(&(&(&d * &d) + &q.b_sq), 2 * mu)?;
        } else {
            k += 2 * s;
            let abar = resid(&d, s)?;
            let bbar = resid(&q.b_sq, 2 * s)?;
            if bbar.is_zero() {
                items.push(Item::Lin(-&abar));
                items.push(Item::Lin(-&abar));
            } else {
                let b = match &q.b {
                    Some(b) => Some(resid(b, s)?),
                    None => bbar.try_sqrt(),
                };
                items.push(Item::Quad(-&abar, bbar, b));
            }
        }
    }
    let mut groups: Vec<(Item, u32)> = Vec::new();
    for it in items {
        match groups.iter_mut().find(|(g, _)| g.same(&it)) {
            Some((_, m)) => *m += 1,
            None => groups.push((it, 1)),
        }
    }
    let mut square = UPoly::one(l - 1);
    let mut quads = Vec::new();
    let mut lins = Vec::new();
    for (it, m) in &groups {
        if m / 2 > 0 {
            square = square.mul(&it.poly(l - 1).pow(m / 2));
        }
        if m % 2 == 1 {
            match it {
                Item::Lin(r) => lins.push(r.clone()),
                Item::Quad(a, b, bb) => quads.push(QuadFactor { a: a.clone(), b_sq: b.clone(), b: bb.clone() }),
            }
        }
    }
    let core = CurveData { rank: l - 1, alpha: eps.clone(), quads, lins };
    Ok(Reduction { k, ramified: k.rem_euclid(2) == 1, eps, core, square })
}

/// The curve carried by the residue field of a step, or `Rational` when the
/// residue field is a rational function field over `K_{l-1}` (ramified, or
/// `f` a square in the residue).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Twist {
    Rational,
    Curve(CurveData),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussStep {
    pub center: KnElem,
    pub scale: i64,
    pub ramified: bool,
    pub twist: Twist,
    /// Curve the step lives on.
    pub curve: CurveData,
    pub reduction: Reduction,
    /// `sqrt(eps)` when the residue curve splits.
    split_root: Option<KnElem>,
    fpoly: OnceLock<UPoly>,
}

impl GaussStep {
    pub fn new(curve: &CurveData, center: KnElem, scale: i64) -> Result<GaussStep> {
        let red = reduce(curve, &center, scale)?;
        let split = !red.ramified && red.core.quads.is_empty() && red.core.lins.is_empty()
            && red.eps.is_square_class_trivial();
        let twist = if red.ramified || split { Twist::Rational } else { Twist::Curve(red.core.clone()) };
        let split_root = if split { red.eps.try_sqrt() } else { None };
        Ok(GaussStep {
            center,
            scale,
            ramified: red.ramified,
            twist,
            curve: curve.clone(),
            reduction: red,
            split_root,
            fpoly: OnceLock::new(),
        })
    }

    fn poly(&self) -> &UPoly {
        self.fpoly.get_or_init(|| self.curve.poly())
    }

    pub fn rank(&self) -> usize {
        self.curve.rank
    }

    /// The curve the following step lives on.
    pub fn next_curve(&self) -> CurveData {
        match &self.twist {
            Twist::Curve(c) => c.clone(),
            Twist::Rational => CurveData::unit(self.rank() - 1),
        }
    }

    /// Same Gauss valuation: equal scale and centers in each other's disc.
    pub fn same_disc(&self, center: &KnElem, scale: i64) -> bool {
        self.scale == scale && (&self.center - center).v1().is_none_or(|v| v >= scale)
    }
}

/// A valuation of rank `d` on the function field of `base`: `d` Gauss steps,
/// each on the residue curve of the previous one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValChain {
    pub base: CurveData,
    pub steps: Vec<GaussStep>,
}

impl ValChain {
    pub fn trivial(base: &CurveData) -> ValChain {
        ValChain { base: base.clone(), steps: vec![] }
    }

    /// Build from `(center, scale)` pairs, each in the coordinates of the
    /// previous residue curve.
    pub fn from_discs(base: &CurveData, discs: &[(KnElem, i64)]) -> Result<ValChain> {
        let mut w = ValChain::trivial(base);
        for (c, s) in discs {
            w = w.push(c.clone(), *s)?;
        }
        Ok(w)
    }

    pub fn push(&self, center: KnElem, scale: i64) -> Result<ValChain> {
        if self.steps.last().is_some_and(|s| s.ramified) {
            return Err(Error::MalformedCandidate("step after a ramified step".into()));
        }
        let curve = self.last_curve();
        let step = GaussStep::new(&curve, center, scale)?;
        let mut steps = self.steps.clone();
        steps.push(step);
        Ok(ValChain { base: self.base.clone(), steps })
    }

    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// Curve on which a further step would live.
    pub fn last_curve(&self) -> CurveData {
        self.steps.last().map_or_else(|| self.base.clone(), |s| s.next_curve())
    }

    pub fn coarsen(&self, r: usize) -> Result<ValChain> {
        if r > self.depth() {
            return Err(Error::OutOfRange { index: r as i64, max: self.depth() as i64 });
        }
        Ok(ValChain { base: self.base.clone(), steps: self.steps[..r].to_vec() })
    }

    pub fn compose(&self, vbar: &ValChain) -> Result<ValChain> {
        if vbar.base != self.last_curve() {
            return Err(Error::CurveMismatch("residual chain is not on the residue curve".into()));
        }
        if self.steps.last().is_some_and(|s| s.ramified) && vbar.depth() > 0 {
            return Err(Error::MalformedCandidate("step after a ramified step".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend(vbar.steps.iter().cloned());
        Ok(ValChain { base: self.base.clone(), steps })
    }

    pub fn residual(&self, r: usize) -> Result<ValChain> {
        if r > self.depth() {
            return Err(Error::OutOfRange { index: r as i64, max: self.depth() as i64 });
        }
        let base = self.coarsen(r)?.last_curve();
        Ok(ValChain { base, steps: self.steps[r..].to_vec() })
    }

    /// Value of `sigma`, one coordinate per step. A ramified last step
    /// contributes twice its half-integral value.
    pub fn value(&self, sigma: &FunElem) -> Result<LexVec> {
        if sigma.is_zero() {
            return Err(Error::ZeroInput);
        }
        let f = self.steps.first().map_or_else(|| self.base.poly(), |s| s.poly().clone());
        if sigma.f != f {
            return Err(Error::CurveMismatch("element is not on the chain's curve".into()));
        }
        let mut p = sigma.p.clone();
        let mut q = sigma.q.clone();
        let mut out = Vec::with_capacity(self.depth());
        for (i, st) in self.steps.iter().enumerate() {
            let (v, np, nq) = st.advance(&p, &q, i + 1 == self.depth())?;
            out.push(v);
            p = np;
            q = nq;
        }
        Ok(LexVec::new(out))
    }

    /// Whether two chains induce the same valuation: same scales, and each
    /// center lies in the other's disc after translating the residue variable.
    pub fn equivalent(&self, o: &ValChain) -> bool {
        if self.base != o.base || self.depth() != o.depth() {
            return false;
        }
        let mut shift = KnElem::zero(self.base.rank);
        for (a, b) in self.steps.iter().zip(&o.steps) {
            if a.scale != b.scale {
                return false;
            }
            let d = &(&a.center + &shift) - &b.center;
            if d.v1().is_some_and(|v| v < a.scale) {
                return false;
            }
            let l = a.rank();
            match (&d * &KnElem::t_top_pow(l, -a.scale)).residue() {
                Ok(g) => shift = g,
                Err(_) => return false,
            }
        }
        true
    }
}

impl GaussStep {
    /// Value of `p + q sqrt f` at this step and its residue, as `(p, q)` on
    /// the next curve. After a ramified step the residue is left zero.
    fn advance(&self, p: &RatFun, q: &RatFun, last: bool) -> Result<(i64, RatFun, RatFun)> {
        let red = &self.reduction;
        let gp = if p.is_zero() { None } else { Some(p.gauss(&self.center, self.scale)?) };
        let gq = if q.is_zero() { None } else { Some(q.gauss(&self.center, self.scale)?) };
        let r = self.rank() - 1;
        if self.ramified {
            if !last {
                return Err(Error::MalformedCandidate("ramified step must be last".into()));
            }
            let v = [gp.map(|(v, _)| 2 * v), gq.map(|(v, _)| 2 * v + red.k)].into_iter().flatten().min();
            return Ok((v.ok_or(Error::ZeroInput)?, RatFun::zero(r), RatFun::zero(r)));
        }
        let half = red.k / 2;
        let m = [gp.as_ref().map(|(v, _)| *v), gq.as_ref().map(|(v, _)| v + half)]
            .into_iter()
            .flatten()
            .min()
            .ok_or(Error::ZeroInput)?;
        let np = match gp {
            Some((v, pr)) if v == m => pr,
            _ => RatFun::zero(r),
        };
        let nq = match gq {
            Some((v, qr)) if v + half == m => qr.mul_poly(&red.square),
            _ => RatFun::zero(r),
        };
        if self.twist == Twist::Rational {
            let e = self.split_root.clone().ok_or_else(|| {
                Error::PreconditionUnverified("square root of the split residue constant".into())
            })?;
            let merged = np.add(&nq.scale(&e));
            if merged.is_zero() && !last {
                return Err(Error::PreconditionUnverified("cancellation at a split step".into()));
            }
            return Ok((m, merged, RatFun::zero(r)));
        }
        Ok((m, np, nq))
    }
}

impl GaussStep {
    /// Lift an element of the residue function field back through this step:
    /// `Z -> (X - c)/t^s` and `sqrt h0 -> sqrt f / (t^(k/2) S)`.
    pub fn lift(&self, x: &FunElem) -> Result<FunElem> {
        let l = self.rank();
        let b = KnElem::t_top_pow(l, -self.scale);
        let a = -&(&self.center * &b);
        let sub = |r: &RatFun| r.embed_up().compose_affine(&a, &b);
        let f = self.poly().clone();
        let p = sub(&x.p)?;
        if x.q.is_zero() {
            return Ok(FunElem::from_rat(&f, p));
        }
        if self.twist == Twist::Rational {
            return Err(Error::CurveMismatch("square root part over a rational residue field".into()));
        }
        let s = sub(&RatFun::from_poly(self.reduction.square.clone()))?
            .scale(&KnElem::t_top_pow(l, self.reduction.k / 2));
        Ok(FunElem::new(f, p, sub(&x.q)?.div(&s)?))
    }
}

impl ValChain {
    /// Lift an element on the curve reached after `r` steps to the base curve.
    pub fn lift(&self, r: usize, x: &FunElem) -> Result<FunElem> {
        if r > self.depth() {
            return Err(Error::OutOfRange { index: r as i64, max: self.depth() as i64 });
        }
        let mut x = x.clone();
        for st in self.steps[..r].iter().rev() {
            x = st.lift(&x)?;
        }
        Ok(x)
    }
}

impl fmt::Display for ValChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| format!("({}, {})", s.center, s.scale)).collect();
        write!(f, "[{}]", parts.join(" -> "))
    }
}

struct TwistStr<'a>(&'a Twist);

impl fmt::Display for TwistStr<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Twist::Rational => write!(f, "rational"),
            Twist::Curve(c) => c.fmt_var(f, "Z"),
        }
    }
}

impl Serialize for GaussStep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GaussStep", 4)?;
        st.serialize_field("center", &self.center.to_string())?;
        st.serialize_field("scale", &self.scale)?;
        st.serialize_field("ramified", &self.ramified)?;
        st.serialize_field("twist", &TwistStr(&self.twist).to_string())?;
        st.end()
    }
}

impl Serialize for ValChain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.steps.serialize(s)
    }
}

/// `Phi_S(sigma)`: last coordinate of each value, mod 2.
pub fn phi(set: &[ValChain], sigma: &FunElem) -> Result<Vec<u8>> {
    if sigma.is_zero() {
        return Err(Error::ZeroInput);
    }
    // value and residue after each shared prefix of discs
    let mut seen: HashMap<Vec<(KnElem, i64)>, (i64, RatFun, RatFun)> = HashMap::new();
    let mut out = Vec::with_capacity(set.len());
    for w in set {
        let f = w.steps.first().map_or_else(|| w.base.poly(), |s| s.poly().clone());
        if sigma.f != f {
            return Err(Error::CurveMismatch("element is not on the chain's curve".into()));
        }
        let (mut p, mut q) = (sigma.p.clone(), sigma.q.clone());
        let mut key = Vec::with_capacity(w.depth());
        let mut last = 0;
        for (i, st) in w.steps.iter().enumerate() {
            key.push((st.center.clone(), st.scale));
            let (v, np, nq) = match seen.get(&key) {
                Some(hit) => hit.clone(),
                None => {
                    let r = st.advance(&p, &q, true)?;
                    seen.insert(key.clone(), r.clone());
                    r
                }
            };
            if i + 1 < w.depth() && (st.ramified || np.is_zero() && nq.is_zero()) {
                return Err(Error::MalformedCandidate("chain continues past a degenerate step".into()));
            }
            last = v;
            (p, q) = (np, nq);
        }
        out.push(last.rem_euclid(2) as u8);
    }
    Ok(out)
}

/// Prefix closure without repetitions, ordered by depth then by display.
pub fn make_coherent(set: &[ValChain]) -> Vec<ValChain> {
    let mut out: Vec<ValChain> = Vec::new();
    for w in set {
        for r in 1..=w.depth() {
            let p = w.coarsen(r).expect("in range");
            if !out.iter().any(|o| o.equivalent(&p)) {
                out.push(p);
            }
        }
    }
    out.sort_by_cached_key(|w| (w.depth(), w.to_string()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::NormalizeOptions;

    fn k(c: i64) -> KnElem {
        KnElem::int(1, c)
    }
    fn t() -> KnElem {
        KnElem::t(1, 1).unwrap()
    }
    fn quad(q: KnElem) -> UPoly {
        UPoly::from_coeffs(q.rank(), vec![q.clone(), KnElem::zero(q.rank()), KnElem::one(q.rank())])
    }
    fn large_root_curve() -> CurveData {
        CurveData::from_factors(k(1), &[(UPoly::linear(k(-1), t()), 1), (quad(k(1)), 1)], &NormalizeOptions::default())
            .unwrap()
    }
    fn genus0(n: usize) -> CurveData {
        CurveData::from_factors(KnElem::int(n, -1), &[(quad(KnElem::int(n, 1)), 1)], &NormalizeOptions::default())
            .unwrap()
    }

    #[test]
    fn reduction_of_example_curve() {
        let c = CurveData::from_factors(k(-1), &[(quad(k(1)), 1), (quad(t().pow(2).unwrap()), 1)],
            &NormalizeOptions::default()).unwrap();
        let r = reduce(&c, &k(0), 1).unwrap();
        assert_eq!(r.k, 2);
        assert_eq!(r.eps, KnElem::int(0, -1));
        assert_eq!(r.core.quads.len(), 1);
        assert!(r.square.degree() == Some(0));
        let r = reduce(&c, &k(0), 0).unwrap();
        assert_eq!((r.k, r.core.quads.len(), r.square.degree()), (0, 1, Some(1)));
        let ram = CurveData::new(-t(), c.quads[..1].to_vec(), vec![]).unwrap();
        assert!(reduce(&ram, &k(0), 0).unwrap().ramified);
    }

    #[test]
    fn large_root_curve_values() {
        let c = large_root_curve();
        let f = c.poly();
        let w = ValChain::from_discs(&c, &[(k(0), 0)]).unwrap();
        let tx = FunElem::from_poly(&f, UPoly::linear(k(0), t()));
        assert_eq!(w.value(&tx).unwrap(), LexVec::new(vec![1]));
        assert_eq!(phi(std::slice::from_ref(&w), &tx).unwrap(), vec![1]);
        let rho = FunElem::from_poly(&f, UPoly::linear(t(), k(3)));
        assert_eq!(w.value(&rho.square()).unwrap(), w.value(&rho).unwrap().scale(2));
        // sqrt f has value k/2 with k = 0 here
        assert_eq!(w.value(&FunElem::sqrt_f(&f)).unwrap(), LexVec::new(vec![0]));
    }

    #[test]
    fn chain_calculus() {
        let c = genus0(2);
        let w1 = ValChain::from_discs(&c, &[(KnElem::int(2, 0), 0)]).unwrap();
        let vbar = ValChain::from_discs(&w1.last_curve(), &[(KnElem::int(1, 0), 0)]).unwrap();
        let w = w1.compose(&vbar).unwrap();
        assert_eq!(w.depth(), 2);
        assert_eq!(w.coarsen(1).unwrap(), w1);
        assert_eq!(w.coarsen(2).unwrap(), w);
        assert_eq!(w.coarsen(0).unwrap().depth(), 0);
        assert_eq!(w.residual(1).unwrap(), vbar);
        assert_eq!(w.residual(0).unwrap(), w);
        assert_eq!(w.residual(2).unwrap().depth(), 0);
        assert_eq!(w1.compose(&ValChain::trivial(&w1.last_curve())).unwrap(), w1);
        assert!(matches!(w1.compose(&w1), Err(Error::CurveMismatch(_))));
        assert!(w.coarsen(3).is_err());

        let coh = make_coherent(&[w.clone()]);
        assert_eq!(coh, vec![w1.clone(), w.clone()]);
        assert_eq!(make_coherent(&coh), coh);
        // the same rank-1 valuation with a different center in the disc
        let w1b = ValChain::from_discs(&c, &[(KnElem::t(2, 2).unwrap(), 0)]).unwrap();
        assert!(w1.equivalent(&w1b));
        assert_eq!(make_coherent(&[w1.clone(), w1b]).len(), 1);
    }

    #[test]
    fn lifted_residue_variable_has_value_zero() {
        let c = genus0(2);
        let w = ValChain::from_discs(&c, &[(KnElem::int(2, 0), 1)]).unwrap();
        let h = w.last_curve();
        let z = FunElem::from_poly(&h.poly(), UPoly::x(1));
        let lz = w.lift(1, &z).unwrap();
        assert_eq!(w.value(&lz).unwrap(), LexVec::new(vec![0]));
        let ys = w.lift(1, &FunElem::sqrt_f(&h.poly())).unwrap();
        let k = w.steps[0].reduction.k;
        assert_eq!(w.value(&ys).unwrap(), LexVec::new(vec![0]));
        assert_eq!(w.value(&FunElem::sqrt_f(&c.poly())).unwrap(), LexVec::new(vec![k / 2]));
    }

    #[test]
    fn values_are_additive_on_samples() {
        let c = large_root_curve();
        let f = c.poly();
        let w = ValChain::from_discs(&c, &[(k(0), -1)]).unwrap();
        let a = FunElem::new(f.clone(), RatFun::from_poly(UPoly::linear(k(1), t())), RatFun::one(1));
        let b = FunElem::new(f.clone(), RatFun::from_poly(UPoly::x(1)), RatFun::constant(t()));
        let ab = a.mul(&b).unwrap();
        assert_eq!(w.value(&ab).unwrap(), w.value(&a).unwrap().checked_add(&w.value(&b).unwrap()).unwrap());
        let inv = a.inv().unwrap();
        assert_eq!(w.value(&inv).unwrap(), w.value(&a).unwrap().neg());
    }
}
