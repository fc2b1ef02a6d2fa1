//! Counting the valuations whose residue field has level two, and the
//! resulting description of sums of squares in `F`.

use std::fmt;

use serde::Serialize;

use crate::curve::CurveData;
use crate::error::{Error, Result};
use crate::funfield::{phi, FunElem, GaussStep, Twist, ValChain};
use crate::kn::KnElem;
use crate::upoly::{RatFun, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    LevelOne,
    Ruled,
    RealResidue,
    LevelTwo,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::LevelOne => "LevelOne",
            Kind::Ruled => "Ruled",
            Kind::RealResidue => "RealResidue",
            Kind::LevelTwo => "LevelTwo",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: Kind,
    pub residue_curve: Option<CurveData>,
    pub ramified: bool,
}

pub fn classify_step(step: &GaussStep) -> Classification {
    let red = &step.reduction;
    let kind = if red.ramified || step.twist == Twist::Rational {
        Kind::Ruled
    } else {
        let core = &red.core;
        let cls = red.eps.square_class().expect("nonzero residue constant");
        if !core.lins.is_empty() || !cls.parity.is_zero() {
            Kind::RealResidue
        } else if cls.is_minus_square() {
            if core.quads.is_empty() { Kind::LevelOne } else { Kind::LevelTwo }
        } else {
            Kind::RealResidue
        }
    };
    let residue_curve = matches!(kind, Kind::RealResidue | Kind::LevelTwo).then(|| red.core.clone());
    Classification { kind, residue_curve, ramified: red.ramified }
}

pub fn classify(c: &CurveData, center: &KnElem, scale: i64) -> Result<Classification> {
    Ok(classify_step(&GaussStep::new(c, center.clone(), scale)?))
}

/// Discs spanned by pairs of roots (a quadratic factor counting as a disc
/// of radius `beta` around `a`), each quadratic's own disc, and `(0, 0)`.
pub fn enumerate_candidates(c: &CurveData) -> Vec<(KnElem, i64)> {
    if c.rank == 0 {
        return vec![];
    }
    let objs: Vec<(KnElem, Option<i64>)> = c
        .lins
        .iter()
        .map(|x| (x.clone(), None))
        .chain(c.quads.iter().map(|q| (q.a.clone(), Some(q.beta()))))
        .collect();
    let mut raw: Vec<(KnElem, i64)> = vec![(KnElem::zero(c.rank), 0)];
    for (i, (ca, da)) in objs.iter().enumerate() {
        if let Some(d) = da {
            raw.push((ca.clone(), *d));
        }
        for (cb, db) in &objs[i + 1..] {
            let s = [*da, *db, (ca - cb).v1()].into_iter().flatten().min();
            if let Some(s) = s {
                raw.push((ca.clone(), s));
            }
        }
    }
    let mut out: Vec<(KnElem, i64)> = Vec::new();
    for (ctr, s) in raw {
        let ctr = if ctr.v1().is_none_or(|v| v >= s) { KnElem::zero(c.rank) } else { ctr };
        let dup = out.iter().any(|(o, os)| *os == s && (o - &ctr).v1().is_none_or(|v| v >= s));
        if !dup {
            out.push((ctr, s));
        }
    }
    out.sort_by_cached_key(|(ctr, s)| (*s, ctr.to_string()));
    out
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub prune: bool,
    /// Cap on the chain depth; `None` means the rank.
    pub max_depth: Option<usize>,
    pub trace: bool,
    pub generators: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { prune: true, max_depth: None, trace: false, generators: true }
    }
}

/// One visited candidate.
#[derive(Clone, Debug, Serialize)]
pub struct TraceNode {
    pub depth: usize,
    pub chain: String,
    pub center: String,
    pub scale: i64,
    pub k: i64,
    pub kind: Kind,
    pub residue: String,
    pub counted: bool,
}

struct Counter<'a> {
    opts: &'a AnalyzeOptions,
    cap: usize,
    found: Vec<ValChain>,
    trace: Vec<TraceNode>,
}

impl Counter<'_> {
    fn walk(&mut self, prefix: &ValChain) -> Result<()> {
        let curve = prefix.last_curve();
        if curve.rank == 0 || prefix.depth() >= self.cap {
            return Ok(());
        }
        for (c, s) in enumerate_candidates(&curve) {
            let w = prefix.push(c.clone(), s)?;
            let step = w.steps.last().expect("nonempty");
            let cls = classify_step(step);
            let counted = cls.kind == Kind::LevelTwo;
            if self.opts.trace {
                let residue = match &step.twist {
                    Twist::Rational if cls.ramified => "ramified".to_string(),
                    Twist::Rational => "rational".to_string(),
                    Twist::Curve(h) => CurveVar(h, "Z").to_string(),
                };
                self.trace.push(TraceNode {
                    depth: w.depth(),
                    chain: w.to_string(),
                    center: c.to_string(),
                    scale: s,
                    k: step.reduction.k,
                    kind: cls.kind,
                    residue,
                    counted,
                });
            }
            if counted {
                self.found.push(w.clone());
            }
            let descend = match cls.kind {
                Kind::LevelTwo | Kind::RealResidue => true,
                Kind::LevelOne => !self.opts.prune,
                Kind::Ruled => !self.opts.prune && !cls.ramified,
            };
            if descend {
                self.walk(&w)?;
            }
        }
        Ok(())
    }
}

pub(crate) struct CurveVar<'a>(pub &'a CurveData, pub &'a str);

impl fmt::Display for CurveVar<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_var(f, self.1)
    }
}

/// The counted chains (terminal step of level two) and the trace.
pub fn count_bad_valuations(c: &CurveData, opts: &AnalyzeOptions) -> Result<(Vec<ValChain>, Vec<TraceNode>)> {
    let cap = opts.max_depth.unwrap_or(c.rank).min(c.rank);
    let mut ctr = Counter { opts, cap, found: vec![], trace: vec![] };
    ctr.walk(&ValChain::trivial(c))?;
    Ok((ctr.found, ctr.trace))
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub chain: ValChain,
    pub element: Option<FunElem>,
    pub phi: Option<Vec<u8>>,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub curve: CurveData,
    pub chains: Vec<ValChain>,
    pub kinds: Vec<Vec<Kind>>,
    pub generators: Vec<Generator>,
    pub trace: Option<Vec<TraceNode>>,
}

impl Analysis {
    pub fn n(&self) -> usize {
        self.curve.rank
    }

    pub fn genus(&self) -> usize {
        self.curve.genus()
    }

    pub fn m(&self) -> usize {
        self.chains.len()
    }

    pub fn bound(&self) -> usize {
        self.n() * (self.genus() + 1)
    }

    /// `2^m` when it fits.
    pub fn order_g(&self) -> Option<u64> {
        (self.m() < 64).then(|| 1u64 << self.m())
    }

    pub fn is_real(&self) -> bool {
        !self.curve.is_nonreal()
    }

    pub fn pythagoras(&self) -> &'static str {
        if self.m() == 0 { "≤2" } else { "=3" }
    }

    /// Membership in the sums of two squares, for `sigma` a sum of squares.
    pub fn is_sum_two_squares(&self, sigma: &FunElem) -> Result<bool> {
        is_sum_two_squares_f(&self.chains, sigma)
    }
}

pub fn analyze(c: &CurveData, opts: &AnalyzeOptions) -> Result<Analysis> {
    let (chains, trace) = count_bad_valuations(c, opts)?;
    let m = chains.len();
    let bound = c.rank * (c.genus() + 1);
    if m > bound {
        return Err(Error::InternalAssertion(format!("count {m} exceeds the bound {bound}")));
    }
    if c.rank == 1 && m == c.genus() + 1 && !c.is_nonreal() {
        return Err(Error::InternalAssertion("optimal count over K_1 on a real curve".into()));
    }
    let kinds = chains.iter().map(|w| w.steps.iter().map(classify_step).map(|c| c.kind).collect()).collect();
    let generators = if opts.generators {
        chains
            .iter()
            .map(|w| match make_generator(c, w, &chains) {
                Ok(s) => {
                    let p = phi(&chains, &s).ok();
                    Generator { chain: w.clone(), element: Some(s), phi: p, error: None }
                }
                Err(e) => Generator { chain: w.clone(), element: None, phi: None, error: Some(e.to_string()) },
            })
            .collect()
    } else {
        vec![]
    };
    Ok(Analysis { curve: c.clone(), chains, kinds, generators, trace: opts.trace.then_some(trace) })
}

/// `sigma` in `S(F)` is a sum of two squares iff its value at every counted
/// chain has even last coordinate.
pub fn is_sum_two_squares_f(chains: &[ValChain], sigma: &FunElem) -> Result<bool> {
    if sigma.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(phi(chains, sigma)?.iter().all(|&b| b == 0))
}

/// Membership with the sum-of-squares precondition checked when possible.
pub fn membership(a: &Analysis, sigma: &FunElem, verify: bool) -> Result<bool> {
    if verify {
        if !sigma.q.is_zero() {
            return Err(Error::PreconditionUnverified("element with a square root part".into()));
        }
        if !check_totally_positive(&a.curve, &sigma.p)? {
            return Ok(false);
        }
    }
    a.is_sum_two_squares(sigma)
}

fn lift_to_base(w: &ValChain, r: usize, x: &FunElem) -> Result<FunElem> {
    w.lift(r, x)
}

/// Complex product `prod ((Z - a_i) + i b_i)` as `(A, B)`.
fn gaussian_product(h: &CurveData) -> Result<(UPoly, UPoly)> {
    let r = h.rank;
    let mut a = UPoly::one(r);
    let mut b = UPoly::zero(r);
    for q in &h.quads {
        let qb = q.b.clone().ok_or_else(|| {
            Error::WitnessConstructionFailed(format!("square root of {} is not a rational function", q.b_sq))
        })?;
        let re = UPoly::linear(-&q.a, KnElem::one(r));
        let im = UPoly::constant(qb);
        let na = a.mul(&re).sub(&b.mul(&im));
        let nb = a.mul(&im).add(&b.mul(&re));
        a = na;
        b = nb;
    }
    Ok((a, b))
}

fn step_key(s: &GaussStep) -> (&KnElem, i64) {
    (&s.center, s.scale)
}

/// An element of `S(F)` with `phi = e_w` on `set`.
pub fn make_generator(c: &CurveData, w: &ValChain, set: &[ValChain]) -> Result<FunElem> {
    let d = w.depth();
    let n = c.rank;
    let idx = set.iter().position(|x| x == w).ok_or_else(|| Error::WitnessConstructionFailed("chain not in the set".into()))?;
    let last = w.steps.last().ok_or_else(|| Error::WitnessConstructionFailed("empty chain".into()))?;
    if classify_step(last).kind != Kind::LevelTwo {
        return Err(Error::WitnessConstructionFailed("terminal step is not of level two".into()));
    }
    let h = w.last_curve();
    let hp = h.poly();
    let e = (-&h.alpha)
        .try_sqrt()
        .ok_or_else(|| Error::WitnessConstructionFailed(format!("square root of {}", -&h.alpha)))?;
    let (a, b) = gaussian_product(&h)?;
    // x1^2 + x2^2 = -1 on the residue curve, with x = e*A*Y/(-h), e*B*Y/(-h)
    let minus_h = RatFun::from_poly(hp.neg());
    let xq = |p: &UPoly| -> Result<FunElem> {
        let q = RatFun::from_poly(p.scale(&e)).div(&minus_h)?;
        Ok(FunElem::new(hp.clone(), RatFun::zero(h.rank), q))
    };
    let x1 = lift_to_base(w, d, &xq(&a)?)?;
    let x2 = lift_to_base(w, d, &xq(&b)?)?.scale(&(&KnElem::one(n) + &KnElem::t_top(n)));
    let one = FunElem::constant(&c.poly(), KnElem::one(n));
    let x1s = x1.square();
    let x2s = x2.square();
    let fw = one.add(&x1s)?.add(&x2s)?;
    let base_z = KnElem::t(n, n - d + 1)?;

    // one separator per unrelated chain, by divergence level
    let mut targets = Vec::new();
    for (j, nu) in set.iter().enumerate() {
        if j == idx {
            continue;
        }
        let r = w.steps.iter().zip(&nu.steps).take_while(|(x, y)| step_key(x) == step_key(y)).count();
        if r == w.depth() || r == nu.depth() {
            continue;
        }
        targets.push((r, &w.steps[r], &nu.steps[r]));
    }
    let half = KnElem::frac(n, 1, 2);
    let shift = one.sub(&fw.scale(&half))?;
    let target: Vec<u8> = (0..set.len()).map(|j| u8::from(j == idx)).collect();
    let mut last_err = String::from("no attempt");
    for nexp in [2u32, 3] {
        let mut seps = Vec::new();
        for (r, sw, sn) in &targets {
            let l = n - r;
            let inner = sn.scale > sw.scale && (&sn.center - &sw.center).v1().is_none_or(|v| v >= sw.scale);
            let z = UPoly::x(l);
            let ts = KnElem::t_top_pow(l, sw.scale);
            let psi = if inner {
                RatFun::new(UPoly::constant(ts), z.sub(&UPoly::constant(sn.center.clone())))?
            } else {
                RatFun::new(z.sub(&UPoly::constant(sw.center.clone())), UPoly::constant(ts))?
            };
            let sep = RatFun::one(l).add(&psi.pow(nexp as i64)?.scale(&KnElem::t_top(l)));
            let on = FunElem::from_rat(&sw.curve.poly(), sep);
            seps.push(lift_to_base(w, *r, &on)?);
        }
        let mut e_pow = 1u32;
        while e_pow <= 16 {
            let mut z = FunElem::constant(&c.poly(), base_z.clone());
            for s in &seps {
                let mut p = s.clone();
                for _ in 1..e_pow {
                    p = p.mul(s)?;
                }
                z = z.mul(&p)?;
            }
            let y = z.sub(&shift)?;
            let sigma = y.square().add(&x1s)?.add(&x2s)?;
            match phi(set, &sigma) {
                Ok(v) if v == target => return Ok(sigma),
                Ok(v) => last_err = format!("phi = {v:?}"),
                Err(err) => last_err = err.to_string(),
            }
            if seps.is_empty() {
                break;
            }
            e_pow *= 2;
        }
    }
    Err(Error::WitnessConstructionFailed(format!("chain {w}: {last_err}")))
}

/// Sign data of `p` at every ordering of `F`: positive wherever `f` is.
pub fn check_totally_positive(c: &CurveData, p: &RatFun) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    if c.is_nonreal() {
        return Ok(true);
    }
    let n = c.rank;
    let odd = odd_part(&p.num().mul(p.den()));
    for mask in 0..(1u32 << n) {
        let signs: Vec<i32> = (0..n).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
        let sg = |x: &KnElem| x.sign_under(&signs);
        let mut roots = c.lins.clone();
        roots.sort_by(|x, y| sg(&(x - y)).cmp(&0));
        let asign = sg(&c.alpha);
        // f > 0 on the interval after the j-th root iff alpha * (-1)^(#roots above) > 0
        let cnt = roots.len();
        for j in 0..=cnt {
            let above = (cnt - j) as i32;
            let fsign = asign * if above % 2 == 0 { 1 } else { -1 };
            if fsign < 0 {
                continue;
            }
            let lo = if j == 0 { None } else { Some(&roots[j - 1]) };
            let hi = roots.get(j);
            if !odd.degree().is_some_and(|dg| dg == 0) && roots_between(&odd, lo, hi, &signs)? > 0 {
                return Ok(false);
            }
            if sign_on_interval(p, lo, hi, &signs) < 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Product of the factors of odd multiplicity.
fn odd_part(p: &UPoly) -> UPoly {
    let mut out = UPoly::one(p.rank());
    let mut rest = p.monic();
    let mut mult = 1;
    // Yun-style: g = gcd(P, P'), w = P/g has all roots; peel by multiplicity
    let mut g = rest.gcd(&rest.derivative());
    let mut w = rest.divrem(&g).expect("nonzero").0;
    while w.degree().is_some_and(|d| d > 0) {
        let y = w.gcd(&g);
        let z = w.divrem(&y).expect("nonzero").0;
        if mult % 2 == 1 {
            out = out.mul(&z);
        }
        g = g.divrem(&y).expect("nonzero").0;
        w = y;
        mult += 1;
    }
    rest = out;
    rest
}

fn sign_at_infinity(p: &UPoly, plus: bool, signs: &[i32]) -> i32 {
    let d = p.degree().unwrap_or(0);
    let s = p.lead().map_or(0, |l| l.sign_under(signs));
    if plus || d % 2 == 0 { s } else { -s }
}

fn sign_changes(seq: &[UPoly], at: Option<&KnElem>, plus: bool, signs: &[i32]) -> usize {
    let vals: Vec<i32> = seq
        .iter()
        .map(|q| match at {
            Some(x) => q.eval(x).sign_under(signs),
            None => sign_at_infinity(q, plus, signs),
        })
        .filter(|&s| s != 0)
        .collect();
    vals.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots of the square-free `p` in the open interval.
fn roots_between(p: &UPoly, lo: Option<&KnElem>, hi: Option<&KnElem>, signs: &[i32]) -> Result<usize> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let k = seq.len();
        let (_, r) = seq[k - 2].divrem(&seq[k - 1])?;
        if r.is_zero() {
            break;
        }
        seq.push(r.neg());
    }
    let va = sign_changes(&seq, lo, false, signs);
    let vb = sign_changes(&seq, hi, true, signs);
    let at_hi = hi.is_some_and(|x| p.eval(x).is_zero());
    Ok((va - vb).saturating_sub(usize::from(at_hi)))
}

/// Sign of `p` at some point of the interval where it is defined and nonzero.
fn sign_on_interval(p: &RatFun, lo: Option<&KnElem>, hi: Option<&KnElem>, signs: &[i32]) -> i32 {
    let r = p.rank();
    let (num, den) = (p.num(), p.den());
    match (lo, hi) {
        (_, None) => sign_at_infinity(num, true, signs) * sign_at_infinity(den, true, signs),
        (None, Some(_)) => sign_at_infinity(num, false, signs) * sign_at_infinity(den, false, signs),
        (Some(a), Some(b)) => {
            for k in 2..40 {
                let x = a + &(&(b - a) * &KnElem::frac(r, 1, k));
                let (u, v) = (num.eval(&x).sign_under(signs), den.eval(&x).sign_under(signs));
                if u != 0 && v != 0 {
                    return u * v;
                }
            }
            0
        }
    }
}
