//! Text syntax for curves, elements and diagonal forms.
//!
//! Variables are `t1..tn`, `X`, `Y` (only as `Y^2 = f`) and `s` for
//! `sqrt f` in elements. Coefficients are rationals and `sqrt(q)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::curve::{CurveData, NormalizeOptions};
use crate::error::{Error, Result};
use crate::funfield::FunElem;
use crate::kn::KnElem;
use crate::quadform::DiagForm;
use crate::scalar::Scalar;
use crate::upoly::{RatFun, UPoly};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(String, usize),
    Sqrt(Box<Expr>, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let cs: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < cs.len() {
        let (pos, c) = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < cs.len() && cs[j].1.is_ascii_digit() {
                j += 1;
            }
            let end = cs.get(j).map_or(src.len(), |x| x.0);
            out.push((Tok::Num(src[pos..end].parse().expect("digits")), pos));
            i = j;
        } else if c.is_ascii_alphabetic() {
            let mut j = i;
            while j < cs.len() && cs[j].1.is_ascii_alphanumeric() {
                j += 1;
            }
            let end = cs.get(j).map_or(src.len(), |x| x.0);
            out.push((Tok::Ident(src[pos..end].to_string()), pos));
            i = j;
        } else if "+-*/^()=,<>".contains(c) {
            out.push((Tok::Sym(c), pos));
            i += 1;
        } else if c == '\u{27e8}' || c == '\u{27e9}' {
            out.push((Tok::Sym(if c == '\u{27e8}' { '<' } else { '>' }), pos));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(src)?, i: 0, end: src.len() })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn err(&self, msg: String) -> Error {
        Error::Syntax { pos: self.pos(), msg }
    }

    fn done(&self) -> Result<()> {
        if self.i < self.toks.len() {
            return Err(self.err("unexpected trailing input".into()));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.i += 1;
                let k: i64 = k.try_into().map_err(|_| Error::Syntax { pos, msg: "exponent too large".into() })?;
                Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }))
            }
            _ => Err(self.err("expected an integer exponent".into())),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.i += 1;
                Ok(Expr::Num(k))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                if name == "sqrt" {
                    self.expect('(')?;
                    let e = self.expr()?;
                    self.expect(')')?;
                    return Ok(Expr::Sqrt(Box::new(e), pos));
                }
                Ok(Expr::Var(name, pos))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.err("expected a number, variable or '('".into())),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.done()?;
    Ok(e)
}

fn t_index(name: &str, n: usize) -> Option<usize> {
    let i: usize = name.strip_prefix('t')?.parse().ok()?;
    (1..=n).contains(&i).then_some(i)
}

/// Values an expression can be evaluated into.
trait Ring: Sized + Clone {
    fn from_kn(&self, k: KnElem) -> Self;
    fn var(&self, name: &str, pos: usize) -> Result<Self>;
    fn add(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn as_kn(&self) -> Option<KnElem>;
}

fn eval<R: Ring>(e: &Expr, ctx: &R, n: usize) -> Result<R> {
    Ok(match e {
        Expr::Num(k) => ctx.from_kn(KnElem::from_scalar(n, Scalar::from_rational(BigRational::from_integer(k.clone())))),
        Expr::Var(name, pos) => match t_index(name, n) {
            Some(i) => ctx.from_kn(KnElem::t(n, i)?),
            None => ctx.var(name, *pos)?,
        },
        Expr::Sqrt(inner, pos) => {
            let v = eval(inner, ctx, n)?;
            let q = v
                .as_kn()
                .and_then(|k| k.scalar_value())
                .and_then(|s| s.to_rational())
                .ok_or_else(|| Error::Syntax { pos: *pos, msg: "sqrt takes a rational constant".into() })?;
            ctx.from_kn(KnElem::from_scalar(n, Scalar::sqrt_of_rational(&q)?))
        }
        Expr::Neg(a) => eval(a, ctx, n)?.neg(),
        Expr::Add(a, b) => eval(a, ctx, n)?.add(&eval(b, ctx, n)?)?,
        Expr::Sub(a, b) => eval(a, ctx, n)?.add(&eval(b, ctx, n)?.neg())?,
        Expr::Mul(a, b) => eval(a, ctx, n)?.mul(&eval(b, ctx, n)?)?,
        Expr::Div(a, b) => eval(a, ctx, n)?.mul(&eval(b, ctx, n)?.inv()?)?,
        Expr::Pow(a, k) => {
            let base = eval(a, ctx, n)?;
            let base = if *k < 0 { base.inv()? } else { base };
            let mut acc = ctx.from_kn(KnElem::one(n));
            for _ in 0..k.unsigned_abs() {
                acc = acc.mul(&base)?;
            }
            acc
        }
    })
}

impl Ring for KnElem {
    fn from_kn(&self, k: KnElem) -> Self {
        k
    }
    fn var(&self, name: &str, _pos: usize) -> Result<Self> {
        Err(Error::UnknownVariable(name.to_string()))
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        KnElem::inv(self)
    }
    fn as_kn(&self) -> Option<KnElem> {
        Some(self.clone())
    }
}

impl Ring for RatFun {
    fn from_kn(&self, k: KnElem) -> Self {
        RatFun::constant(k)
    }
    fn var(&self, name: &str, _pos: usize) -> Result<Self> {
        match name {
            "X" => Ok(RatFun::from_poly(UPoly::x(self.rank()))),
            _ => Err(Error::UnknownVariable(name.to_string())),
        }
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(RatFun::add(self, o))
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(RatFun::mul(self, o))
    }
    fn neg(&self) -> Self {
        RatFun::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RatFun::inv(self)
    }
    fn as_kn(&self) -> Option<KnElem> {
        let p = self.as_poly()?;
        match p.degree() {
            None => Some(KnElem::zero(self.rank())),
            Some(0) => Some(p.coeff(0)),
            _ => None,
        }
    }
}

impl Ring for FunElem {
    fn from_kn(&self, k: KnElem) -> Self {
        FunElem::constant(&self.f, k)
    }
    fn var(&self, name: &str, _pos: usize) -> Result<Self> {
        match name {
            "X" => Ok(FunElem::from_poly(&self.f, UPoly::x(self.rank()))),
            "s" | "Y" => Ok(FunElem::sqrt_f(&self.f)),
            _ => Err(Error::UnknownVariable(name.to_string())),
        }
    }
    fn add(&self, o: &Self) -> Result<Self> {
        FunElem::add(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        FunElem::mul(self, o)
    }
    fn neg(&self) -> Self {
        FunElem::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        FunElem::inv(self)
    }
    fn as_kn(&self) -> Option<KnElem> {
        if self.q.is_zero() { self.p.as_kn() } else { None }
    }
}

pub fn parse_kn(src: &str, n: usize) -> Result<KnElem> {
    eval(&parse_expr(src)?, &KnElem::zero(n), n)
}

pub fn parse_poly(src: &str, n: usize) -> Result<UPoly> {
    let r = eval(&parse_expr(src)?, &RatFun::zero(n), n)?;
    r.as_poly().ok_or_else(|| Error::UnsupportedFactor(format!("{src} is not a polynomial in X")))
}

/// An element `p + q*s` of the function field of `c`.
pub fn parse_element(src: &str, c: &CurveData) -> Result<FunElem> {
    let f = c.poly();
    eval(&parse_expr(src)?, &FunElem::constant(&f, KnElem::zero(c.rank)), c.rank)
}

/// Split a product into a constant and factors with multiplicities.
fn flatten(e: &Expr, mult: i64, out: &mut Vec<(Expr, i64)>) {
    match e {
        Expr::Mul(a, b) => {
            flatten(a, mult, out);
            flatten(b, mult, out);
        }
        Expr::Neg(a) => {
            out.push((Expr::Num(BigInt::from(-1)), mult));
            flatten(a, mult, out);
        }
        Expr::Div(a, b) => {
            flatten(a, mult, out);
            flatten(b, -mult, out);
        }
        Expr::Pow(a, k) => flatten(a, mult * k, out),
        _ => out.push((e.clone(), mult)),
    }
}

/// `Y^2 = f` or just `f`, with `f` a product of factors of degree at most 2.
pub fn parse_curve(src: &str, n: usize, opts: &NormalizeOptions) -> Result<CurveData> {
    let mut p = Parser::new(src)?;
    let has_eq = p.toks.iter().any(|t| t.0 == Tok::Sym('='));
    if has_eq {
        let pos = p.pos();
        let lhs = p.power()?;
        let ok = matches!(&lhs, Expr::Pow(b, 2) if matches!(&**b, Expr::Var(y, _) if y == "Y"));
        if !ok {
            return Err(Error::Syntax { pos, msg: "left side must be Y^2".into() });
        }
        p.expect('=')?;
    }
    let e = p.expr()?;
    p.done()?;
    let mut fs = Vec::new();
    flatten(&e, 1, &mut fs);
    let mut constant = KnElem::one(n);
    let mut factors: Vec<(UPoly, u32)> = Vec::new();
    let ctx = RatFun::zero(n);
    for (fe, m) in fs {
        let r = eval(&fe, &ctx, n)?;
        if let Some(k) = r.as_kn() {
            if k.is_zero() {
                return Err(Error::ZeroInput);
            }
            constant = &constant * &k.pow(m)?;
            continue;
        }
        let poly = r.as_poly().ok_or_else(|| Error::UnsupportedFactor(format!("{r} is not a polynomial")))?;
        if m < 0 {
            return Err(Error::UnsupportedFactor(format!("{poly} in a denominator")));
        }
        // pull the leading coefficient into the constant, merge repeats
        match factors.iter_mut().find(|(q, _)| q.monic() == poly.monic()) {
            Some((q, mm)) => {
                let ratio = poly.lead().expect("nonconstant").div(q.lead().expect("nonconstant"))?;
                constant = &constant * &ratio.pow(m)?;
                *mm += m as u32;
            }
            None => factors.push((poly, m as u32)),
        }
    }
    if factors.is_empty() {
        return Err(Error::UnsupportedFactor("constant curve".into()));
    }
    CurveData::from_factors(constant, &factors, opts)
}

/// `<a1, ..., ak>` (angle brackets optional).
pub fn parse_form(src: &str, n: usize) -> Result<DiagForm> {
    let mut p = Parser::new(src)?;
    let open = p.eat('<');
    let mut entries = Vec::new();
    loop {
        entries.push(eval(&p.expr()?, &KnElem::zero(n), n)?);
        if !p.eat(',') {
            break;
        }
    }
    if open {
        p.expect('>')?;
    }
    p.done()?;
    DiagForm::with_rank(n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curves() {
        let o = NormalizeOptions::default();
        let c = parse_curve("Y^2 = -(X^2+1)*(X^2+t1^2)", 1, &o).unwrap();
        assert_eq!(c.quads.len(), 2);
        assert_eq!(c.alpha, KnElem::int(1, -1));
        let tik = parse_curve("Y^2 = (t1*X-1)*(X^2+1)", 1, &o).unwrap();
        assert_eq!(tik.alpha, KnElem::t(1, 1).unwrap());
        assert_eq!(parse_curve("(X-1)^2*(X+1)", 1, &o), Err(Error::NotSquareFree));
        assert_eq!(parse_curve("(X-1)*(X+1)*(X-1)", 1, &o), Err(Error::NotSquareFree));
        assert_eq!(parse_curve("X^2+t2", 1, &o), Err(Error::UnknownVariable("t2".into())));
        assert!(matches!(parse_curve("X^2+", 1, &o), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_curve("Y^3 = X", 1, &o), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_curve("X^3+X+1", 1, &o), Err(Error::IrreducibleFactorOfDegreeGE3(3))));
        let c = parse_curve("2*(X^2+2*X+2)/4", 1, &o).unwrap();
        assert_eq!(c.alpha, KnElem::frac(1, 1, 2));
        assert_eq!(c.quads[0].a, KnElem::int(1, -1));
    }

    #[test]
    fn elements_and_forms() {
        let o = NormalizeOptions::default();
        let c = parse_curve("Y^2 = (t1*X-1)*(X^2+1)", 1, &o).unwrap();
        let e = parse_element("t1*X + 0*s", &c).unwrap();
        assert!(e.q.is_zero());
        assert_eq!(e.p.as_poly().unwrap(), UPoly::linear(KnElem::zero(1), KnElem::t(1, 1).unwrap()));
        let s2 = parse_element("s^2", &c).unwrap();
        assert_eq!(s2.p.as_poly().unwrap(), c.poly());
        let f = parse_form("<1, 1, -t1>", 1).unwrap();
        assert_eq!(f.dim(), 3);
        assert!(!f.is_isotropic());
        assert_eq!(parse_kn("sqrt(8)/2", 0).unwrap(), KnElem::from_scalar(0, Scalar::sqrt_of_int(2)));
        assert!(parse_kn("sqrt(t1)", 1).is_err());
        assert!(parse_kn("X", 1).is_err());
    }

    #[test]
    fn display_round_trip() {
        let o = NormalizeOptions::default();
        for (src, n) in [
            ("-(X^2+1)*(X^2+t1^2)", 1),
            ("(t1*X-1)*(X^2+1)", 1),
            ("-t2*(X^2+2*X+1+t1^2)*(X-t2/3)", 2),
            ("(X^2+sqrt(2)*X+1)*X", 1),
        ] {
            let c = parse_curve(src, n, &o).unwrap();
            let back = parse_curve(&c.to_string(), n, &o).unwrap();
            assert_eq!(back.poly(), c.poly(), "{src} -> {c}");
            let k = c.alpha.clone();
            assert_eq!(parse_kn(&k.to_string(), n).unwrap(), k);
            let e = parse_element("(1 + t1*X)/(X - 3) + (X/2)*s", &c).unwrap();
            let e2 = parse_element(&e.to_string(), &c).unwrap();
            assert_eq!(e2, e);
        }
    }
}
