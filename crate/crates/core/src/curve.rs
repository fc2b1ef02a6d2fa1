//! Factored hyperelliptic data `Y^2 = alpha * prod((X - a)^2 + B) * prod(X - c)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::kn::KnElem;
use crate::scalar::Tower;
use crate::upoly::UPoly;

/// `(X - a)^2 + b_sq` with `b_sq` a nonzero square of `K_n`, so the root
/// field is nonreal. `b` is its square root when that is a rational function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFactor {
    pub a: KnElem,
    pub b_sq: KnElem,
    pub b: Option<KnElem>,
}

impl QuadFactor {
    pub fn new(a: KnElem, b_sq: KnElem) -> Result<QuadFactor> {
        if b_sq.is_zero() {
            return Err(Error::NotSquareFree);
        }
        if !b_sq.is_square_class_trivial() {
            return Err(Error::UnsupportedFactor(format!("(X - ({a}))^2 + ({b_sq})")));
        }
        let b = b_sq.try_sqrt();
        Ok(QuadFactor { a, b_sq, b })
    }

    /// `(X - a)^2 + b^2`.
    pub fn from_ab(a: KnElem, b: KnElem) -> Result<QuadFactor> {
        let b = if b.residue_sign() < 0 { -b } else { b };
        if b.is_zero() {
            return Err(Error::NotSquareFree);
        }
        Ok(QuadFactor { a, b_sq: &b * &b, b: Some(b) })
    }

    /// Half the `t_n`-adic order of `b_sq`: the depth of the root pair.
    pub fn beta(&self) -> i64 {
        self.b_sq.first_value().expect("nonzero") / 2
    }

    pub fn poly(&self) -> UPoly {
        let l = UPoly::linear(-&self.a, KnElem::one(self.a.rank()));
        l.mul(&l).add(&UPoly::constant(self.b_sq.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveData {
    pub rank: usize,
    pub alpha: KnElem,
    pub quads: Vec<QuadFactor>,
    pub lins: Vec<KnElem>,
}

/// Options for [`CurveData::from_factors`].
#[derive(Clone, Debug, Default)]
pub struct NormalizeOptions {
    /// Forbid square roots outside the tower of the input coefficients.
    pub no_tower_extend: bool,
}

impl CurveData {
    pub fn new(alpha: KnElem, quads: Vec<QuadFactor>, lins: Vec<KnElem>) -> Result<CurveData> {
        let rank = alpha.rank();
        if alpha.is_zero() {
            return Err(Error::ZeroInput);
        }
        for x in quads.iter().flat_map(|q| [&q.a, &q.b_sq]).chain(lins.iter()) {
            if x.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: x.rank() });
            }
        }
        let c = CurveData { rank, alpha, quads, lins };
        c.check_square_free()?;
        Ok(c)
    }

    /// The constant curve `Y^2 = 1`.
    pub fn unit(rank: usize) -> CurveData {
        CurveData { rank, alpha: KnElem::one(rank), quads: vec![], lins: vec![] }
    }

    fn check_square_free(&self) -> Result<()> {
        for (i, c) in self.lins.iter().enumerate() {
            if self.lins[..i].contains(c) {
                return Err(Error::NotSquareFree);
            }
        }
        for (i, q) in self.quads.iter().enumerate() {
            if q.b_sq.is_zero() {
                return Err(Error::NotSquareFree);
            }
            if self.quads[..i].iter().any(|p| p.a == q.a && p.b_sq == q.b_sq) {
                return Err(Error::NotSquareFree);
            }
        }
        Ok(())
    }

    /// Normalize a product `constant * prod factors^mult` of polynomials of
    /// degree at most 2.
    pub fn from_factors(constant: KnElem, factors: &[(UPoly, u32)], opts: &NormalizeOptions) -> Result<CurveData> {
        let rank = constant.rank();
        let mut alpha = constant;
        let mut quads = Vec::new();
        let mut lins = Vec::new();
        let mut tower = Tower::default();
        for (p, _) in factors {
            for c in p.coeffs() {
                tower = tower.union(&Tower::of(c.num().terms().values().chain(c.den().terms().values())));
            }
        }
        for (p, e) in factors {
            if p.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: p.rank() });
            }
            let Some(d) = p.degree() else { return Err(Error::ZeroInput) };
            if d == 0 {
                alpha = &alpha * &p.coeff(0).pow(*e as i64)?;
                continue;
            }
            if *e == 0 {
                continue;
            }
            if *e >= 2 {
                return Err(Error::NotSquareFree);
            }
            if d >= 3 {
                return Err(Error::IrreducibleFactorOfDegreeGE3(d));
            }
            let lead = p.lead().expect("nonzero").clone();
            alpha = &alpha * &lead;
            let m = p.monic();
            if d == 1 {
                lins.push(-&m.coeff(0));
                continue;
            }
            // X^2 + pX + q = (X + p/2)^2 + (q - p^2/4)
            let half = KnElem::frac(rank, 1, 2);
            let a = -&(&m.coeff(1) * &half);
            let b_sq = &m.coeff(0) - &(&a * &a);
            if b_sq.is_zero() {
                return Err(Error::NotSquareFree);
            }
            if b_sq.is_square_class_trivial() {
                let b = b_sq.try_sqrt();
                if let (Some(b), true) = (&b, opts.no_tower_extend) {
                    check_in_tower(b, &tower, &b_sq)?;
                }
                quads.push(QuadFactor { a, b_sq, b });
            } else if (-&b_sq).is_square_class_trivial() {
                let r = (-&b_sq)
                    .try_sqrt()
                    .ok_or_else(|| Error::UnsupportedFactor(format!("{p} (real roots outside K(X))")))?;
                if opts.no_tower_extend {
                    check_in_tower(&r, &tower, &-&b_sq)?;
                }
                lins.push(&a + &r);
                lins.push(&a - &r);
            } else {
                return Err(Error::UnsupportedFactor(p.to_string()));
            }
        }
        CurveData::new(alpha, quads, lins)
    }

    pub fn degree(&self) -> usize {
        2 * self.quads.len() + self.lins.len()
    }

    pub fn genus(&self) -> usize {
        self.degree().saturating_sub(1) / 2
    }

    pub fn poly(&self) -> UPoly {
        let mut p = UPoly::constant(self.alpha.clone());
        for q in &self.quads {
            p = p.mul(&q.poly());
        }
        for c in &self.lins {
            p = p.mul(&UPoly::linear(-c, KnElem::one(self.rank)));
        }
        p
    }

    /// `F` is nonreal iff `f` is totally negative: no real roots and
    /// `alpha` in `-K^x2`.
    pub fn is_nonreal(&self) -> bool {
        self.lins.is_empty() && self.alpha.square_class().is_ok_and(|c| c.is_minus_square())
    }

    /// `c^2 f`, an isomorphic function field.
    pub fn scaled_by_square(&self, c: &KnElem) -> CurveData {
        CurveData { alpha: &self.alpha * &(c * c), ..self.clone() }
    }

    pub fn fmt_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        let a = self.alpha.to_string();
        let mut parts = Vec::new();
        if !self.alpha.is_one() || (self.quads.is_empty() && self.lins.is_empty()) {
            parts.push(if a.contains(' ') || a.contains('/') { format!("({a})") } else { a });
        }
        for q in &self.quads {
            parts.push(format!("({})", Var(&q.poly(), var)));
        }
        for c in &self.lins {
            parts.push(format!("({})", Var(&UPoly::linear(-c, KnElem::one(self.rank)), var)));
        }
        write!(f, "{}", parts.join("*"))
    }
}

struct Var<'a>(&'a UPoly, &'a str);

impl fmt::Display for Var<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_var(f, self.1)
    }
}

impl fmt::Display for CurveData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var(f, "X")
    }
}

fn check_in_tower(root: &KnElem, tower: &Tower, of: &KnElem) -> Result<()> {
    let inside = root.num().terms().values().chain(root.den().terms().values()).all(|c| tower.contains(c));
    if inside {
        Ok(())
    } else {
        Err(Error::SqrtNotRepresentable(of.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(c: i64) -> KnElem {
        KnElem::int(1, c)
    }
    fn t() -> KnElem {
        KnElem::t(1, 1).unwrap()
    }
    fn quad(p: i64, q: KnElem) -> UPoly {
        UPoly::from_coeffs(1, vec![q, k(p), k(1)])
    }

    #[test]
    fn normalize_examples() {
        let o = NormalizeOptions::default();
        let c = CurveData::from_factors(k(-1), &[(quad(0, k(1)), 1), (quad(0, t().pow(2).unwrap()), 1)], &o).unwrap();
        assert_eq!(c.alpha, k(-1));
        assert_eq!(c.quads.iter().map(|q| (q.a.clone(), q.b.clone().unwrap())).collect::<Vec<_>>(),
            vec![(k(0), k(1)), (k(0), t())]);
        assert_eq!(c.genus(), 1);
        assert!(c.is_nonreal());

        let c = CurveData::from_factors(k(1), &[(quad(2, k(2)), 1)], &o).unwrap();
        assert_eq!((c.alpha.clone(), c.quads[0].a.clone(), c.quads[0].b.clone()), (k(1), k(-1), Some(k(1))));

        let lin = |c0: i64| UPoly::linear(k(c0), k(1));
        assert_eq!(CurveData::from_factors(k(1), &[(lin(-1), 2), (lin(1), 1)], &o), Err(Error::NotSquareFree));
        assert_eq!(CurveData::from_factors(k(1), &[(lin(1), 1), (lin(1), 1)], &o), Err(Error::NotSquareFree));
        let cubic = UPoly::from_coeffs(1, vec![k(1), k(0), k(0), k(1)]);
        assert_eq!(CurveData::from_factors(k(1), &[(cubic, 1)], &o), Err(Error::IrreducibleFactorOfDegreeGE3(3)));
    }

    #[test]
    fn linear_factor_normalizes_to_monic() {
        let o = NormalizeOptions::default();
        let c = CurveData::from_factors(k(1), &[(UPoly::linear(k(-1), t()), 1), (quad(0, k(1)), 1)], &o).unwrap();
        assert_eq!(c.alpha, t());
        assert_eq!(c.lins, vec![t().inv().unwrap()]);
        assert_eq!(c.genus(), 1);
        assert!(!c.is_nonreal());
        let expanded = UPoly::linear(k(-1), t()).mul(&quad(0, k(1)));
        assert_eq!(c.poly(), expanded);
    }

    #[test]
    fn real_root_quadratics() {
        let o = NormalizeOptions::default();
        let c = CurveData::from_factors(k(1), &[(quad(0, k(-4)), 1)], &o).unwrap();
        assert_eq!(c.lins.len(), 2);
        assert!(matches!(CurveData::from_factors(k(1), &[(quad(0, -t()), 1)], &o), Err(Error::UnsupportedFactor(_))));
        assert!(matches!(CurveData::from_factors(k(1), &[(quad(0, t()), 1)], &o), Err(Error::UnsupportedFactor(_))));
        let strict = NormalizeOptions { no_tower_extend: true };
        assert!(matches!(CurveData::from_factors(k(1), &[(quad(0, k(2)), 1)], &strict),
            Err(Error::SqrtNotRepresentable(_))));
        assert!(CurveData::from_factors(k(1), &[(quad(0, k(2)), 1)], &o).unwrap().quads[0].b.is_some());
    }
}
