//! The value groups `(Z^n, <=_lex)`.
//!
//! Coordinate 1 (index 0 in storage) is the most significant one and carries
//! the `t_n`-adic component, so that `v(t_i) = e_i^n` puts the 1 of `t_n` in
//! front.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Z^n` ordered lexicographically. The rank travels with the
/// value and every binary operation checks it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexVec {
    coords: Vec<i64>,
}

impl LexVec {
    pub fn new(coords: Vec<i64>) -> Self {
        LexVec { coords }
    }

    pub fn zero(rank: usize) -> Self {
        LexVec { coords: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Coordinate `i`, 1-based as in the usual notation.
    pub fn coord(&self, i: usize) -> i64 {
        self.coords[i - 1]
    }

    fn same_rank(&self, other: &LexVec) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found: other.rank() });
        }
        Ok(())
    }

    pub fn cmp_lex(&self, other: &LexVec) -> Result<Ordering> {
        self.same_rank(other)?;
        Ok(self.coords.cmp(&other.coords))
    }

    pub fn checked_add(&self, other: &LexVec) -> Result<LexVec> {
        self.same_rank(other)?;
        Ok(LexVec::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn checked_sub(&self, other: &LexVec) -> Result<LexVec> {
        self.same_rank(other)?;
        Ok(LexVec::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self) -> LexVec {
        LexVec::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> LexVec {
        LexVec::new(self.coords.iter().map(|a| a * k).collect())
    }

    /// `pi_d`: the first `d` coordinates. Order preserving.
    pub fn proj_head(&self, d: usize) -> Result<LexVec> {
        if d > self.rank() {
            return Err(Error::OutOfRange { index: d as i64, max: self.rank() as i64 });
        }
        Ok(LexVec::new(self.coords[..d].to_vec()))
    }

    /// `pi^d`: the last `d` coordinates. A homomorphism, not monotone for `d < n`.
    pub fn proj_tail(&self, d: usize) -> Result<LexVec> {
        if d > self.rank() {
            return Err(Error::OutOfRange { index: d as i64, max: self.rank() as i64 });
        }
        Ok(LexVec::new(self.coords[self.rank() - d..].to_vec()))
    }

    /// `e_i^n`: 1 in position `n + 1 - i`. `e_1^n` is the minimal positive element.
    pub fn basis_elem(n: usize, i: usize) -> Result<LexVec> {
        if i < 1 || i > n {
            return Err(Error::OutOfRange { index: i as i64, max: n as i64 });
        }
        let mut coords = vec![0; n];
        coords[n - i] = 1;
        Ok(LexVec::new(coords))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    /// Membership in `2 Z^n`.
    pub fn is_even(&self) -> bool {
        self.coords.iter().all(|c| c % 2 == 0)
    }

    /// Reduction modulo `2 Z^n`, coordinates in `{0, 1}`.
    pub fn parity(&self) -> LexVec {
        LexVec::new(self.coords.iter().map(|c| c.rem_euclid(2)).collect())
    }

    /// Last coordinate (`pi^1`), 0 for the trivial group.
    pub fn last(&self) -> i64 {
        self.coords.last().copied().unwrap_or(0)
    }
}

impl PartialOrd for LexVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_lex(other).ok()
    }
}

impl fmt::Display for LexVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for LexVec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lv(c: &[i64]) -> LexVec {
        LexVec::new(c.to_vec())
    }

    #[test]
    fn compare() {
        assert_eq!(lv(&[0, 5]).cmp_lex(&lv(&[1, 0])).unwrap(), Ordering::Less);
        assert_eq!(lv(&[2, 3]).cmp_lex(&lv(&[2, 3])).unwrap(), Ordering::Equal);
        assert_eq!(lv(&[1, -7]).cmp_lex(&lv(&[1, 0])).unwrap(), Ordering::Less);
        assert!(lv(&[1]).cmp_lex(&lv(&[1, 0])).is_err());
    }

    #[test]
    fn projections() {
        assert_eq!(lv(&[2, 3]).proj_head(1).unwrap(), lv(&[2]));
        assert_eq!(lv(&[2, 3]).proj_head(0).unwrap(), lv(&[]));
        assert_eq!(lv(&[1, 2, 3]).proj_head(2).unwrap(), lv(&[1, 2]));
        assert_eq!(lv(&[2, 3]).proj_tail(1).unwrap(), lv(&[3]));
        assert_eq!(lv(&[0, 1]).proj_tail(1).unwrap(), lv(&[1]));
        assert_eq!(lv(&[1, 2, 3]).proj_tail(2).unwrap(), lv(&[2, 3]));
        assert!(lv(&[1]).proj_head(2).is_err());
        assert!(lv(&[1]).proj_tail(2).is_err());
    }

    #[test]
    fn basis() {
        assert_eq!(LexVec::basis_elem(2, 1).unwrap(), lv(&[0, 1]));
        assert_eq!(LexVec::basis_elem(2, 2).unwrap(), lv(&[1, 0]));
        assert_eq!(LexVec::basis_elem(1, 1).unwrap(), lv(&[1]));
        assert!(LexVec::basis_elem(2, 0).is_err());
        assert!(LexVec::basis_elem(2, 3).is_err());
    }

    #[test]
    fn tail_is_not_monotone() {
        let a = lv(&[0, 5]);
        let b = lv(&[1, 0]);
        assert!(a < b);
        assert!(a.proj_tail(1).unwrap() > b.proj_tail(1).unwrap());
    }

    fn vec3() -> impl Strategy<Value = LexVec> {
        prop::collection::vec(-20i64..20, 3).prop_map(LexVec::new)
    }

    proptest! {
        #[test]
        fn translation_invariant(a in vec3(), b in vec3(), c in vec3()) {
            if a < b {
                prop_assert!(a.checked_add(&c).unwrap() < b.checked_add(&c).unwrap());
            }
        }

        #[test]
        fn head_monotone_and_additive(a in vec3(), b in vec3(), d in 0usize..=3) {
            if a <= b {
                prop_assert!(a.proj_head(d).unwrap() <= b.proj_head(d).unwrap());
            }
            let s = a.checked_add(&b).unwrap();
            prop_assert_eq!(s.proj_head(d).unwrap(),
                a.proj_head(d).unwrap().checked_add(&b.proj_head(d).unwrap()).unwrap());
            prop_assert_eq!(s.proj_tail(d).unwrap(),
                a.proj_tail(d).unwrap().checked_add(&b.proj_tail(d).unwrap()).unwrap());
        }

        #[test]
        fn minimal_positive(x in vec3()) {
            let e1 = LexVec::basis_elem(3, 1).unwrap();
            prop_assert!(e1.is_positive());
            prop_assert!(!(x.is_positive() && x < e1));
        }

        #[test]
        fn parity_matches_doubles(x in vec3()) {
            prop_assert!(x.scale(2).is_even());
            prop_assert_eq!(x.is_even(), x.parity().is_zero());
        }
    }
}
