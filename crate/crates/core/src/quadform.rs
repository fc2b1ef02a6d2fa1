//! Diagonal quadratic forms over `K_n` and their isotropy, decided by the
//! residue-form splitting along `t_n, t_{n-1}, ..., t_1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::kn::KnElem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagForm {
    rank: usize,
    entries: Vec<KnElem>,
}

impl DiagForm {
    pub fn new(entries: Vec<KnElem>) -> Result<DiagForm> {
        let rank = entries.first().map(|e| e.rank()).ok_or(Error::ZeroInput)?;
        Self::with_rank(rank, entries)
    }

    /// Possibly empty form over `K_rank`.
    pub fn with_rank(rank: usize, entries: Vec<KnElem>) -> Result<DiagForm> {
        for e in &entries {
            if e.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: e.rank() });
            }
            if e.is_zero() {
                return Err(Error::ZeroInput);
            }
        }
        Ok(DiagForm { rank, entries })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entries(&self) -> &[KnElem] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Orthogonal sum.
    pub fn perp(&self, other: &DiagForm) -> Result<DiagForm> {
        let mut e = self.entries.clone();
        e.extend(other.entries.iter().cloned());
        DiagForm::with_rank(self.rank, e)
    }

    /// The two residue forms over `K_{rank-1}`: entries of even and of odd
    /// `t_rank`-adic order, each scaled by a square to order 0 or 1.
    pub fn springer_split(&self) -> Result<(DiagForm, DiagForm)> {
        if self.rank == 0 {
            return Err(Error::OutOfRange { index: 1, max: 0 });
        }
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for a in &self.entries {
            let u = a.unit_residue()?;
            if a.first_value()?.rem_euclid(2) == 0 {
                even.push(u);
            } else {
                odd.push(u);
            }
        }
        Ok((DiagForm::with_rank(self.rank - 1, even)?, DiagForm::with_rank(self.rank - 1, odd)?))
    }

    pub fn is_isotropic(&self) -> bool {
        if self.rank == 0 {
            let pos = self.entries.iter().any(|e| e.residue_sign() > 0);
            let neg = self.entries.iter().any(|e| e.residue_sign() < 0);
            return pos && neg;
        }
        if self.dim() < 2 {
            return false;
        }
        let (e, o) = self.springer_split().expect("entries nonzero");
        e.is_isotropic() || o.is_isotropic()
    }
}

impl fmt::Display for DiagForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// `x` is a sum of `k` squares in `K_n` iff `k<1> + <-x>` is isotropic
/// (or `x` is itself a square).
pub fn is_sum_of_k_squares(x: &KnElem, k: usize) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    if k == 0 {
        return Err(Error::OutOfRange { index: 0, max: 0 });
    }
    if x.is_square_class_trivial() {
        return Ok(true);
    }
    let n = x.rank();
    let mut e = vec![KnElem::one(n); k];
    e.push(-x);
    Ok(DiagForm::with_rank(n, e)?.is_isotropic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t() -> KnElem {
        KnElem::t(1, 1).unwrap()
    }
    fn k(n: usize, c: i64) -> KnElem {
        KnElem::int(n, c)
    }
    fn form(e: Vec<KnElem>) -> DiagForm {
        DiagForm::new(e).unwrap()
    }

    #[test]
    fn split_examples() {
        let (e, o) = form(vec![k(1, 1), -t()]).springer_split().unwrap();
        assert_eq!((e.entries().to_vec(), o.entries().to_vec()), (vec![k(0, 1)], vec![k(0, -1)]));
        let (e, o) = form(vec![k(1, 1), k(1, 1), -t()]).springer_split().unwrap();
        assert_eq!((e.dim(), o.dim()), (2, 1));
        let t2 = t().pow(2).unwrap();
        let t3 = t().pow(3).unwrap();
        let (e, o) = form(vec![t2, -t3]).springer_split().unwrap();
        assert_eq!((e.entries().to_vec(), o.entries().to_vec()), (vec![k(0, 1)], vec![k(0, -1)]));
    }

    #[test]
    fn isotropy_examples() {
        assert!(form(vec![k(1, 1), k(1, -1)]).is_isotropic());
        assert!(!form(vec![k(1, 1), k(1, 1), -t()]).is_isotropic());
        let x = &k(1, 1) + &t();
        assert!(form(vec![k(1, 1), k(1, 1), k(1, 1), -x]).is_isotropic());
    }

    #[test]
    fn k_squares_examples() {
        assert!(!is_sum_of_k_squares(&t(), 2).unwrap());
        assert!(is_sum_of_k_squares(&(&k(1, 1) + &t().pow(2).unwrap()), 2).unwrap());
        for kk in 1..6 {
            assert!(!is_sum_of_k_squares(&k(2, -1), kk).unwrap());
        }
        assert!(is_sum_of_k_squares(&k(1, 1), 0).is_err());
    }

    fn entry(n: usize) -> impl Strategy<Value = KnElem> {
        (prop::collection::vec(-3i64..4, n), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 5]))
            .prop_map(move |(e, c)| KnElem::monomial(n, &e).scale(&crate::Scalar::from_int(c)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn invariant_under_squares_and_permutation(es in prop::collection::vec(entry(2), 1..5),
                                                   s in entry(2), rot in 0usize..4) {
            let f = form(es.clone());
            let mut scaled = es.clone();
            scaled[0] = &scaled[0] * &(&s * &s);
            prop_assert_eq!(f.is_isotropic(), form(scaled).is_isotropic());
            let mut p = es.clone();
            let r = rot % p.len();
            p.rotate_left(r);
            prop_assert_eq!(f.is_isotropic(), form(p).is_isotropic());
        }

        #[test]
        fn hyperbolic_plane_is_isotropic(es in prop::collection::vec(entry(2), 0..3), a in entry(2)) {
            let f = DiagForm::with_rank(2, es).unwrap();
            let h = form(vec![a.clone(), -a]);
            prop_assert!(f.perp(&h).unwrap().is_isotropic());
        }
    }
}
