//! Exact permutations of `{0..n-1}`.
//!
//! A [`Perm`] stores the image table directly: `images[i]` is the image
//! of point `i`. Composition applies right-to-left, `compose(p, q)(i) =
//! p(q(i))`; every permutation identity in this crate relies on that
//! one convention.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("image table of length {len} is not a permutation of 0..{len}")]
    NotAPermutation { len: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("{0} is not a prime number")]
    NotPrime(u64),
}

/// A bijection of `{0..n-1}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Validates that `images` is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Result<Perm, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if (v as usize) >= n || seen[v as usize] {
                return Err(PermError::NotAPermutation { len: n });
            }
            seen[v as usize] = true;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `compose(p, q)(i) = p(q(i))`: `q` acts first.
    pub fn compose(&self, q: &Perm) -> Result<Perm, PermError> {
        if self.degree() != q.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: q.degree(),
            });
        }
        let images = q.images.iter().map(|&j| self.images[j as usize]).collect();
        Ok(Perm { images })
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Perm { images }
    }

    /// Lengths of the cycles of the permutation, in order of their
    /// smallest element.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.apply(i);
            }
            out.push(len);
        }
        out
    }

    /// Least `k >= 1` with `p^k = id`: the lcm of the cycle lengths.
    pub fn element_order(&self) -> BigUint {
        self.cycle_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    /// Smallest point moved by the permutation, if any.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &v)| *i as u32 != v)
            .map(|(i, _)| i)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(images: Vec<u32>) -> Perm {
        Perm::from_images(images).unwrap()
    }

    /// The repo-wide application convention, asserted once: the right
    /// factor acts first.
    #[test]
    fn composition_convention() {
        let a = p(vec![1, 2, 0]);
        let b = p(vec![2, 1, 0]);
        let c = a.compose(&b).unwrap();
        for i in 0..3 {
            assert_eq!(c.apply(i), a.apply(b.apply(i)));
        }
        assert_eq!(c.images(), &[0, 2, 1]);
    }

    #[test]
    fn compose_examples() {
        let id = Perm::identity(3);
        let q = p(vec![2, 0, 1]);
        assert_eq!(id.compose(&q).unwrap(), q);
        let t = p(vec![1, 0]);
        assert_eq!(t.compose(&t).unwrap(), Perm::identity(2));
    }

    #[test]
    fn compose_degree_mismatch() {
        let a = Perm::identity(3);
        let b = Perm::identity(4);
        assert_eq!(
            a.compose(&b).unwrap_err(),
            PermError::DegreeMismatch { left: 3, right: 4 }
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p(vec![1, 2, 0]).inverse(), p(vec![2, 0, 1]));
        assert_eq!(Perm::identity(4).inverse(), Perm::identity(4));
        assert_eq!(p(vec![1, 0]).inverse(), p(vec![1, 0]));
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn element_order_examples() {
        assert_eq!(p(vec![1, 2, 0]).element_order(), BigUint::from(3u32));
        assert_eq!(Perm::identity(5).element_order(), BigUint::one());
        // two cycles of coprime lengths
        assert_eq!(p(vec![1, 0, 3, 4, 2]).element_order(), BigUint::from(6u32));
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n as u32).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn compose_is_associative((a, b, c) in (perm_strategy(8), perm_strategy(8), perm_strategy(8))) {
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_is_involutive(a in perm_strategy(9)) {
            prop_assert_eq!(a.inverse().inverse(), a.clone());
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        }

        #[test]
        fn order_kills_the_permutation(a in perm_strategy(7)) {
            let ord: u64 = (&a.element_order()).try_into().unwrap();
            let mut acc = Perm::identity(7);
            for _ in 0..ord {
                acc = a.compose(&acc).unwrap();
            }
            prop_assert!(acc.is_identity());
        }
    }
}
