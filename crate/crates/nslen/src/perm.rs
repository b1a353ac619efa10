//! Permutations of `{1..degree}`, stored 0-based internally.
//!
//! Composition is left-to-right: `(p * q)` maps `i` to `q(p(i))`. Cycle
//! notation and the JSON group format are 1-based, matching the usual
//! convention.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Build from 0-based images, checking bijectivity.
    pub fn from_images0(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::NotAPermutation { len: n });
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from 1-based images as in the external file format.
    pub fn from_images1(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x < 1 || x > n {
                return Err(Error::NotAPermutation { len: n });
            }
            out.push((x - 1) as u32);
        }
        Permutation::from_images0(out)
    }

    /// Build from disjoint cycles in 1-based notation.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for window in 0..cycle.len() {
                let a = cycle[window];
                let b = cycle[(window + 1) % cycle.len()];
                if a < 1 || a > degree {
                    return Err(Error::PointOutOfRange {
                        point: a,
                        degree,
                    });
                }
                if b < 1 || b > degree {
                    return Err(Error::PointOutOfRange {
                        point: b,
                        degree,
                    });
                }
                images[a - 1] = (b - 1) as u32;
            }
        }
        Permutation::from_images0(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn images0(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn moves(&self, point: u32) -> bool {
        self.images[point as usize] != point
    }

    pub fn moved_points(&self) -> impl Iterator<Item = u32> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// `self * other`: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&x| other.images[x as usize])
            .collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self^other = other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other
            .inverse()
            .compose_unchecked(self)
            .compose_unchecked(other)
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .compose_unchecked(&other.inverse())
            .compose_unchecked(self)
            .compose_unchecked(other)
    }

    /// Disjoint cycle decomposition (0-based, nontrivial cycles only).
    pub fn cycles0(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] || !self.moves(start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p as usize] {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycles in 1-based notation, for serialization.
    pub fn cycles1(&self) -> Vec<Vec<usize>> {
        self.cycles0()
            .into_iter()
            .map(|c| c.into_iter().map(|p| p as usize + 1).collect())
            .collect()
    }

    /// Multiplicative order, the lcm of the cycle lengths.
    pub fn order(&self) -> BigUint {
        let mut ord = BigUint::one();
        for cycle in self.cycles0() {
            ord = ord.lcm(&BigUint::from(cycle.len()));
        }
        ord
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            exp >>= 1;
        }
        acc
    }

    /// Extend to a larger domain, fixing the new points.
    pub fn extend_degree(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images: Vec<u32> = (0..degree as u32).collect();
        images[..self.degree()].copy_from_slice(&self.images);
        Permutation { images }
    }

    /// Shift the support by `offset` inside a domain of `degree` points.
    pub fn shift(&self, offset: usize, degree: usize) -> Permutation {
        assert!(offset + self.degree() <= degree);
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = x + offset as u32;
        }
        Permutation { images }
    }

    /// Parity: true iff the permutation is even.
    pub fn is_even(&self) -> bool {
        self.cycles0()
            .iter()
            .map(|c| c.len() - 1)
            .sum::<usize>()
            % 2
            == 0
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for cycle in self.cycles1() {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
