//! Permutations in zero-based one-line notation.
//!
//! Composition is fixed as `(p ∘ q)[i] = p[q[i]]`: `q` is applied first.

mod catalog;
mod cycles;
mod genset;

pub use catalog::{catalog, gollan, FamilyParams, FAMILIES};
pub use cycles::{conjugacy_class_reps, format_cycles, parse_cycles, partitions, CycleType};
pub use genset::{Generator, GeneratorSet};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = 256;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&n), "degree {n} out of range");
        Permutation { images: (0..n).map(|i| i as u8).collect() }
    }

    /// Validates that `images` is a bijection on `0..len`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::NotBijection(format!("degree {n} out of range")));
        }
        let mut seen = vec![false; n];
        for &v in images {
            if v >= n {
                return Err(Error::OutOfRange { entry: v, degree: n });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotBijection(format!("value {v} appears twice")));
            }
        }
        Ok(Permutation { images: images.iter().map(|&v| v as u8).collect() })
    }

    pub fn from_bytes(images: &[u8]) -> Result<Self> {
        let wide: Vec<usize> = images.iter().map(|&v| v as usize).collect();
        Self::from_images(&wide)
    }

    /// Permutation given by a single cycle `c[0] -> c[1] -> ... -> c[0]`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for &c in cycle {
            if c >= n {
                return Err(Error::OutOfRange { entry: c, degree: n });
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(Error::RepeatedInCycle(c));
            }
        }
        for (i, &c) in cycle.iter().enumerate() {
            images[c] = cycle[(i + 1) % cycle.len()];
        }
        Self::from_images(&images)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::cycle(n, &[a, b])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize).collect()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.images.iter().enumerate().all(|(i, &v)| self.images[v as usize] as usize == i)
    }

    /// `(self ∘ other)[i] = self[other[i]]`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(Permutation { images: other.images.iter().map(|&j| self.images[j as usize]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &Permutation) -> Result<Permutation> {
        h.compose(self)?.compose(&h.inverse())
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same degree");
            }
            base = base.compose(&base).expect("same degree");
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles, each starting at its smallest element, ordered by that element.
    /// Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.image(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// +1 for even, -1 for odd permutations.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Moved points.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image(i) != i).collect()
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::from_images(&v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.to_vec()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_vec())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cycles(self))
    }
}

pub fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}
