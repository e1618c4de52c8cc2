//! Permutations on `{0, .., n-1}`.
//!
//! Products follow the right-action convention: `a * b` applies `a` first,
//! then `b`, and `x^g = g^-1 x g`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u16]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from its image list, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u16).collect(),
        })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= degree || b >= degree || touched[a] {
                    return Err(Error::InvalidPermutation(format!(
                        "bad cycle {cycle:?} for degree {degree}"
                    )));
                }
                touched[a] = true;
                images[a] = b;
            }
        }
        Perm::from_images(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm { images: inv.into() }
    }

    /// `self^other = other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        let n = self.images.len();
        let mut out = vec![0u16; n];
        for i in 0..n {
            let a = other.images[i] as usize;
            let b = other.images[self.images[i] as usize];
            out[a] = b;
        }
        Perm { images: out.into() }
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.apply(i);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Places `self` on points `offset..offset+degree` of a permutation of degree `total`.
    pub fn shifted(&self, offset: usize, total: usize) -> Perm {
        let mut images: Vec<u16> = (0..total as u16).collect();
        for (i, &j) in self.images.iter().enumerate() {
            images[offset + i] = (offset + j as usize) as u16;
        }
        Perm { images: images.into() }
    }
}

impl Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), rhs.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&i| rhs.images[i as usize])
                .collect(),
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
