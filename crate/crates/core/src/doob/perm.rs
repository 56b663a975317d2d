use std::fmt;

use super::{CheckMatrix, DoobVertex};
use crate::galois_ring::RingElement;
use crate::{Error, Result};

const NO_COLUMN: u32 = u32::MAX;

/// A permutation of Z4 coordinates, `k -> images[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &k in &images {
            match seen.get_mut(k as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::Parameter(format!("{k} is out of range or repeated"))),
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(len: usize) -> Self {
        Permutation { images: (0..len as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, k: usize) -> usize {
        self.images[k] as usize
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&k| self.images[k as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (k, &img) in self.images.iter().enumerate() {
            inv[img as usize] = k as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &img)| k as u32 == img)
    }

    /// Cycles including fixed points, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k);
                k = self.image(k);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1, |acc, l| lcm(acc, l as u64))
    }

    /// Moves the value at coordinate `k` to coordinate `images[k]`.
    pub fn apply(&self, v: &DoobVertex) -> Result<DoobVertex> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: v.len() });
        }
        let mut out = vec![0; v.len()];
        for (k, &x) in v.values().iter().enumerate() {
            out[self.image(k)] = x;
        }
        DoobVertex::from_values(out)
    }
}

/// One-line cycle notation without fixed points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Whether the Frobenius image of the column set is again the column set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusOutcome {
    Present(Permutation),
    /// `f(col_k)` is not a column, or the image of a Shrikhande pair is not a pair.
    Absent { column: usize, image: RingElement },
}

impl CheckMatrix {
    /// Column position by ring-element index; the first occurrence wins.
    fn column_index(&self) -> Vec<u32> {
        let delta = self.ctx().delta();
        let mut index = vec![NO_COLUMN; self.ctx().ring_size()];
        for (k, c) in self.columns().iter().enumerate().rev() {
            index[c.index(delta)] = k as u32;
        }
        index
    }

    /// Permutation induced by mapping every column through `map`, if the column set is
    /// closed under it and Shrikhande pairs go to Shrikhande pairs.
    fn induced(&self, map: impl Fn(RingElement) -> RingElement) -> std::result::Result<Permutation, (usize, RingElement)> {
        let index = self.column_index();
        let split = 2 * self.params().m;
        let mut images = Vec::with_capacity(self.columns().len());
        for (k, &c) in self.columns().iter().enumerate() {
            let img = map(c);
            let target = index[img.index(self.ctx().delta())];
            if target == NO_COLUMN {
                return Err((k, img));
            }
            let target_ok = if k < split {
                (target as usize) < split && (k % 2 == 0 || images[k - 1] / 2 == target / 2)
            } else {
                target as usize >= split
            };
            if !target_ok {
                return Err((k, img));
            }
            images.push(target);
        }
        Ok(Permutation { images })
    }

    /// Coordinate permutation `k -> index of xi * col_k`.
    pub fn xi_permutation(&self) -> Result<Permutation> {
        let ctx = self.ctx().clone();
        self.induced(|c| ctx.mul_xi_pow(c, 1)).map_err(|(k, img)| {
            Error::Invariant(format!("xi * column {k} = {img:?} is not a column in the same layout"))
        })
    }

    /// Coordinate permutation induced by the Frobenius automorphism, when it exists.
    pub fn frobenius_permutation(&self) -> FrobeniusOutcome {
        let ctx = self.ctx().clone();
        match self.induced(|c| ctx.frobenius(c)) {
            Ok(p) => FrobeniusOutcome::Present(p),
            Err((column, image)) => FrobeniusOutcome::Absent { column, image },
        }
    }
}
