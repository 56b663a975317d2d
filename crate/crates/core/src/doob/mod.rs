//! Doob graph `D(m, n)` coordinates, the check matrix built from a partition, syndrome
//! decoding and the coordinate permutations induced by `xi` and the Frobenius map.
//!
//! A vertex is a word of length `2m + n` over Z4: `m` Shrikhande pairs followed by `n`
//! complete-graph (K4) coordinates. With `m = (2^delta-1)(2^delta-2)/6` and
//! `n = 2^delta - 1` a radius-1 ball has `1 + 6m + 3n = 4^delta` vertices.

mod matrix;
mod perm;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::{Error, Result};

pub use matrix::{CheckMatrix, Decoded, Syndrome};
pub use perm::{FrobeniusOutcome, Permutation};

/// Connecting set of the Shrikhande graph on Z4^2.
pub const SHRIKHANDE_SET: [(u8, u8); 6] = [(0, 1), (3, 0), (3, 3), (0, 3), (1, 0), (1, 1)];

/// Shrikhande distance of `(x, y)` from the origin, indexed by `4x + y`, found by
/// breadth-first search over the Cayley graph.
pub fn shrikhande_table() -> &'static [u8; 16] {
    static TABLE: OnceLock<[u8; 16]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut dist = [u8::MAX; 16];
        dist[0] = 0;
        let mut frontier = vec![(0u8, 0u8)];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for (x, y) in frontier {
                for (dx, dy) in SHRIKHANDE_SET {
                    let v = ((x + dx) % 4, (y + dy) % 4);
                    let slot = &mut dist[(4 * v.0 + v.1) as usize];
                    if *slot == u8::MAX {
                        *slot = level;
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        dist
    })
}

pub fn shrikhande_distance(dx: u8, dy: u8) -> u8 {
    shrikhande_table()[(4 * (dx & 3) + (dy & 3)) as usize]
}

/// Shape of `D(m, n)` for a given `delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoobParams {
    pub delta: u32,
    /// Shrikhande coordinates.
    pub m: usize,
    /// K4 coordinates.
    pub n: usize,
}

impl DoobParams {
    pub fn new(delta: u32) -> Self {
        let n = (1usize << delta) - 1;
        DoobParams { delta, m: n * (n - 1) / 6, n }
    }

    /// Length over Z4, `2m + n = (4^delta - 1)/3`.
    pub fn len(&self) -> usize {
        2 * self.m + self.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ball_size(&self) -> usize {
        1 + 6 * self.m + 3 * self.n
    }

    /// Z4 index of K4 coordinate `k`.
    pub fn hamming_index(&self, k: usize) -> usize {
        2 * self.m + k
    }

    /// Doob distance: Shrikhande distance on each pair plus Hamming distance on the rest.
    pub fn distance(&self, u: &DoobVertex, v: &DoobVertex) -> Result<usize> {
        self.check_len(u)?;
        self.check_len(v)?;
        let (u, v) = (u.values(), v.values());
        let pairs: usize = (0..self.m)
            .map(|p| {
                let dx = (u[2 * p] + 4 - v[2 * p]) % 4;
                let dy = (u[2 * p + 1] + 4 - v[2 * p + 1]) % 4;
                usize::from(shrikhande_distance(dx, dy))
            })
            .sum();
        let k4 = (2 * self.m..self.len()).filter(|&k| u[k] != v[k]).count();
        Ok(pairs + k4)
    }

    pub fn check_len(&self, v: &DoobVertex) -> Result<()> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: v.len() });
        }
        Ok(())
    }

    /// `6m + 3n`.
    pub fn weight_one_count(&self) -> usize {
        6 * self.m + 3 * self.n
    }

    /// Weight-1 pattern number `k`: six per Shrikhande pair in connecting-set order, then
    /// values 1, 2, 3 per K4 coordinate.
    pub fn weight_one_pattern(&self, k: usize) -> ErrorPattern {
        if k < 6 * self.m {
            ErrorPattern::Shrikhande { pair: k / 6, diff: SHRIKHANDE_SET[k % 6] }
        } else {
            let r = k - 6 * self.m;
            ErrorPattern::Hamming { coord: r / 3, value: (r % 3) as u8 + 1 }
        }
    }

    /// All `6m + 3n` error patterns of Doob weight 1.
    pub fn weight_one_patterns(&self) -> impl Iterator<Item = ErrorPattern> + '_ {
        (0..self.weight_one_count()).map(|k| self.weight_one_pattern(k))
    }
}

/// A single-coordinate change of Doob weight 1 (or, for Shrikhande differences outside
/// the connecting set, weight 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorPattern {
    Shrikhande { pair: usize, diff: (u8, u8) },
    Hamming { coord: usize, value: u8 },
}

impl ErrorPattern {
    pub fn weight(&self) -> usize {
        match *self {
            ErrorPattern::Shrikhande { diff, .. } => usize::from(shrikhande_distance(diff.0, diff.1)),
            ErrorPattern::Hamming { value, .. } => usize::from(value % 4 != 0),
        }
    }

    pub fn negated(&self) -> ErrorPattern {
        match *self {
            ErrorPattern::Shrikhande { pair, diff } => {
                ErrorPattern::Shrikhande { pair, diff: ((4 - diff.0) % 4, (4 - diff.1) % 4) }
            }
            ErrorPattern::Hamming { coord, value } => ErrorPattern::Hamming { coord, value: (4 - value) % 4 },
        }
    }

    /// Doob coordinate touched: pair index, or `m + coord` for K4 coordinates.
    pub fn doob_coordinate(&self, params: &DoobParams) -> usize {
        match *self {
            ErrorPattern::Shrikhande { pair, .. } => pair,
            ErrorPattern::Hamming { coord, .. } => params.m + coord,
        }
    }

    /// Adds the pattern to `v` in place.
    pub fn apply(&self, params: &DoobParams, v: &mut DoobVertex) {
        match *self {
            ErrorPattern::Shrikhande { pair, diff } => {
                v.add_at(2 * pair, diff.0);
                v.add_at(2 * pair + 1, diff.1);
            }
            ErrorPattern::Hamming { coord, value } => v.add_at(params.hamming_index(coord), value),
        }
    }
}

impl fmt::Display for ErrorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ErrorPattern::Shrikhande { pair, diff } => write!(f, "shrikhande pair {pair} += ({},{})", diff.0, diff.1),
            ErrorPattern::Hamming { coord, value } => write!(f, "k4 coordinate {coord} += {value}"),
        }
    }
}

/// A vertex of `D(m, n)` as a Z4 word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoobVertex(Vec<u8>);

impl DoobVertex {
    pub fn zero(len: usize) -> Self {
        DoobVertex(vec![0; len])
    }

    pub fn from_values(values: Vec<u8>) -> Result<Self> {
        if let Some(k) = values.iter().position(|&x| x > 3) {
            return Err(Error::Parse(format!("value {} at position {k} is not in Z4", values[k])));
        }
        Ok(DoobVertex(values))
    }

    pub fn values(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_at(&mut self, k: usize, x: u8) {
        self.0[k] = (self.0[k] + x) % 4;
    }

    /// Coordinatewise sum mod 4.
    pub fn add(&self, other: &DoobVertex) -> Result<DoobVertex> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: other.len() });
        }
        Ok(DoobVertex(self.0.iter().zip(&other.0).map(|(a, b)| (a + b) % 4).collect()))
    }
}

impl FromStr for DoobVertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0'..='3' => Ok(c as u8 - b'0'),
                _ => Err(Error::Parse(format!("'{c}' is not a digit 0-3"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(DoobVertex)
    }
}

impl fmt::Display for DoobVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&x| char::from(b'0' + x)).collect();
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shrikhande_closed_form() {
        for x in 0..4 {
            for y in 0..4 {
                let want = if (x, y) == (0, 0) {
                    0
                } else if SHRIKHANDE_SET.contains(&(x, y)) {
                    1
                } else {
                    2
                };
                assert_eq!(shrikhande_distance(x, y), want, "({x},{y})");
            }
        }
        assert_eq!(shrikhande_table().iter().filter(|&&d| d == 2).count(), 9);
    }

    #[test]
    fn params_ball_identity() {
        for delta in [3, 5, 7, 9, 11, 13] {
            let p = DoobParams::new(delta);
            assert_eq!(p.ball_size(), 1 << (2 * delta));
            assert_eq!(p.len(), ((1usize << (2 * delta)) - 1) / 3);
        }
        let p = DoobParams::new(3);
        assert_eq!((p.m, p.n, p.len()), (7, 7, 21));
        assert_eq!(p.weight_one_patterns().count(), 63);
        assert!(p.weight_one_patterns().all(|e| e.weight() == 1));
        assert_eq!(p.weight_one_pattern(6), ErrorPattern::Shrikhande { pair: 1, diff: (0, 1) });
        assert_eq!(p.weight_one_pattern(42), ErrorPattern::Hamming { coord: 0, value: 1 });
        assert_eq!(p.weight_one_pattern(62), ErrorPattern::Hamming { coord: 6, value: 3 });
    }

    #[test]
    fn distance_examples() {
        let p = DoobParams::new(3);
        let z = DoobVertex::zero(21);
        assert_eq!(p.distance(&z, &z).unwrap(), 0);
        let mut v = z.clone();
        v.add_at(1, 1);
        assert_eq!(p.distance(&z, &v).unwrap(), 1);
        v.add_at(1, 1);
        assert_eq!(p.distance(&z, &v).unwrap(), 2);
        v.add_at(20, 2);
        assert_eq!(p.distance(&z, &v).unwrap(), 3);
        assert!(p.distance(&z, &DoobVertex::zero(20)).is_err());
    }

    #[test]
    fn vertex_parsing() {
        let v: DoobVertex = "0123".parse().unwrap();
        assert_eq!(v.values(), &[0, 1, 2, 3]);
        assert_eq!(v.to_string(), "0123");
        assert!("0124".parse::<DoobVertex>().is_err());
        assert!(DoobVertex::from_values(vec![4]).is_err());
    }
}
