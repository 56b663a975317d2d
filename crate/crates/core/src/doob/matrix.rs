use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DoobParams, DoobVertex, ErrorPattern};
use crate::galois_ring::{RingContext, RingElement};
use crate::partition::{Part, PartitionBlock, RingPartition, Role};
use crate::{Error, Result};

/// `H * v`, an element of `GR(4^delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome(pub RingElement);

impl Syndrome {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// `delta x (2m + n)` check matrix over Z4, one ring element per column.
///
/// Layout: for each seed `p` and `t` in `0..2^delta-1` the pair `(xi^t A_p, xi^t B_p)`,
/// then `xi^0, ..., xi^(2^delta-2)`.
#[derive(Clone, Debug)]
pub struct CheckMatrix {
    ctx: Arc<RingContext>,
    params: DoobParams,
    columns: Vec<RingElement>,
}

/// Result of syndrome decoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: DoobVertex,
    /// The weight-1 pattern removed from the input, if any.
    pub correction: Option<ErrorPattern>,
}

impl CheckMatrix {
    pub fn from_partition(partition: &RingPartition) -> Self {
        let ctx = partition.ctx().clone();
        let params = DoobParams::new(ctx.delta());
        let mut columns = Vec::with_capacity(params.len());
        for block in partition.blocks() {
            if let PartitionBlock::Sixtuple { .. } = block {
                let e = partition.block_elements(block);
                columns.push(e[0]);
                columns.push(e[1]);
            }
        }
        columns.extend((0..ctx.order()).map(|i| ctx.xi_pow(i64::from(i))));
        CheckMatrix { ctx, params, columns }
    }

    pub fn from_columns(ctx: Arc<RingContext>, columns: Vec<RingElement>) -> Result<Self> {
        let params = DoobParams::new(ctx.delta());
        if columns.len() != params.len() {
            return Err(Error::LengthMismatch { expected: params.len(), got: columns.len() });
        }
        Ok(CheckMatrix { ctx, params, columns })
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn params(&self) -> &DoobParams {
        &self.params
    }

    pub fn columns(&self) -> &[RingElement] {
        &self.columns
    }

    pub fn column(&self, k: usize) -> RingElement {
        self.columns[k]
    }

    /// `(rows, cols)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.ctx.delta() as usize, self.columns.len())
    }

    /// Row `r` holds coefficient `r` of every column.
    pub fn row(&self, r: u32) -> Vec<u8> {
        self.columns.iter().map(|c| c.coeff(r)).collect()
    }

    /// Header `delta L`, then `delta` rows of `L` space-separated digits.
    pub fn to_text(&self) -> String {
        let (rows, cols) = self.dims();
        let mut out = String::with_capacity(rows * (2 * cols + 1) + 16);
        let _ = writeln!(out, "{rows} {cols}");
        for r in 0..rows as u32 {
            let line: Vec<String> = self.row(r).iter().map(u8::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(ctx: Arc<RingContext>, text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header '{header}'"))))
            .collect::<Result<_>>()?;
        let &[rows, cols] = dims.as_slice() else {
            return Err(Error::Parse(format!("bad header '{header}'")));
        };
        if rows != ctx.delta() as usize {
            return Err(Error::Parse(format!("matrix has {rows} rows, ring has delta {}", ctx.delta())));
        }
        let mut coeffs = vec![vec![0u8; rows]; cols];
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
            let digits: Vec<&str> = line.split_whitespace().collect();
            if digits.len() != cols {
                return Err(Error::Parse(format!("row {r} has {} entries, expected {cols}", digits.len())));
            }
            for (k, d) in digits.iter().enumerate() {
                coeffs[k][r] = match *d {
                    "0" => 0,
                    "1" => 1,
                    "2" => 2,
                    "3" => 3,
                    _ => return Err(Error::Parse(format!("bad entry '{d}' in row {r}"))),
                };
            }
        }
        let columns = coeffs
            .iter()
            .map(|c| RingElement::from_coeffs(rows as u32, c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_columns(ctx, columns)
    }

    /// `sum_k v_k col_k`.
    pub fn syndrome(&self, v: &DoobVertex) -> Result<Syndrome> {
        self.params.check_len(v)?;
        let s = v
            .values()
            .iter()
            .zip(&self.columns)
            .fold(RingElement::ZERO, |acc, (&x, &c)| acc + c.scalar_mul(x));
        Ok(Syndrome(s))
    }

    pub fn is_codeword(&self, v: &DoobVertex) -> Result<bool> {
        Ok(self.syndrome(v)?.is_zero())
    }

    /// Syndrome of a single-coordinate pattern.
    pub fn pattern_syndrome(&self, e: &ErrorPattern) -> RingElement {
        match *e {
            ErrorPattern::Shrikhande { pair, diff } => {
                self.columns[2 * pair].scalar_mul(diff.0) + self.columns[2 * pair + 1].scalar_mul(diff.1)
            }
            ErrorPattern::Hamming { coord, value } => {
                self.columns[self.params.hamming_index(coord)].scalar_mul(value)
            }
        }
    }

    /// Uniform codeword: free coordinates are random and the K4 coordinates of
    /// `xi^0, ..., xi^(delta-1)` (the identity columns) cancel the syndrome.
    pub fn random_codeword(&self, seed: u64) -> DoobVertex {
        self.random_codeword_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn random_codeword_with<R: Rng + ?Sized>(&self, rng: &mut R) -> DoobVertex {
        let delta = self.ctx.delta();
        let pivot = self.params.hamming_index(0);
        let mut v = self.random_vertex_with(rng);
        v.0[pivot..pivot + delta as usize].fill(0);
        let s = self.syndrome(&v).expect("length matches by construction").0;
        for r in 0..delta {
            v.0[pivot + r as usize] = (4 - s.coeff(r)) % 4;
        }
        debug_assert!(self.is_codeword(&v).unwrap());
        v
    }

    /// Uniform random vertex of the graph.
    pub fn random_vertex_with<R: Rng + ?Sized>(&self, rng: &mut R) -> DoobVertex {
        let mut values = vec![0u8; self.params.len()];
        rng.fill_bytes(&mut values);
        values.iter_mut().for_each(|x| *x &= 3);
        DoobVertex(values)
    }

    /// The codeword within distance 1 of `v`, found by locating the syndrome in the
    /// partition the matrix was built from.
    pub fn decode(&self, partition: &RingPartition, v: &DoobVertex) -> Result<Decoded> {
        if partition.delta() != self.ctx.delta() {
            return Err(Error::Parameter("partition and matrix disagree on delta".into()));
        }
        let s = self.syndrome(v)?.0;
        if s.is_zero() {
            return Ok(Decoded { codeword: v.clone(), correction: None });
        }
        let (block, role) = partition
            .locate(s)
            .ok_or_else(|| Error::Invariant(format!("syndrome {s:?} lies in no block")))?;
        let error = match (partition.block(block), role) {
            (Some(PartitionBlock::Triple { exp }), Role::Triple { scalar }) => {
                ErrorPattern::Hamming { coord: exp as usize, value: scalar }
            }
            (Some(PartitionBlock::Sixtuple { seed, mult }), Role::Sixtuple { part, negated }) => {
                let diff = match part {
                    Part::A => (1, 0),
                    Part::B => (0, 1),
                    Part::Sum => (1, 1),
                };
                let e = ErrorPattern::Shrikhande { pair: seed * self.ctx.order() as usize + mult as usize, diff };
                if negated {
                    e.negated()
                } else {
                    e
                }
            }
            _ => return Err(Error::Invariant(format!("inconsistent locator result for block {block}"))),
        };
        if self.pattern_syndrome(&error) != s {
            return Err(Error::Invariant(format!("matrix does not match partition at {error}")));
        }
        let mut codeword = v.clone();
        error.negated().apply(&self.params, &mut codeword);
        Ok(Decoded { codeword, correction: Some(error) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::assemble_partition;

    fn setup(delta: u32) -> (RingPartition, CheckMatrix) {
        let p = assemble_partition(Arc::new(RingContext::new(delta).unwrap())).unwrap();
        let h = CheckMatrix::from_partition(&p);
        (p, h)
    }

    #[test]
    fn dims() {
        assert_eq!(setup(3).1.dims(), (3, 21));
        assert_eq!(setup(5).1.dims(), (5, 341));
    }

    #[test]
    fn right_part_starts_with_identity() {
        let (_, h) = setup(5);
        let base = h.params().hamming_index(0);
        for i in 0..5u32 {
            let mut unit = vec![0; 5];
            unit[i as usize] = 1;
            assert_eq!(h.column(base + i as usize).coeffs(5), unit);
        }
    }

    #[test]
    fn syndrome_basics() {
        let (p, h) = setup(3);
        assert!(h.syndrome(&DoobVertex::zero(21)).unwrap().is_zero());
        let mut v = DoobVertex::zero(21);
        v.add_at(h.params().hamming_index(4), 1);
        assert_eq!(h.syndrome(&v).unwrap().0, p.ctx().xi_pow(4));
        assert!(h.syndrome(&DoobVertex::zero(20)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let (p, h) = setup(3);
        let text = h.to_text();
        assert!(text.starts_with("3 21\n"));
        let back = CheckMatrix::from_text(p.ctx().clone(), &text).unwrap();
        assert_eq!(back.columns(), h.columns());
        assert!(CheckMatrix::from_text(p.ctx().clone(), "3 21\n0 1\n").is_err());
    }

    #[test]
    fn codewords_decode_to_themselves() {
        let (p, h) = setup(5);
        for seed in 0..20 {
            let c = h.random_codeword(seed);
            assert!(h.is_codeword(&c).unwrap());
            let d = h.decode(&p, &c).unwrap();
            assert_eq!(d.codeword, c);
            assert_eq!(d.correction, None);
        }
        assert_ne!(h.random_codeword(1), h.random_codeword(2));
    }
}
