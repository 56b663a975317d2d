//! Partition of `GR(4^delta) \ {0}` into triples `{a, 2a, 3a}` and sixtuples
//! `{±a, ±b, ±(a+b)}` that is invariant under multiplication by `xi`.
//!
//! The triples are `{xi^i, 2xi^i, 3xi^i}`. The remaining elements are covered by the
//! sixtuples `{±xi^t A_p, ±xi^t B_p, ±xi^t (A_p + B_p)}` for `(2^delta - 2)/6` seed pairs
//! `(A_p, B_p)` whose `j`-coordinates tile `{1, ..., 2^delta - 2}`; see [`seeds`].
//!
//! Blocks are never materialized. Block ids are dense: triples first (position in
//! [`RingPartition::triples`]), then sixtuple `(p, t)` at `num_triples + p * (2^delta - 1) + t`.
//! [`RingPartition::locate`] finds the block of an element from its `(i, j)` coordinates.

mod file;
pub mod seeds;

use std::sync::Arc;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::galois_ring::{RingContext, RingElement, TeichExp};
use crate::{Error, Result};

pub use file::{PartitionFile, SeedRecord};
pub use seeds::{
    assemble_partition, seeds_for_class_div3, seeds_for_size_nondiv3, solve_pair,
};

const NONE: u32 = u32::MAX;

/// Which branch of the construction produced a seed pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subcase {
    /// `Tr((a+c)(b+c)) = 0`, no substitution.
    Direct,
    /// `b -> b + 1`: `j(B)` moves to the partner coset.
    ShiftB,
    /// `b -> b + 1` and `c -> c + 1`.
    ShiftBoth,
    /// `c -> c + 1`: `j(A+B)` moves to the partner coset.
    ShiftSum,
    /// Size divisible by 3 with `j(A+B) = 4^d j(A)`.
    Div3Plus,
    /// Size divisible by 3 with `j(-A-B) = 4^d j(A)`.
    Div3Minus,
}

/// Provenance of a [`SeedPair`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Origin {
    /// Coset size `s`.
    pub size: u32,
    /// Leaders of the canonical cosets of the `±`-classes involved (three, or one for
    /// sizes divisible by 3).
    pub classes: Vec<u32>,
    pub subcase: Subcase,
    /// Frobenius level `l` of `(f^l(A), f^l(B))`.
    pub level: u32,
}

/// A pair `(A, B)` generating `xi`-orbits of sixtuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedPair {
    pub a: RingElement,
    pub b: RingElement,
    pub origin: Origin,
}

impl SeedPair {
    /// `[A, B, A+B, -A, -B, -(A+B)]`.
    pub fn members(&self) -> [RingElement; 6] {
        let sum = self.a + self.b;
        [self.a, self.b, sum, -self.a, -self.b, -sum]
    }

    /// `j` of each member, in [`SeedPair::members`] order.
    pub fn j_values(&self, ctx: &RingContext) -> Result<[u32; 6]> {
        let mut out = [0; 6];
        for (slot, m) in out.iter_mut().zip(self.members()) {
            *slot = ctx.ij_coords(m)?.1;
        }
        Ok(out)
    }

    /// Checks that all members avoid `T ∪ 2T ∪ 3T` and have pairwise distinct `j`.
    pub fn validate(&self, ctx: &RingContext) -> Result<()> {
        let js = self.j_values(ctx)?;
        for x in 0..6 {
            for y in x + 1..6 {
                if js[x] == js[y] {
                    return Err(Error::Invariant(format!("seed {self:?} repeats j = {}", js[x])));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn at_level(&self, ctx: &RingContext, l: u32) -> SeedPair {
        SeedPair {
            a: ctx.frobenius_pow(self.a, l),
            b: ctx.frobenius_pow(self.b, l),
            origin: Origin { level: self.origin.level + l, ..self.origin.clone() },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    A,
    B,
    Sum,
}

/// Position of an element inside its block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// `scalar * xi^i` with scalar in `{1, 2, 3}`.
    Triple { scalar: u8 },
    /// `±` of the `A`, `B` or `A+B` member.
    Sixtuple { part: Part, negated: bool },
}

impl Role {
    fn from_member_index(r: usize) -> Role {
        let part = [Part::A, Part::B, Part::Sum][r % 3];
        Role::Sixtuple { part, negated: r >= 3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionBlock {
    /// `{xi^exp, 2 xi^exp, 3 xi^exp}`.
    Triple { exp: u32 },
    /// `{±xi^mult A_seed, ±xi^mult B_seed, ±xi^mult (A_seed + B_seed)}`.
    Sixtuple { seed: usize, mult: u32 },
}

pub type BlockElements = ArrayVec<RingElement, 6>;

/// The assembled partition with its block locator.
#[derive(Clone, Debug)]
pub struct RingPartition {
    ctx: Arc<RingContext>,
    triples: Vec<u32>,
    seeds: Vec<SeedPair>,
    members: Vec<[RingElement; 6]>,
    member_i: Vec<[u32; 6]>,
    /// `j -> 6 p + r`.
    j_owner: Vec<u32>,
    /// `exponent -> position in triples`.
    triple_slot: Vec<u32>,
}

impl RingPartition {
    /// Builds the locator for the given blocks without checking that they partition anything.
    ///
    /// Use [`RingPartition::check_seed_coverage`] or the verifier to validate.
    pub fn from_parts(ctx: Arc<RingContext>, triples: Vec<u32>, seeds: Vec<SeedPair>) -> Self {
        let n = ctx.order();
        let mut triple_slot = vec![NONE; n as usize];
        for (pos, &i) in triples.iter().enumerate() {
            if let Some(slot) = triple_slot.get_mut(i as usize) {
                if *slot == NONE {
                    *slot = pos as u32;
                }
            }
        }
        let mut j_owner = vec![NONE; n as usize];
        let mut members = Vec::with_capacity(seeds.len());
        let mut member_i = Vec::with_capacity(seeds.len());
        for (p, seed) in seeds.iter().enumerate() {
            let ms = seed.members();
            let mut is = [NONE; 6];
            for (r, &m) in ms.iter().enumerate() {
                if let Ok((i, j)) = ctx.ij_coords(m) {
                    is[r] = i;
                    if j_owner[j as usize] == NONE {
                        j_owner[j as usize] = (6 * p + r) as u32;
                    }
                }
            }
            members.push(ms);
            member_i.push(is);
        }
        RingPartition { ctx, triples, seeds, members, member_i, j_owner, triple_slot }
    }

    /// Checks the seed-level tiling: triples are a permutation of `0..2^delta-1`, and
    /// every `j` in `1..2^delta-1` is the `j` of exactly one seed member.
    pub fn check_seed_coverage(&self) -> Result<()> {
        let n = self.order() as usize;
        let mut seen = vec![false; n];
        for &i in &self.triples {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => {
                    return Err(Error::Construction {
                        message: format!("triple exponent {i} out of range or repeated"),
                        blocks: vec![],
                    })
                }
            }
        }
        if self.triples.len() != n {
            return Err(Error::Construction {
                message: format!("{} triples, expected {n}", self.triples.len()),
                blocks: vec![],
            });
        }
        let mut claimed: Vec<Option<usize>> = vec![None; n];
        for (p, seed) in self.seeds.iter().enumerate() {
            let js = seed.j_values(&self.ctx).map_err(|e| Error::Construction {
                message: format!("seed {p}: {e}"),
                blocks: vec![self.sixtuple_id(p, 0)],
            })?;
            for j in js {
                if let Some(q) = claimed[j as usize] {
                    return Err(Error::Construction {
                        message: format!("j = {j} claimed by seeds {q} and {p}"),
                        blocks: vec![self.sixtuple_id(q, 0), self.sixtuple_id(p, 0)],
                    });
                }
                claimed[j as usize] = Some(p);
            }
        }
        if let Some(j) = (1..n).find(|&j| claimed[j].is_none()) {
            return Err(Error::Construction { message: format!("j = {j} not covered"), blocks: vec![] });
        }
        Ok(())
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn delta(&self) -> u32 {
        self.ctx.delta()
    }

    pub fn order(&self) -> u32 {
        self.ctx.order()
    }

    /// Exponents `i` of the triples, in block order.
    pub fn triples(&self) -> &[u32] {
        &self.triples
    }

    pub fn seeds(&self) -> &[SeedPair] {
        &self.seeds
    }

    pub fn num_triples(&self) -> usize {
        self.triples.len()
    }

    pub fn num_sixtuples(&self) -> usize {
        self.seeds.len() * self.order() as usize
    }

    pub fn num_blocks(&self) -> usize {
        self.num_triples() + self.num_sixtuples()
    }

    pub fn sixtuple_id(&self, seed: usize, mult: u32) -> usize {
        self.num_triples() + seed * self.order() as usize + mult as usize
    }

    pub fn block(&self, id: usize) -> Option<PartitionBlock> {
        if id < self.num_triples() {
            return Some(PartitionBlock::Triple { exp: self.triples[id] });
        }
        let k = id - self.num_triples();
        let n = self.order() as usize;
        (k < self.num_sixtuples()).then(|| PartitionBlock::Sixtuple { seed: k / n, mult: (k % n) as u32 })
    }

    pub fn blocks(&self) -> impl Iterator<Item = PartitionBlock> + '_ {
        (0..self.num_blocks()).filter_map(move |id| self.block(id))
    }

    /// Elements of a block in role order: `[a, 2a, 3a]` or `[A, B, A+B, -A, -B, -(A+B)]`
    /// scaled by `xi^mult`.
    pub fn block_elements(&self, block: PartitionBlock) -> BlockElements {
        let mut out = BlockElements::new();
        match block {
            PartitionBlock::Triple { exp } => {
                let a = self.ctx.xi_pow(i64::from(exp));
                out.extend([a, a.double(), -a]);
            }
            PartitionBlock::Sixtuple { seed, mult } => {
                out.extend(self.members[seed].iter().map(|&m| self.ctx.mul_xi_pow(m, mult)));
            }
        }
        out
    }

    /// Roles matching [`RingPartition::block_elements`] order.
    pub fn block_roles(block: PartitionBlock) -> ArrayVec<Role, 6> {
        match block {
            PartitionBlock::Triple { .. } => {
                (1..=3).map(|scalar| Role::Triple { scalar }).collect()
            }
            PartitionBlock::Sixtuple { .. } => (0..6).map(Role::from_member_index).collect(),
        }
    }

    /// Block id and role of a nonzero element; `None` for zero or uncovered elements.
    pub fn locate(&self, e: RingElement) -> Option<(usize, Role)> {
        let ctx = &*self.ctx;
        let triple = |x: u32, scalar: u8| {
            let slot = *self.triple_slot.get(x as usize)?;
            (slot != NONE).then_some((slot as usize, Role::Triple { scalar }))
        };
        match ctx.teich_decompose(e) {
            (TeichExp::Zero, TeichExp::Zero) => None,
            (TeichExp::Pow(x), TeichExp::Zero) => triple(x, 1),
            (TeichExp::Zero, TeichExp::Pow(y)) => triple(y, 2),
            (TeichExp::Pow(x), TeichExp::Pow(y)) if x == y => triple(x, 3),
            _ => {
                let (i, j) = ctx.ij_coords(e).ok()?;
                let owner = self.j_owner[j as usize];
                if owner == NONE {
                    return None;
                }
                let (p, r) = (owner as usize / 6, owner as usize % 6);
                let n = ctx.order();
                let t = (i + n - self.member_i[p][r]) % n;
                Some((self.sixtuple_id(p, t), Role::from_member_index(r)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(delta: u32) -> RingPartition {
        assemble_partition(Arc::new(RingContext::new(delta).unwrap())).unwrap()
    }

    #[test]
    fn counts_small() {
        let p = part(3);
        assert_eq!((p.num_triples(), p.num_sixtuples()), (7, 7));
        let p = part(5);
        assert_eq!((p.num_triples(), p.num_sixtuples()), (31, 155));
        let p = part(7);
        assert_eq!((p.num_triples(), p.num_sixtuples()), (127, 2667));
    }

    #[test]
    fn locate_agrees_with_enumeration() {
        let p = part(5);
        for block in p.blocks() {
            let id = match block {
                PartitionBlock::Triple { exp } => exp as usize,
                PartitionBlock::Sixtuple { seed, mult } => p.sixtuple_id(seed, mult),
            };
            let roles = RingPartition::block_roles(block);
            for (e, role) in p.block_elements(block).into_iter().zip(roles) {
                assert_eq!(p.locate(e), Some((id, role)));
            }
        }
        assert_eq!(p.locate(RingElement::ZERO), None);
    }

    #[test]
    fn block_shapes() {
        let p = part(3);
        let b = p.block_elements(PartitionBlock::Triple { exp: 2 });
        assert_eq!(b[1], b[0].double());
        assert_eq!(b[2], -b[0]);
        let s = p.block_elements(PartitionBlock::Sixtuple { seed: 0, mult: 4 });
        assert_eq!(s[2], s[0] + s[1]);
        assert_eq!(s[3], -s[0]);
        assert_eq!(p.block(p.num_blocks()), None);
    }
}
