//! 2-cyclotomic cosets modulo `2^delta - 1` and the matching `A -> -A` on them.
//!
//! For `A = xi^i (1 + 2 xi^j)` the element `-A` has the same `i` and a `j` satisfying
//! `xi_bar^j(-A) = 1 + xi_bar^j(A)`. That map sends whole cosets to cosets, never fixes one
//! and is an involution; it is what pairs the cosets into `±`-classes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::galois_ring::RingContext;
use crate::{Error, Result};

/// Cosets of `{0, ..., 2^delta - 2}` under multiplication by 2.
///
/// Coset ids follow the order of their minimal elements, so id 0 is always `{0}`.
#[derive(Clone, Debug)]
pub struct CosetTable {
    delta: u32,
    modulus: u32,
    cosets: Vec<Vec<u32>>,
    member_of: Vec<u32>,
    /// `s -> ids of the cosets of size s`, without `{0}`.
    by_size: BTreeMap<u32, Vec<usize>>,
}

impl CosetTable {
    /// Works for any `delta` in `1..=31`; only modular arithmetic is involved.
    pub fn build(delta: u32) -> Result<Self> {
        if delta == 0 || delta > 31 {
            return Err(Error::Parameter(format!("delta {delta} out of range for coset tables")));
        }
        let modulus = ((1u64 << delta) - 1) as u32;
        let mut member_of = vec![u32::MAX; modulus as usize];
        let mut cosets = Vec::new();
        let mut by_size: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for r in 0..modulus {
            if member_of[r as usize] != u32::MAX {
                continue;
            }
            let id = cosets.len();
            let mut coset = Vec::new();
            let mut x = r;
            loop {
                member_of[x as usize] = id as u32;
                coset.push(x);
                x = ((u64::from(x) * 2) % u64::from(modulus)) as u32;
                if x == r {
                    break;
                }
            }
            coset.sort_unstable();
            if r != 0 {
                by_size.entry(coset.len() as u32).or_default().push(id);
            }
            cosets.push(coset);
        }
        Ok(CosetTable { delta, modulus, cosets, member_of, by_size })
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Sorted members of coset `id`.
    pub fn coset(&self, id: usize) -> &[u32] {
        &self.cosets[id]
    }

    /// Canonical representative, the minimal element.
    pub fn leader(&self, id: usize) -> u32 {
        self.cosets[id][0]
    }

    pub fn coset_of(&self, residue: u32) -> usize {
        self.member_of[(residue % self.modulus) as usize] as usize
    }

    pub fn size(&self, id: usize) -> u32 {
        self.cosets[id].len() as u32
    }

    /// Ids of the cosets of size `s`, excluding `{0}`.
    pub fn cos(&self, s: u32) -> &[usize] {
        self.by_size.get(&s).map_or(&[], Vec::as_slice)
    }

    /// `N_s = |Cos(s)|`.
    pub fn count(&self, s: u32) -> usize {
        self.cos(s).len()
    }

    /// Sizes that occur among the nonzero cosets, ascending.
    pub fn sizes(&self) -> impl Iterator<Item = u32> + '_ {
        self.by_size.keys().copied()
    }

    /// `(s, N_s)` for every occurring size.
    pub fn census(&self) -> Vec<(u32, usize)> {
        self.by_size.iter().map(|(&s, ids)| (s, ids.len())).collect()
    }

    /// Checks `3 | N_s * s` for every `s > 2` with `N_s > 0`.
    pub fn check_prop1(&self) -> DivisibilityReport {
        let rows = self.census();
        let violations = rows
            .iter()
            .filter(|&&(s, n)| s > 2 && !(n * s as usize).is_multiple_of(3))
            .map(|&(s, _)| s)
            .collect();
        DivisibilityReport { delta: self.delta, rows, violations }
    }
}

/// Outcome of the `3 | N_s * s` check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub delta: u32,
    pub rows: Vec<(u32, usize)>,
    pub violations: Vec<u32>,
}

impl DivisibilityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Coset of `log(1 + xi_bar^j)` for `j` the leader of coset `id`.
pub fn neg_partner(ctx: &RingContext, ct: &CosetTable, id: usize) -> Result<usize> {
    partner_via(ctx, ct, ct.leader(id))
}

/// Coset of `log(1 + xi_bar^j)` computed from an arbitrary residue `j`.
pub fn partner_via(ctx: &RingContext, ct: &CosetTable, j: u32) -> Result<usize> {
    if j.is_multiple_of(ct.modulus()) {
        return Err(Error::Domain("the coset {0} has no partner: 1 + 1 = 0".into()));
    }
    let shifted = ctx.field_pow(i64::from(j)) + crate::FieldElement::ONE;
    Ok(ct.coset_of(ctx.field_log(shifted)?))
}

/// The involution `A -> -A` on nonzero cosets.
#[derive(Clone, Debug)]
pub struct CosetMatching {
    partner: Vec<usize>,
}

impl CosetMatching {
    pub fn build(ctx: &RingContext, ct: &CosetTable) -> Result<Self> {
        if ctx.delta() != ct.delta() {
            return Err(Error::Parameter("ring and coset table disagree on delta".into()));
        }
        let mut partner = vec![usize::MAX; ct.len()];
        for (id, slot) in partner.iter_mut().enumerate().skip(1) {
            *slot = neg_partner(ctx, ct, id)?;
        }
        Ok(CosetMatching { partner })
    }

    pub fn partner(&self, id: usize) -> Result<usize> {
        match self.partner.get(id) {
            Some(&p) if p != usize::MAX => Ok(p),
            _ => Err(Error::Domain(format!("coset {id} has no partner"))),
        }
    }

    /// True iff `id` is the smaller-id coset of its `±`-class.
    pub fn is_canonical(&self, id: usize) -> bool {
        self.partner(id).is_ok_and(|p| id < p)
    }

    /// Canonical coset of each `±`-class of size `s`, ascending.
    pub fn classes(&self, ct: &CosetTable, s: u32) -> Vec<usize> {
        ct.cos(s).iter().copied().filter(|&id| self.is_canonical(id)).collect()
    }

    /// Coset id of the `±`-class containing `id`, i.e. `min(id, partner(id))`.
    pub fn class_of(&self, id: usize) -> Result<usize> {
        Ok(id.min(self.partner(id)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_three_cosets() {
        let ct = CosetTable::build(3).unwrap();
        assert_eq!(ct.len(), 3);
        assert_eq!(ct.coset(0), &[0]);
        assert_eq!(ct.coset(1), &[1, 2, 4]);
        assert_eq!(ct.coset(2), &[3, 5, 6]);
        assert_eq!(ct.count(3), 2);
        assert_eq!(ct.count(1), 0);
    }

    #[test]
    fn delta_nine_sizes() {
        let ct = CosetTable::build(9).unwrap();
        assert_eq!(ct.sizes().collect::<Vec<_>>(), vec![3, 9]);
        assert_eq!(ct.count(3), 2);
        assert_eq!(ct.count(9), 56);
    }

    #[test]
    fn divisibility_small() {
        let r = CosetTable::build(5).unwrap().check_prop1();
        assert_eq!(r.rows, vec![(5, 6)]);
        assert!(r.holds());
    }

    #[test]
    fn partner_of_first_coset() {
        let ctx = RingContext::new(3).unwrap();
        let ct = CosetTable::build(3).unwrap();
        let m = CosetMatching::build(&ctx, &ct).unwrap();
        assert_eq!(m.partner(1).unwrap(), 2);
        assert_eq!(m.partner(2).unwrap(), 1);
        assert!(m.partner(0).is_err());
        assert!(neg_partner(&ctx, &ct, 0).is_err());
        assert_eq!(m.classes(&ct, 3), vec![1]);
    }
}
