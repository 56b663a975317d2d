use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::report::CheckRecord;
use crate::cyclotomic::{partner_via, CosetMatching, CosetTable};
use crate::galois_ring::{RingContext, RingElement, TeichExp};
use crate::partition::{BlockElements, RingPartition};

/// A candidate partition of the nonzero ring elements: triples first, then sixtuples.
pub trait BlockSet: Sync {
    fn ctx(&self) -> &RingContext;
    fn num_triples(&self) -> usize;
    fn num_sixtuples(&self) -> usize;
    /// Elements in role order: `[a, 2a, 3a]` or `[A, B, A+B, -A, -B, -(A+B)]`.
    fn elements(&self, id: usize) -> BlockElements;
    /// Block containing `e`, if any.
    fn locate(&self, e: RingElement) -> Option<usize>;

    fn num_blocks(&self) -> usize {
        self.num_triples() + self.num_sixtuples()
    }
}

impl BlockSet for RingPartition {
    fn ctx(&self) -> &RingContext {
        RingPartition::ctx(self)
    }

    fn num_triples(&self) -> usize {
        RingPartition::num_triples(self)
    }

    fn num_sixtuples(&self) -> usize {
        RingPartition::num_sixtuples(self)
    }

    fn elements(&self, id: usize) -> BlockElements {
        self.block(id).map(|b| self.block_elements(b)).unwrap_or_default()
    }

    fn locate(&self, e: RingElement) -> Option<usize> {
        RingPartition::locate(self, e).map(|(id, _)| id)
    }
}

/// Blocks held as explicit element lists, e.g. read back from a file or mutated in tests.
#[derive(Clone, Debug)]
pub struct ExplicitBlocks {
    ctx: Arc<RingContext>,
    num_triples: usize,
    blocks: Vec<BlockElements>,
    index: HashMap<RingElement, usize>,
}

impl ExplicitBlocks {
    /// The first block listing an element owns it in the index.
    pub fn new(ctx: Arc<RingContext>, num_triples: usize, blocks: Vec<BlockElements>) -> Self {
        let mut index = HashMap::new();
        for (id, b) in blocks.iter().enumerate() {
            for &e in b {
                index.entry(e).or_insert(id);
            }
        }
        ExplicitBlocks { ctx, num_triples, blocks, index }
    }

    pub fn from_partition(p: &RingPartition) -> Self {
        let blocks = (0..p.num_blocks()).map(|id| BlockSet::elements(p, id)).collect();
        ExplicitBlocks::new(p.ctx().clone(), p.num_triples(), blocks)
    }

    pub fn blocks(&self) -> &[BlockElements] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<BlockElements> {
        self.blocks
    }
}

impl BlockSet for ExplicitBlocks {
    fn ctx(&self) -> &RingContext {
        &self.ctx
    }

    fn num_triples(&self) -> usize {
        self.num_triples
    }

    fn num_sixtuples(&self) -> usize {
        self.blocks.len() - self.num_triples
    }

    fn elements(&self, id: usize) -> BlockElements {
        self.blocks[id].clone()
    }

    fn locate(&self, e: RingElement) -> Option<usize> {
        self.index.get(&e).copied()
    }
}

/// First block (by id) for which `bad` returns a witness, plus how many blocks failed.
fn scan_blocks<B: BlockSet + ?Sized>(set: &B, bad: impl Fn(usize) -> Option<String> + Sync) -> (usize, Option<String>) {
    let failures = (0..set.num_blocks()).into_par_iter().filter(|&id| bad(id).is_some()).count();
    if failures == 0 {
        return (0, None);
    }
    let first = (0..set.num_blocks()).find_map(&bad);
    (failures, first)
}

fn form_error<B: BlockSet + ?Sized>(set: &B, id: usize) -> Option<String> {
    let ctx = set.ctx();
    let e = set.elements(id);
    if id < set.num_triples() {
        if e.len() != 3 {
            return Some(format!("block {id}: triple has {} elements", e.len()));
        }
        if !matches!(ctx.teich_log(e[0]), Some(TeichExp::Pow(_))) {
            return Some(format!("block {id}: {:?} is not a power of xi", e[0]));
        }
        if e[1] != e[0].double() || e[2] != -e[0] {
            return Some(format!("block {id}: {:?} is not {{a, 2a, 3a}}", e.as_slice()));
        }
    } else {
        if e.len() != 6 {
            return Some(format!("block {id}: sixtuple has {} elements", e.len()));
        }
        if let Some(x) = e.iter().find(|x| x.residue().is_zero()) {
            return Some(format!("block {id}: {x:?} is not a unit"));
        }
        let expected = [e[0], e[1], e[0] + e[1], -e[0], -e[1], -(e[0] + e[1])];
        if let Some(k) = (0..6).find(|&k| e[k] != expected[k]) {
            return Some(format!("block {id}: {:?} breaks the ±a, ±b, ±(a+b) form", e[k]));
        }
        for a in 0..6 {
            if e[a + 1..].contains(&e[a]) {
                return Some(format!("block {id}: {:?} repeated", e[a]));
            }
        }
    }
    None
}

/// Counts, block form, disjoint cover of the nonzero elements, and locator agreement.
pub fn verify_partition<B: BlockSet + ?Sized>(set: &B) -> Vec<CheckRecord> {
    let ctx = set.ctx();
    let delta = ctx.delta();
    let n = u64::from(ctx.order());
    let size = ctx.ring_size();
    let scope = format!("GR(4^{delta}), {} blocks", set.num_blocks());
    let mut out = Vec::new();

    out.push(CheckRecord::timed("partition_counts", delta, scope.clone(), |rec| {
        rec.expect_count("triples", set.num_triples() as u64, n);
        rec.expect_count("sixtuples", set.num_sixtuples() as u64, n * (n - 1) / 6);
        let elements: usize = (0..set.num_blocks()).map(|id| set.elements(id).len()).sum();
        rec.expect_count("elements", elements as u64, size as u64 - 1);
    }));

    out.push(CheckRecord::timed("block_form", delta, scope.clone(), |rec| {
        let (failures, witness) = scan_blocks(set, |id| form_error(set, id));
        rec.count("blocks", set.num_blocks() as u64);
        rec.count("malformed", failures as u64);
        if let Some(w) = witness {
            rec.fail(w);
        }
    }));

    out.push(CheckRecord::timed("disjoint_cover", delta, scope.clone(), |rec| {
        let mut seen = vec![0u64; size.div_ceil(64)];
        let mut repeats = 0u64;
        for id in 0..set.num_blocks() {
            for e in set.elements(id) {
                let k = e.index(delta);
                if e.is_zero() {
                    rec.fail(format!("block {id} contains zero"));
                    continue;
                }
                if seen[k / 64] >> (k % 64) & 1 == 1 {
                    repeats += 1;
                    rec.fail(format!("element {e:?} in block {id} is already covered"));
                }
                seen[k / 64] |= 1 << (k % 64);
            }
        }
        let covered: u64 = seen.iter().map(|w| u64::from(w.count_ones())).sum();
        rec.count("repeats", repeats);
        rec.expect_count("covered", covered, size as u64 - 1);
        if let Some(k) = (1..size).find(|&k| seen[k / 64] >> (k % 64) & 1 == 0) {
            rec.fail(format!("element {:?} is not covered", RingElement::from_index(k, delta)));
        }
    }));

    out.push(CheckRecord::timed("locator", delta, scope, |rec| {
        let (failures, witness) = scan_blocks(set, |id| {
            set.elements(id)
                .into_iter()
                .find(|&e| set.locate(e) != Some(id))
                .map(|e| format!("element {e:?} of block {id} locates to {:?}", set.locate(e)))
        });
        rec.count("inconsistent_blocks", failures as u64);
        if let Some(w) = witness {
            rec.fail(w);
        }
    }));
    out
}

/// Seed-level tiling of `{1, ..., 2^delta - 2}` by `j`-values.
pub fn verify_seed_coverage(p: &RingPartition) -> CheckRecord {
    CheckRecord::timed("seed_coverage", p.delta(), format!("{} seeds", p.seeds().len()), |rec| {
        rec.count("seeds", p.seeds().len() as u64);
        if let Err(e) = p.check_seed_coverage() {
            rec.fail(e.to_string());
        }
    })
}

/// Ring automorphisms or scalings applied elementwise to blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingMap {
    Xi,
    Frobenius,
}

impl RingMap {
    pub fn apply(self, ctx: &RingContext, e: RingElement) -> RingElement {
        match self {
            RingMap::Xi => ctx.mul_xi_pow(e, 1),
            RingMap::Frobenius => ctx.frobenius(e),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RingMap::Xi => "xi",
            RingMap::Frobenius => "frobenius",
        }
    }
}

/// Checks that the image of every block is a block. Frobenius invariance is asserted only
/// when `3 ∤ delta`; otherwise the outcome is recorded as observed.
pub fn verify_invariance<B: BlockSet + ?Sized>(set: &B, map: RingMap) -> CheckRecord {
    let ctx = set.ctx();
    let delta = ctx.delta();
    let name = format!("{}_invariance", map.name());
    CheckRecord::timed(&name, delta, format!("{} blocks", set.num_blocks()), |rec| {
        let (failures, witness) = scan_blocks(set, |id| {
            let mut image: Vec<RingElement> = set.elements(id).iter().map(|&e| map.apply(ctx, e)).collect();
            let Some(target) = image.first().and_then(|&e| set.locate(e)) else {
                return Some(format!("image of block {id} starts outside every block"));
            };
            let mut block = set.elements(target).to_vec();
            image.sort_unstable_by_key(|e| e.index(delta));
            block.sort_unstable_by_key(|e| e.index(delta));
            (image != block).then(|| format!("image of block {id} is not block {target}"))
        });
        rec.count("blocks", set.num_blocks() as u64);
        rec.count("non_invariant", failures as u64);
        let asserted = map == RingMap::Xi || !delta.is_multiple_of(3);
        match (asserted, witness) {
            (true, Some(w)) => rec.fail(w),
            (true, None) => {}
            (false, w) => rec.observe(format!(
                "3 | delta, not asserted; invariant: {}{}",
                if failures == 0 { "yes" } else { "no" },
                w.map(|w| format!(" ({w})")).unwrap_or_default()
            )),
        }
    })
}

/// `3 | N_s * s` for every size `s > 2` occurring for `delta`.
pub fn verify_coset_divisibility(delta: u32) -> CheckRecord {
    CheckRecord::timed("coset_divisibility", delta, format!("2-cyclotomic cosets mod 2^{delta}-1"), |rec| {
        match CosetTable::build(delta) {
            Ok(ct) => {
                let report = ct.check_prop1();
                rec.count("sizes", report.rows.len() as u64);
                rec.count("cosets", report.rows.iter().map(|&(_, n)| n as u64).sum());
                if let Some(&s) = report.violations.first() {
                    rec.fail(format!("size {s}: N_s * s not divisible by 3"));
                }
            }
            Err(e) => rec.fail(e.to_string()),
        }
    })
}

/// Coset partition, doubling closure, and the negation matching: involutive, without fixed
/// points, size-preserving and independent of the representative.
pub fn verify_cosets(ctx: &RingContext) -> CheckRecord {
    let delta = ctx.delta();
    CheckRecord::timed("coset_matching", delta, "all nonzero cosets", |rec| {
        let ct = match CosetTable::build(delta) {
            Ok(ct) => ct,
            Err(e) => return rec.fail(e.to_string()),
        };
        let n = ct.modulus();
        let mut hits = vec![0u32; n as usize];
        for id in 0..ct.len() {
            for &r in ct.coset(id) {
                hits[r as usize] += 1;
                if ct.coset_of(2 * r % n) != id {
                    rec.fail(format!("coset {id} is not closed under doubling at {r}"));
                }
            }
        }
        if let Some(r) = hits.iter().position(|&h| h != 1) {
            rec.fail(format!("residue {r} lies in {} cosets", hits[r]));
        }
        let matching = match CosetMatching::build(ctx, &ct) {
            Ok(m) => m,
            Err(e) => return rec.fail(e.to_string()),
        };
        let mut classes = 0u64;
        for id in 1..ct.len() {
            let p = match matching.partner(id) {
                Ok(p) => p,
                Err(e) => {
                    rec.fail(e.to_string());
                    continue;
                }
            };
            if p == id {
                rec.fail(format!("coset {id} is its own partner"));
            }
            if matching.partner(p).ok() != Some(id) {
                rec.fail(format!("partner of partner of coset {id} is not {id}"));
            }
            if ct.size(p) != ct.size(id) {
                rec.fail(format!("coset {id} has size {}, its partner {}", ct.size(id), ct.size(p)));
            }
            if let Some(&j) = ct.coset(id).iter().find(|&&j| partner_via(ctx, &ct, j).ok() != Some(p)) {
                rec.fail(format!("partner of coset {id} computed from {j} differs"));
            }
            classes += u64::from(matching.is_canonical(id));
        }
        rec.count("cosets", ct.len() as u64 - 1);
        rec.count("classes", classes);
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::assemble_partition;
    use crate::verifier::Status;

    fn partition(delta: u32) -> RingPartition {
        assemble_partition(Arc::new(RingContext::new(delta).unwrap())).unwrap()
    }

    #[test]
    fn valid_partitions_pass() {
        for delta in [3, 5] {
            let p = partition(delta);
            for rec in verify_partition(&p) {
                assert_eq!(rec.status(), Status::Pass, "{rec:?}");
            }
            assert_eq!(verify_invariance(&p, RingMap::Xi).status(), Status::Pass);
        }
        assert_eq!(verify_invariance(&partition(5), RingMap::Frobenius).status(), Status::Pass);
        assert_eq!(verify_invariance(&partition(3), RingMap::Frobenius).status(), Status::Observed);
    }

    #[test]
    fn explicit_copy_passes() {
        let blocks = ExplicitBlocks::from_partition(&partition(3));
        assert!(verify_partition(&blocks).iter().all(|r| r.status() == Status::Pass));
        assert_eq!(verify_invariance(&blocks, RingMap::Xi).status(), Status::Pass);
    }

    #[test]
    fn corrupted_element_is_the_witness() {
        let p = partition(3);
        let ctx = p.ctx().clone();
        let mut blocks = ExplicitBlocks::from_partition(&p).into_blocks();
        // move an element of block 9 onto one that block 0 already holds
        let stolen = blocks[0][0];
        blocks[9][1] = stolen;
        let set = ExplicitBlocks::new(ctx, 7, blocks);
        let recs = verify_partition(&set);
        let cover = recs.iter().find(|r| r.name() == "disjoint_cover").unwrap();
        assert_eq!(cover.status(), Status::Fail);
        assert!(cover.witness().unwrap().contains(&format!("{stolen:?} in block 9")), "{cover:?}");
        let form = recs.iter().find(|r| r.name() == "block_form").unwrap();
        assert_eq!(form.status(), Status::Fail);
        assert!(form.witness().unwrap().starts_with("block 9"));
    }

    #[test]
    fn cosets_and_divisibility() {
        for delta in [3, 5, 7, 9] {
            let ctx = RingContext::new(delta).unwrap();
            assert_eq!(verify_cosets(&ctx).status(), Status::Pass);
            assert_eq!(verify_coset_divisibility(delta).status(), Status::Pass);
        }
    }
}
