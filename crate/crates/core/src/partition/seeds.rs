//! Seed pairs `(A, B)` whose `j`-coordinates tile `{1, ..., 2^delta - 2}`.
//!
//! Cosets of size `s` are handled in two ways.
//!
//! * `3 ∤ s`: the `±`-classes of size `s` are grouped into triples `(A, B, C)`. With
//!   `A = 1 + 2a`, `B = x(1 + 2b)` the requirement `j(A+B) = log c` becomes
//!   `T^2 + T = (a+c)(b+c)` for `T = (b+c) sqrt(x)` in the residue field. When that has
//!   trace 1, replacing `b` and/or `c` by `b+1`, `c+1` (moving to the partner coset) gives
//!   a solvable equation. Frobenius levels `0..s` then cover each coset.
//! * `3 | s`: a single class `±A` is split with `j(B) = 2^d j(A)`, `j(±(A+B)) = 4^d j(A)`
//!   for `d = s/3`, and Frobenius levels `0..d`.
//!
//! Every postcondition is recomputed from the resulting ring elements.

use std::sync::Arc;

use super::{Origin, RingPartition, SeedPair, Subcase};
use crate::cyclotomic::{CosetMatching, CosetTable};
use crate::galois_ring::{pow2_mod, FieldElement, RingContext};
use crate::{Error, Result};

/// Solves `T^2 + T = (a+c)(b+c)` and returns `x_bar = T^2 / (b+c)^2`.
fn solve_multiplier(
    ctx: &RingContext,
    alpha: FieldElement,
    beta: FieldElement,
    gamma: FieldElement,
) -> Result<FieldElement> {
    let bc = beta + gamma;
    let constant = ctx.field_mul(alpha + gamma, bc);
    if constant.is_zero() {
        return Err(Error::Contradiction("quadratic constant (a+c)(b+c) vanished".into()));
    }
    let [t, _] = ctx
        .solve_artin_schreier(constant)
        .ok_or_else(|| Error::Contradiction("selected quadratic has trace 1".into()))?;
    let x = ctx.field_div(ctx.field_square(t), ctx.field_square(bc))?;
    if x == FieldElement::ONE || x.is_zero() {
        return Err(Error::Contradiction(format!("degenerate multiplier {x:?}")));
    }
    Ok(x)
}

/// Finds `(A, B)` with `j(A) = ja`, `j(B)` in the class of `jb` and `j(A+B)` in the class
/// of `jc`, trying no substitution, then `b+1`, then `b+1, c+1`, then `c+1`.
pub fn solve_pair(
    ctx: &RingContext,
    ct: &CosetTable,
    matching: &CosetMatching,
    ja: u32,
    jb: u32,
    jc: u32,
) -> Result<SeedPair> {
    let n = ctx.order();
    let js = [ja, jb, jc];
    if js.iter().any(|&j| j == 0 || j >= n) {
        return Err(Error::Parameter(format!("residues {js:?} must lie in [1, {})", n - 1)));
    }
    let ids = js.map(|j| ct.coset_of(j));
    let size = ct.size(ids[0]);
    if ids.iter().any(|&id| ct.size(id) != size) || size.is_multiple_of(2) {
        return Err(Error::Parameter(format!("cosets of {js:?} must share one odd size")));
    }
    let classes = [
        matching.class_of(ids[0])?,
        matching.class_of(ids[1])?,
        matching.class_of(ids[2])?,
    ];
    if classes[0] == classes[1] || classes[1] == classes[2] || classes[0] == classes[2] {
        return Err(Error::Parameter(format!("residues {js:?} share a ±-class")));
    }

    let alpha = ctx.field_pow(i64::from(ja));
    let beta = ctx.field_pow(i64::from(jb));
    let gamma = ctx.field_pow(i64::from(jc));
    let one = FieldElement::ONE;
    let candidates = [
        (Subcase::Direct, false, false),
        (Subcase::ShiftB, true, false),
        (Subcase::ShiftBoth, true, true),
        (Subcase::ShiftSum, false, true),
    ];
    let (subcase, beta, gamma) = candidates
        .iter()
        .map(|&(sc, sb, sg)| (sc, if sb { beta + one } else { beta }, if sg { gamma + one } else { gamma }))
        .find(|&(_, b, c)| ctx.trace(ctx.field_mul(alpha + c, b + c)) == 0)
        .ok_or_else(|| Error::Contradiction(format!("all four traces are 1 for {js:?}")))?;

    let x = solve_multiplier(ctx, alpha, beta, gamma)?;
    let a = ctx.from_ij(0, ja)?;
    let b = ctx.from_ij(ctx.field_log(x)?, ctx.field_log(beta)?)?;

    let target = ctx.field_log(gamma)?;
    let got_b = ctx.ij_coords(b)?.1;
    let got_sum = ctx.ij_coords(a + b).map_err(|e| Error::Contradiction(format!("A+B: {e}")))?.1;
    if ctx.ij_coords(a)?.1 != ja
        || matching.class_of(ct.coset_of(got_b))? != classes[1]
        || got_sum != target
        || matching.class_of(ct.coset_of(got_sum))? != classes[2]
    {
        return Err(Error::Contradiction(format!("postcondition failed for {js:?} ({subcase:?})")));
    }

    let origin = Origin {
        size,
        classes: classes.iter().map(|&id| ct.leader(id)).collect(),
        subcase,
        level: 0,
    };
    let pair = SeedPair { a, b, origin };
    pair.validate(ctx)?;
    Ok(pair)
}

/// Seeds covering every coset of size `s` when `3 ∤ s`: `N_s / 6` base pairs, each at
/// Frobenius levels `0..s`.
pub fn seeds_for_size_nondiv3(
    ctx: &RingContext,
    ct: &CosetTable,
    matching: &CosetMatching,
    s: u32,
) -> Result<Vec<SeedPair>> {
    if s <= 1 || s.is_multiple_of(3) || s.is_multiple_of(2) {
        return Err(Error::Parameter(format!("size {s} must be odd, > 1 and not divisible by 3")));
    }
    let count = ct.count(s);
    if count == 0 {
        return Err(Error::Parameter(format!("no cosets of size {s}")));
    }
    if !count.is_multiple_of(6) {
        return Err(Error::Invariant(format!("N_{s} = {count} is not divisible by 6")));
    }
    let classes = matching.classes(ct, s);
    let mut out = Vec::with_capacity(count * s as usize / 6);
    for group in classes.chunks_exact(3) {
        let base = solve_pair(ctx, ct, matching, ct.leader(group[0]), ct.leader(group[1]), ct.leader(group[2]))?;
        out.extend((0..s).map(|l| base.at_level(ctx, l)));
    }
    Ok(out)
}

/// Seeds covering `A ∪ -A` for one coset `A` of size `s = 3 d`: `d` pairs at levels `0..d`.
pub fn seeds_for_class_div3(
    ctx: &RingContext,
    ct: &CosetTable,
    matching: &CosetMatching,
    coset: usize,
    d: u32,
) -> Result<Vec<SeedPair>> {
    let s = ct.size(coset);
    if coset == 0 || !s.is_multiple_of(3) || d != s / 3 {
        return Err(Error::Parameter(format!("coset {coset} of size {s} does not match d = {d}")));
    }
    if !matching.is_canonical(coset) {
        return Err(Error::Parameter(format!("coset {coset} is not the canonical member of its class")));
    }
    let n = ctx.order();
    let j = ct.leader(coset);
    let scale = |k: u32| ((u64::from(j) * pow2_mod(k, n)) % u64::from(n)) as u32;
    let y = ctx.field_pow(i64::from(j));
    let y1 = ctx.field_frobenius(y, d);
    let y2 = ctx.field_frobenius(y, 2 * d);
    let t0 = ctx.trace(ctx.field_mul(y1 + y2, y + y2));
    let (subcase, gamma) =
        if t0 == 0 { (Subcase::Div3Plus, y2) } else { (Subcase::Div3Minus, y2 + FieldElement::ONE) };
    if ctx.trace(ctx.field_mul(y + gamma, y1 + gamma)) != 0 {
        return Err(Error::Contradiction(format!("both trace variants are 1 for coset {coset}")));
    }
    let x = solve_multiplier(ctx, y, y1, gamma)?;
    let a = ctx.from_ij(0, j)?;
    let b = ctx.from_ij(ctx.field_log(x)?, scale(d))?;
    let origin = Origin { size: s, classes: vec![j], subcase, level: 0 };
    let base = SeedPair { a, b, origin };

    let mut out = Vec::with_capacity(d as usize);
    for l in 0..d {
        let pair = base.at_level(ctx, l);
        let ja = ctx.ij_coords(pair.a)?.1;
        let jb = ctx.ij_coords(pair.b)?.1;
        let sum = pair.a + pair.b;
        let jsum = match subcase {
            Subcase::Div3Plus => ctx.ij_coords(sum)?.1,
            _ => ctx.ij_coords(-sum)?.1,
        };
        if ja != scale(l) || jb != scale(d + l) || jsum != scale(2 * d + l) {
            return Err(Error::Contradiction(format!(
                "coset {coset} level {l}: j = ({ja}, {jb}, {jsum}) breaks the 2^d relation"
            )));
        }
        pair.validate(ctx)?;
        out.push(pair);
    }
    Ok(out)
}

/// Full partition: all seeds in canonical order (size ascending, class ascending, level
/// ascending), then the `xi`-orbits.
pub fn assemble_partition(ctx: Arc<RingContext>) -> Result<RingPartition> {
    let ct = CosetTable::build(ctx.delta())?;
    let matching = CosetMatching::build(&ctx, &ct)?;
    let mut seeds = Vec::with_capacity(((ctx.order() - 1) / 6) as usize);
    for s in ct.sizes() {
        if s % 3 != 0 {
            seeds.extend(seeds_for_size_nondiv3(&ctx, &ct, &matching, s)?);
        } else {
            for coset in matching.classes(&ct, s) {
                seeds.extend(seeds_for_class_div3(&ctx, &ct, &matching, coset, s / 3)?);
            }
        }
    }
    let triples = (0..ctx.order()).collect();
    let partition = RingPartition::from_parts(ctx, triples, seeds);
    partition.check_seed_coverage()?;
    Ok(partition)
}
