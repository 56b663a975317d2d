use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::CheckRecord;
use crate::doob::{CheckMatrix, DoobVertex, ErrorPattern, FrobeniusOutcome, Permutation};
use crate::galois_ring::RingElement;
use crate::partition::RingPartition;

const NO_OWNER: u32 = u32::MAX;

/// Independent generator per trial so parallel sweeps stay reproducible.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn pattern_syndromes(h: &CheckMatrix) -> Vec<RingElement> {
    let p = h.params();
    (0..p.weight_one_count())
        .into_par_iter()
        .map(|k| h.pattern_syndrome(&p.weight_one_pattern(k)))
        .collect()
}

/// `delta x (2m+n)` with `1 + 6m + 3n = 4^delta`.
pub fn verify_matrix_shape(h: &CheckMatrix) -> CheckRecord {
    let p = *h.params();
    let delta = p.delta;
    CheckRecord::timed("matrix_shape", delta, format!("D({},{})", p.m, p.n), |rec| {
        let n = (1u64 << delta) - 1;
        let (rows, cols) = h.dims();
        rec.expect_count("rows", rows as u64, u64::from(delta));
        rec.expect_count("cols", cols as u64, ((1u64 << (2 * delta)) - 1) / 3);
        rec.expect_count("m", p.m as u64, n * (n - 1) / 6);
        rec.expect_count("n", p.n as u64, n);
        rec.expect_count("ball_size", p.ball_size() as u64, 1 << (2 * delta));
        rec.note(format!("D({},{}), matrix {rows}x{cols}", p.m, p.n));
    })
}

/// The `6m + 3n` weight-1 syndromes are nonzero, pairwise distinct and, with 0, exhaust
/// the ring.
pub fn verify_weight_one_syndromes(h: &CheckMatrix) -> CheckRecord {
    let p = *h.params();
    let delta = p.delta;
    CheckRecord::timed("weight_one_syndromes", delta, "all weight-1 patterns", |rec| {
        let syn = pattern_syndromes(h);
        let mut owner = vec![NO_OWNER; 1 << (2 * delta)];
        let mut zero = 0u64;
        let mut repeated = 0u64;
        for (k, s) in syn.iter().enumerate() {
            if s.is_zero() {
                zero += 1;
                rec.fail(format!("{} has zero syndrome", p.weight_one_pattern(k)));
                continue;
            }
            let slot = &mut owner[s.index(delta)];
            if *slot != NO_OWNER {
                repeated += 1;
                rec.fail(format!(
                    "{} and {} share syndrome {s:?}",
                    p.weight_one_pattern(*slot as usize),
                    p.weight_one_pattern(k)
                ));
            } else {
                *slot = k as u32;
            }
        }
        let distinct = owner.iter().filter(|&&o| o != NO_OWNER).count() as u64;
        rec.expect_count("patterns", syn.len() as u64, (1 << (2 * delta)) - 1);
        rec.count("zero", zero);
        rec.count("repeated", repeated);
        rec.expect_count("distinct_plus_zero", distinct + 1, 1 << (2 * delta));
    })
}

/// No nonzero word of Doob weight 1 or 2 has zero syndrome.
///
/// Weight-2 words are the 9 distance-2 differences inside a Shrikhande pair and all sums
/// of two weight-1 patterns on different coordinates. With `pairwise` every such sum is
/// formed explicitly; otherwise each `-s(e)` is looked up in a table of weight-1 syndromes.
pub fn verify_min_weight(h: &CheckMatrix, pairwise: bool) -> CheckRecord {
    let p = *h.params();
    let delta = p.delta;
    let scope = if pairwise { "explicit pairs" } else { "syndrome table" };
    CheckRecord::timed("min_weight", delta, scope, |rec| {
        let syn = pattern_syndromes(h);
        let coord = |k: usize| p.weight_one_pattern(k).doob_coordinate(&p);
        let w = syn.len() as u64;

        if let Some(k) = (0..syn.len()).find(|&k| syn[k].is_zero()) {
            rec.fail(format!("weight-1 word {} is a codeword", p.weight_one_pattern(k)));
        }

        let far: Vec<(u8, u8)> = (0..4)
            .flat_map(|x| (0..4).map(move |y| (x, y)))
            .filter(|&(x, y)| crate::doob::shrikhande_distance(x, y) == 2)
            .collect();
        let in_pair = (0..p.m)
            .flat_map(|pair| far.iter().map(move |&diff| ErrorPattern::Shrikhande { pair, diff }))
            .find(|e| h.pattern_syndrome(e).is_zero());
        if let Some(e) = in_pair {
            rec.fail(format!("weight-2 word {e} is a codeword"));
        }
        rec.count("in_pair_weight2", (far.len() * p.m) as u64);

        let bad_pair = if pairwise {
            (0..syn.len()).find_map(|k| {
                (k + 1..syn.len()).find(|&l| coord(k) != coord(l) && (syn[k] + syn[l]).is_zero()).map(|l| (k, l))
            })
        } else {
            let mut owner = vec![NO_OWNER; 1 << (2 * delta)];
            let mut clash = None;
            for (k, s) in syn.iter().enumerate() {
                let slot = &mut owner[s.index(delta)];
                if *slot == NO_OWNER {
                    *slot = k as u32;
                } else if coord(*slot as usize) != coord(k) && clash.is_none() {
                    // e_slot - e_k has weight 2 and zero syndrome
                    clash = Some((*slot as usize, k));
                }
            }
            clash.or_else(|| {
                (0..syn.len()).find_map(|k| {
                    let o = owner[(-syn[k]).index(delta)];
                    (o != NO_OWNER && coord(o as usize) != coord(k)).then_some((k, o as usize))
                })
            })
        };
        if let Some((k, l)) = bad_pair {
            rec.fail(format!(
                "{} and {} combine to a weight-2 codeword",
                p.weight_one_pattern(k),
                p.weight_one_pattern(l)
            ));
        }
        rec.count("weight1", w);
        rec.count("cross_pairs", w * (w - 1) / 2 - 15 * p.m as u64 - 3 * p.n as u64);
    })
}

/// Enumerates the radius-1 ball of random vertices. The count of codewords among the
/// `1 + 6m + 3n` members must be exactly 1, and that codeword must be what `decode` returns.
///
/// Ball members are `v` and `v + e` for every weight-1 `e`; membership in the code is
/// tested by syndrome, using `s(v + e) = s(v) + s(e)`. The unique hit is rebuilt as a
/// vector and its syndrome recomputed from scratch.
pub fn verify_perfect_sampled(h: &CheckMatrix, partition: &RingPartition, trials: usize, seed: u64) -> CheckRecord {
    let p = *h.params();
    CheckRecord::timed("perfect_sampled", p.delta, format!("{trials} random vertices"), |rec| {
        let syn = pattern_syndromes(h);
        rec.expect_count("ball_size", syn.len() as u64 + 1, 1 << (2 * p.delta));
        let outcomes: Vec<Option<String>> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let v = h.random_vertex_with(&mut trial_rng(seed, t));
                ball_check(h, partition, &syn, &v).err()
            })
            .collect();
        let failures = outcomes.iter().filter(|o| o.is_some()).count();
        rec.count("trials", trials as u64);
        rec.count("failures", failures as u64);
        if let Some(w) = outcomes.into_iter().flatten().next() {
            rec.fail(w);
        }
    })
}

fn ball_check(h: &CheckMatrix, partition: &RingPartition, syn: &[RingElement], v: &DoobVertex) -> Result<(), String> {
    let p = h.params();
    let s = h.syndrome(v).map_err(|e| e.to_string())?.0;
    let mut hits: Vec<Option<usize>> = Vec::new();
    if s.is_zero() {
        hits.push(None);
    }
    hits.extend((0..syn.len()).filter(|&k| (s + syn[k]).is_zero()).map(Some));
    if hits.len() != 1 {
        return Err(format!("vertex {v}: {} codewords in its ball", hits.len()));
    }
    let mut u = v.clone();
    if let Some(k) = hits[0] {
        p.weight_one_pattern(k).apply(p, &mut u);
    }
    if !h.is_codeword(&u).map_err(|e| e.to_string())? || p.distance(v, &u).map_err(|e| e.to_string())? > 1 {
        return Err(format!("vertex {v}: rebuilt neighbor {u} is not a nearby codeword"));
    }
    let decoded = h.decode(partition, v).map_err(|e| format!("vertex {v}: {e}"))?;
    if decoded.codeword != u {
        return Err(format!("vertex {v}: decode gives {}, ball gives {u}", decoded.codeword));
    }
    Ok(())
}

/// `decode(c + e) = c` for weight-1 `e`. Exhaustive over patterns on 100 codewords when
/// there are at most 64 patterns, otherwise `trials` random (codeword, pattern) pairs.
pub fn verify_decoder(h: &CheckMatrix, partition: &RingPartition, trials: usize, seed: u64) -> CheckRecord {
    let p = *h.params();
    let exhaustive = p.weight_one_count() <= 64;
    let scope = if exhaustive {
        "all weight-1 patterns on 100 codewords".to_string()
    } else {
        format!("{trials} random codeword/pattern pairs")
    };
    CheckRecord::timed("decoder", p.delta, scope, |rec| {
        let cases: Vec<(usize, Option<usize>)> = if exhaustive {
            (0..100).flat_map(|c| (0..p.weight_one_count()).map(move |k| (c, Some(k)))).collect()
        } else {
            (0..trials).map(|t| (t, None)).collect()
        };
        let outcomes: Vec<Option<String>> = cases
            .par_iter()
            .map(|&(c, k)| {
                let mut rng = trial_rng(seed, c);
                let codeword = h.random_codeword_with(&mut rng);
                let k = k.unwrap_or_else(|| rng.gen_range(0..p.weight_one_count()));
                let e = p.weight_one_pattern(k);
                let mut v = codeword.clone();
                e.apply(&p, &mut v);
                match h.decode(partition, &v) {
                    Ok(d) if d.codeword == codeword && d.correction == Some(e) => None,
                    Ok(d) => Some(format!("{e} on {codeword}: decoded {} via {:?}", d.codeword, d.correction)),
                    Err(err) => Some(format!("{e} on {codeword}: {err}")),
                }
            })
            .collect();
        let failures = outcomes.iter().filter(|o| o.is_some()).count();
        rec.count("decoded", cases.len() as u64);
        rec.expect_count("recovered", (cases.len() - failures) as u64, cases.len() as u64);
        if let Some(w) = outcomes.into_iter().flatten().next() {
            rec.fail(w);
        }
    })
}

fn check_codeword_images(rec: &mut CheckRecord, h: &CheckMatrix, pi: &Permutation, trials: usize, seed: u64, what: &str) {
    let bad = (0..trials).into_par_iter().find_first(|&t| {
        let c = h.random_codeword(seed.wrapping_add(t as u64));
        !pi.apply(&c).is_ok_and(|img| h.is_codeword(&img).unwrap_or(false))
    });
    rec.count("codewords_mapped", trials as u64);
    if let Some(t) = bad {
        rec.fail(format!("{what} image of codeword {} is not a codeword", h.random_codeword(seed.wrapping_add(t as u64))));
    }
}

/// The `xi` permutation exists, rotates every run of `2^delta - 1` coordinates, and maps
/// codewords to codewords.
pub fn verify_quasicyclic(h: &CheckMatrix, trials: usize, seed: u64) -> CheckRecord {
    let p = *h.params();
    CheckRecord::timed("quasicyclic", p.delta, format!("{trials} codewords"), |rec| {
        let pi = match h.xi_permutation() {
            Ok(pi) => pi,
            Err(e) => return rec.fail(e.to_string()),
        };
        let lengths = pi.cycle_lengths();
        rec.expect_count("cycles", lengths.len() as u64, (p.len() / p.n) as u64);
        if let Some(l) = lengths.iter().find(|&&l| l != p.n) {
            rec.fail(format!("cycle of length {l}"));
        }
        let n = p.n;
        let expected = |k: usize| {
            if k < 2 * p.m {
                let (q, slot) = (k / 2, k % 2);
                2 * ((q / n) * n + (q % n + 1) % n) + slot
            } else {
                2 * p.m + (k - 2 * p.m + 1) % n
            }
        };
        if let Some(k) = (0..p.len()).find(|&k| pi.image(k) != expected(k)) {
            rec.fail(format!("coordinate {k} goes to {}, layout predicts {}", pi.image(k), expected(k)));
        }
        rec.count("order", pi.order());
        check_codeword_images(rec, h, &pi, trials, seed, "xi");
    })
}

/// Group generated by the given permutations, by breadth-first closure; `None` past `limit`.
fn generated_group(gens: &[&Permutation], limit: usize) -> Option<Vec<Permutation>> {
    let id = Permutation::identity(gens.first()?.len());
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    Some(out)
}

/// Frobenius-induced permutation: asserted to exist and preserve the code when `3 ∤ delta`,
/// reported otherwise. For small `delta` the group generated together with the `xi`
/// permutation is enumerated and its order and largest element order are recorded.
pub fn verify_frobenius_permutation(h: &CheckMatrix, trials: usize, seed: u64) -> CheckRecord {
    let p = *h.params();
    let delta = p.delta;
    let asserted = !delta.is_multiple_of(3);
    CheckRecord::timed("frobenius_permutation", delta, format!("{trials} codewords"), |rec| {
        match h.frobenius_permutation() {
            FrobeniusOutcome::Present(pi) => {
                rec.count("order", pi.order());
                check_codeword_images(rec, h, &pi, trials, seed, "frobenius");
                if delta <= 7 {
                    if let Ok(xi) = h.xi_permutation() {
                        if let Some(group) = generated_group(&[&xi, &pi], 4 * p.n * delta as usize) {
                            let max_order = group.iter().map(Permutation::order).max().unwrap_or(1);
                            rec.expect_count("group_order", group.len() as u64, (p.n * delta as usize) as u64);
                            rec.count("max_element_order", max_order);
                        }
                    }
                }
                if !asserted {
                    rec.observe("3 | delta, not asserted; present: yes".into());
                }
            }
            FrobeniusOutcome::Absent { column, image } => {
                let msg = format!("column {column} maps to {image:?}, outside the column layout");
                if asserted {
                    rec.fail(msg);
                } else {
                    rec.observe(format!("3 | delta, not asserted; present: no ({msg})"));
                }
            }
        }
    })
}

/// Weight-3 codewords supported on three distinct K4 coordinates, as
/// `(order 2, order 4)` counts. Each unordered triple is found from its two smallest
/// coordinates with the third solved for.
pub fn weight3_census(h: &CheckMatrix) -> (u64, u64) {
    let p = *h.params();
    let base = p.hamming_index(0);
    let cols = &h.columns()[base..base + p.n];
    let mut multiple: HashMap<RingElement, (usize, u8)> = HashMap::with_capacity(3 * p.n);
    for (k, &c) in cols.iter().enumerate() {
        for v in 1..=3 {
            multiple.entry(c.scalar_mul(v)).or_insert((k, v));
        }
    }
    (0..p.n)
        .into_par_iter()
        .map(|k1| {
            let mut counts = (0u64, 0u64);
            for k2 in k1 + 1..p.n {
                for v1 in 1..=3u8 {
                    for v2 in 1..=3u8 {
                        let need = -(cols[k1].scalar_mul(v1) + cols[k2].scalar_mul(v2));
                        if let Some(&(k3, v3)) = multiple.get(&need) {
                            if k3 > k2 {
                                if v1 == 2 && v2 == 2 && v3 == 2 {
                                    counts.0 += 1;
                                } else {
                                    counts.1 += 1;
                                }
                            }
                        }
                    }
                }
            }
            counts
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// Census equals `(m, 0)`.
pub fn verify_weight3_census(h: &CheckMatrix) -> CheckRecord {
    let p = *h.params();
    CheckRecord::timed("weight3_census", p.delta, "K4 coordinates", |rec| {
        let (two, four) = weight3_census(h);
        rec.expect_count("order2", two, p.m as u64);
        rec.expect_count("order4", four, 0);
    })
}
