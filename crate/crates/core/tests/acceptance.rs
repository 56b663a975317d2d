//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Runs without the libtest harness so the lines always reach the terminal:
//! `cargo test -p qcdoob-core --test acceptance`.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use qcdoob_core::doob::CheckMatrix;
use qcdoob_core::partition::{assemble_partition, RingPartition};
use qcdoob_core::verifier::{
    algebra_suite, verify_decoder, verify_invariance, verify_partition, verify_perfect_sampled, verify_coset_divisibility,
    verify_quasicyclic, verify_weight_one_syndromes, weight3_census, Budget, CheckRecord, RingMap, Status,
};
use qcdoob_core::RingContext;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Built {
    partition: RingPartition,
    h: CheckMatrix,
    elapsed: Duration,
}

fn build(delta: u32) -> Built {
    let start = Instant::now();
    let ctx = Arc::new(RingContext::new(delta).expect("supported delta"));
    let partition = assemble_partition(ctx).expect("construction succeeds");
    let h = CheckMatrix::from_partition(&partition);
    Built { partition, h, elapsed: start.elapsed() }
}

fn require(rec: &CheckRecord) -> Result<(), String> {
    match rec.status() {
        Status::Fail => Err(format!(
            "{} at delta {}: {}",
            rec.name(),
            rec.delta(),
            rec.witness().unwrap_or("no witness")
        )),
        _ => Ok(()),
    }
}

fn require_pass(rec: &CheckRecord) -> Result<(), String> {
    require(rec)?;
    if rec.status() != Status::Pass {
        return Err(format!("{} at delta {} is {:?}, expected pass", rec.name(), rec.delta(), rec.status()));
    }
    Ok(())
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

/// Exact block counts for delta 3..11, with construction time limits.
fn counts(built: &[(u32, Built)]) -> Outcome {
    let expected = [(3, 7, 7), (5, 31, 155), (7, 127, 2667), (9, 511, 43435), (11, 2047, 698027)];
    let mut parts = Vec::new();
    for ((delta, b), &(d, triples, sixtuples)) in built.iter().zip(&expected) {
        assert_eq!(*delta, d);
        let got = (b.partition.num_triples(), b.partition.num_sixtuples());
        if got != (triples, sixtuples) {
            return Err(format!("delta {d}: {got:?}, expected ({triples}, {sixtuples})"));
        }
        for rec in verify_partition(&b.partition) {
            require_pass(&rec)?;
        }
        let limit = if d <= 7 { Duration::from_secs(1) } else { Duration::from_secs(120) };
        if b.elapsed >= limit {
            return Err(format!("delta {d}: construction took {}, limit {}", secs(b.elapsed), secs(limit)));
        }
        parts.push(format!("{d}:({triples},{sixtuples}) in {}", secs(b.elapsed)));
    }
    Ok(parts.join(", "))
}

fn xi_invariance(built: &[(u32, Built)]) -> Outcome {
    let mut blocks = 0;
    for (_, b) in built {
        let rec = verify_invariance(&b.partition, RingMap::Xi);
        require_pass(&rec)?;
        blocks += rec.get("blocks").unwrap_or(0);
    }
    Ok(format!("{blocks} blocks over delta 3..11 map to blocks"))
}

fn frobenius_invariance(built: &[(u32, Built)]) -> Outcome {
    let mut parts = Vec::new();
    let big = build(13);
    let all = built.iter().map(|(d, b)| (*d, &b.partition)).chain(std::iter::once((13, &big.partition)));
    for (delta, partition) in all {
        let rec = verify_invariance(partition, RingMap::Frobenius);
        if delta % 3 == 0 {
            require(&rec)?;
            if rec.status() != Status::Observed {
                return Err(format!("delta {delta} must be reported as observed, got {:?}", rec.status()));
            }
            let invariant = rec.get("non_invariant") == Some(0);
            parts.push(format!("{delta}:observed {}", if invariant { "invariant" } else { "not invariant" }));
        } else {
            require_pass(&rec)?;
            parts.push(format!("{delta}:holds"));
        }
    }
    Ok(parts.join(", "))
}

fn matrix_sizes(built: &[(u32, Built)]) -> Outcome {
    let expected = [(3, 7, 7, 3, 21), (5, 155, 31, 5, 341), (7, 2667, 127, 7, 5461)];
    let mut parts = Vec::new();
    for &(delta, m, n, rows, cols) in &expected {
        let h = &built.iter().find(|(d, _)| *d == delta).unwrap().1.h;
        let p = h.params();
        if (p.m, p.n) != (m, n) || h.dims() != (rows, cols) {
            return Err(format!("delta {delta}: D({},{}) {:?}, expected D({m},{n}) ({rows}, {cols})", p.m, p.n, h.dims()));
        }
        parts.push(format!("D({m},{n}) {rows}x{cols}"));
    }
    Ok(parts.join(", "))
}

fn quasicyclic(built: &[(u32, Built)]) -> Outcome {
    let mut parts = Vec::new();
    for (delta, b) in built.iter().filter(|(d, _)| *d <= 9) {
        let rec = verify_quasicyclic(&b.h, 1000, 0);
        require_pass(&rec)?;
        parts.push(format!("{delta}:{} cycles of {}", rec.get("cycles").unwrap_or(0), b.h.params().n));
    }
    Ok(format!("{}; 1000 codewords each map to codewords", parts.join(", ")))
}

fn perfectness(built: &[(u32, Built)]) -> Outcome {
    let mut parts = Vec::new();
    for (delta, b) in built.iter().filter(|(d, _)| *d <= 7) {
        let rec = verify_weight_one_syndromes(&b.h);
        require_pass(&rec)?;
        parts.push(format!("{delta}:{} syndromes", rec.get("patterns").unwrap_or(0)));
    }
    let start = Instant::now();
    for (delta, trials) in [(3, 10_000), (5, 1_000)] {
        let b = &built.iter().find(|(d, _)| *d == delta).unwrap().1;
        let rec = verify_perfect_sampled(&b.h, &b.partition, trials, 0);
        require_pass(&rec)?;
        if rec.get("trials") != Some(trials as u64) || rec.get("failures") != Some(0) {
            return Err(format!("delta {delta}: counts {:?}", rec.counts()));
        }
        parts.push(format!("{delta}:{trials} balls"));
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("ball sampling took {}", secs(elapsed)));
    }
    Ok(format!("{} in {}", parts.join(", "), secs(elapsed)))
}

fn decoder(built: &[(u32, Built)]) -> Outcome {
    let mut parts = Vec::new();
    for (delta, trials) in [(3, 100), (5, 1_000), (7, 1_000)] {
        let b = &built.iter().find(|(d, _)| *d == delta).unwrap().1;
        let rec = verify_decoder(&b.h, &b.partition, trials, 0);
        require_pass(&rec)?;
        let (decoded, recovered) = (rec.get("decoded").unwrap_or(0), rec.get("recovered").unwrap_or(0));
        if decoded == 0 || decoded != recovered {
            return Err(format!("delta {delta}: recovered {recovered}/{decoded}"));
        }
        if delta == 3 && decoded != 100 * 63 {
            return Err(format!("delta 3 must cover 100 codewords x 63 patterns, got {decoded}"));
        }
        parts.push(format!("{delta}:{recovered}/{decoded}"));
    }
    Ok(format!("{}, rate 1.0", parts.join(", ")))
}

fn census(built: &[(u32, Built)]) -> Outcome {
    let mut parts = Vec::new();
    for (delta, want) in [(3, (7, 0)), (5, (155, 0)), (7, (2667, 0))] {
        let b = &built.iter().find(|(d, _)| *d == delta).unwrap().1;
        let start = Instant::now();
        let got = weight3_census(&b.h);
        let elapsed = start.elapsed();
        if got != want {
            return Err(format!("delta {delta}: {got:?}, expected {want:?}"));
        }
        if delta == 7 && elapsed >= Duration::from_secs(30) {
            return Err(format!("delta 7 census took {}", secs(elapsed)));
        }
        parts.push(format!("{delta}:{got:?} in {}", secs(elapsed)));
    }
    Ok(parts.join(", "))
}

fn coset_divisibility() -> Outcome {
    let deltas: Vec<u32> = (3..=23).step_by(2).collect();
    for &delta in &deltas {
        require_pass(&verify_coset_divisibility(delta))?;
    }
    Ok(format!("3 | N_s * s for s > 2 at every odd delta in {:?}", deltas))
}

fn algebra(built: &[(u32, Built)]) -> Outcome {
    let mut parts = Vec::new();
    for delta in [3, 5, 7, 9, 11, 13] {
        let budget = if delta <= 5 { Budget::Exhaustive } else { Budget::Random(100_000) };
        let owned;
        let ctx = match built.iter().find(|(d, _)| *d == delta) {
            Some((_, b)) => b.partition.ctx(),
            None => {
                owned = Arc::new(RingContext::new(delta).unwrap());
                &owned
            }
        };
        let recs = algebra_suite(ctx, budget, 0);
        for rec in &recs {
            require_pass(rec)?;
        }
        let cases: u64 = recs.iter().filter_map(|r| r.get("cases")).sum();
        parts.push(format!("{delta}:{cases}"));
    }
    Ok(format!("cases per delta {} (exhaustive at 3, 5)", parts.join(", ")))
}

fn main() -> ExitCode {
    let built: Vec<(u32, Built)> = [3, 5, 7, 9, 11].into_iter().map(|d| (d, build(d))).collect();
    let criteria: [Criterion; 10] = [
        ("partition existence and counts", Box::new(|| counts(&built))),
        ("xi invariance", Box::new(|| xi_invariance(&built))),
        ("frobenius invariance", Box::new(|| frobenius_invariance(&built))),
        ("code parameters", Box::new(|| matrix_sizes(&built))),
        ("quasicyclicity", Box::new(|| quasicyclic(&built))),
        ("perfectness", Box::new(|| perfectness(&built))),
        ("decoder", Box::new(|| decoder(&built))),
        ("weight-3 census", Box::new(|| census(&built))),
        ("coset divisibility", Box::new(coset_divisibility)),
        ("algebra kernel", Box::new(|| algebra(&built))),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS criterion {} ({title}) [{}]: {detail}", k + 1, secs(start.elapsed())),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({title}) [{}]: {why}", k + 1, secs(start.elapsed()));
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
