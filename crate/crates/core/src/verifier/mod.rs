//! Executable checks for every structural claim: the partition, its invariances, the coset
//! divisibility property, minimum weight, perfectness, decoding and the weight-3 census.
//!
//! Each check produces a [`CheckRecord`]; a failing record always carries a witness.

mod algebra;
mod code;
mod report;
mod structure;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::doob::CheckMatrix;
use crate::galois_ring::RingContext;
use crate::partition::{assemble_partition, RingPartition};
use crate::{Error, Result};

pub use algebra::{algebra_suite, Budget};
pub use code::{
    verify_decoder, verify_frobenius_permutation, verify_matrix_shape, verify_min_weight,
    verify_perfect_sampled, verify_quasicyclic, verify_weight3_census, verify_weight_one_syndromes,
    weight3_census,
};
pub use report::{CheckRecord, Status, VerifyReport};
pub use structure::{
    verify_cosets, verify_invariance, verify_partition, verify_coset_divisibility, verify_seed_coverage, BlockSet,
    ExplicitBlocks, RingMap,
};

/// Verification depth.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    #[default]
    Fast,
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            _ => Err(Error::Parse(format!("unknown level '{s}' (expected fast or full)"))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Fast => "fast",
            Level::Full => "full",
        })
    }
}

/// Random vertices for the ball-enumeration check.
pub fn perfect_trials(delta: u32) -> usize {
    match delta {
        3 => 10_000,
        5 => 1_000,
        7 => 100,
        _ => 10,
    }
}

/// Codewords pushed through the coordinate permutations.
pub fn permutation_trials(delta: u32, level: Level) -> usize {
    match (level, delta) {
        (_, 11..) => 10,
        (Level::Fast, _) => 100,
        (Level::Full, _) => 1_000,
    }
}

fn algebra_budget(delta: u32, level: Level) -> Budget {
    match level {
        Level::Full if delta <= 5 => Budget::Exhaustive,
        Level::Full => Budget::Random(100_000),
        Level::Fast if delta <= 5 => Budget::Exhaustive,
        Level::Fast => Budget::Random(10_000),
    }
}

/// Builds the ring and partition for `delta` and runs [`verify_partition_suite`].
pub fn verify_all(delta: u32, level: Level, seed: u64) -> Result<VerifyReport> {
    verify_all_capped(delta, crate::DEFAULT_DELTA_CAP, level, seed)
}

pub fn verify_all_capped(delta: u32, cap: u32, level: Level, seed: u64) -> Result<VerifyReport> {
    let ctx = Arc::new(RingContext::with_cap(delta, cap)?);
    let mut report = VerifyReport::new(delta, level, seed);
    report.extend(algebra_suite(&ctx, algebra_budget(delta, level), seed));
    let partition = match assemble_partition(ctx.clone()) {
        Ok(p) => p,
        Err(e) => {
            report.push(CheckRecord::failed("partition_construction", delta, "assemble", e.to_string()));
            return Ok(report);
        }
    };
    report.extend(verify_partition_suite(&partition, level, seed).checks);
    Ok(report)
}

/// Every check that takes a partition as input: coset structure, partition validity,
/// invariances, and all check-matrix properties.
pub fn verify_partition_suite(partition: &RingPartition, level: Level, seed: u64) -> VerifyReport {
    let ctx = partition.ctx();
    let delta = ctx.delta();
    let mut report = VerifyReport::new(delta, level, seed);
    report.push(verify_coset_divisibility(delta));
    report.push(verify_cosets(ctx));

    let mut structural = verify_partition(partition);
    structural.push(verify_seed_coverage(partition));
    let sound = structural.iter().all(|c| c.status() != Status::Fail);
    report.extend(structural);
    report.push(verify_invariance(partition, RingMap::Xi));
    report.push(verify_invariance(partition, RingMap::Frobenius));
    if !sound {
        // The matrix checks below assume a valid partition.
        return report;
    }

    let h = CheckMatrix::from_partition(partition);
    report.push(verify_matrix_shape(&h));
    report.push(verify_weight_one_syndromes(&h));
    report.push(verify_min_weight(&h, level == Level::Full && delta <= 5));
    report.push(verify_quasicyclic(&h, permutation_trials(delta, level), seed));
    report.push(verify_frobenius_permutation(&h, permutation_trials(delta, level), seed));
    report.push(verify_perfect_sampled(&h, partition, perfect_trials(delta), seed));
    report.push(verify_decoder(&h, partition, perfect_trials(delta).min(1_000), seed));
    report.push(verify_weight3_census(&h));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_parsing() {
        assert_eq!("fast".parse::<Level>().unwrap(), Level::Fast);
        assert_eq!("full".parse::<Level>().unwrap(), Level::Full);
        assert!("medium".parse::<Level>().is_err());
        assert_eq!(Level::Full.to_string(), "full");
    }

    #[test]
    fn delta_three_full_passes() {
        let report = verify_all(3, Level::Full, 1).unwrap();
        assert!(report.passed(), "{}", report.table());
        let frob = report.checks.iter().find(|c| c.name() == "frobenius_invariance").unwrap();
        assert_eq!(frob.status(), Status::Observed);
    }

    #[test]
    fn rejects_even_delta() {
        assert!(matches!(verify_all(4, Level::Fast, 0), Err(Error::EvenDelta(4))));
    }
}
