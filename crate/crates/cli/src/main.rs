use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcdoob_core::cyclotomic::CosetTable;
use qcdoob_core::doob::{CheckMatrix, DoobVertex, ErrorPattern, SHRIKHANDE_SET};
use qcdoob_core::galois_ring::estimated_table_bytes;
use qcdoob_core::partition::{assemble_partition, PartitionFile, RingPartition};
use qcdoob_core::verifier::{self, Level};
use qcdoob_core::{Error, RingContext, DEFAULT_DELTA_CAP};

/// Quasi-cyclic 1-perfect codes in Doob graphs.
#[derive(Parser, Debug)]
#[command(name = "qcdoob", version, about)]
struct Cli {
    /// Largest accepted delta. Raising it above the default prints a memory estimate.
    #[arg(long, global = true, default_value_t = DEFAULT_DELTA_CAP)]
    cap: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the partition and check matrix, optionally writing them to disk.
    Generate {
        #[arg(long)]
        delta: u32,
        /// Partition output (JSON).
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Check matrix output (text).
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Also list every block explicitly in the partition file.
        #[arg(long)]
        with_blocks: bool,
    },
    /// Run the verification suite; exit status 1 if any check fails.
    Verify {
        #[arg(long)]
        delta: u32,
        #[arg(long, default_value = "fast")]
        level: Level,
        /// Structured report output (JSON).
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Verify this partition file instead of a freshly built partition.
        #[arg(long)]
        partition_in: Option<PathBuf>,
    },
    /// Decode a vertex given as a string of digits 0-3.
    Decode {
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        vector: String,
    },
    /// Coset sizes, the divisibility property and the weight-3 census.
    Census {
        #[arg(long)]
        delta: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Send random codewords through a channel adding weight-1 errors and decode them.
    Demo {
        #[arg(long)]
        delta: u32,
        /// Weight-1 errors per codeword, on distinct Doob coordinates.
        #[arg(long, default_value_t = 1)]
        errors: usize,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Bad invocation; exits with status 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.downcast_ref::<Usage>().is_some() { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let cap = cli.cap;
    match cli.command {
        Command::Generate { delta, partition, matrix, with_blocks } => {
            generate(delta, cap, partition.as_deref(), matrix.as_deref(), with_blocks)
        }
        Command::Verify { delta, level, report, seed, partition_in } => {
            verify(delta, cap, level, report.as_deref(), seed, partition_in.as_deref())
        }
        Command::Decode { delta, vector } => decode(delta, cap, &vector),
        Command::Census { delta, format } => census(delta, cap, format),
        Command::Demo { delta, errors, trials, seed } => demo(delta, cap, errors, trials, seed),
    }
}

fn ring(delta: u32, cap: u32) -> Result<Arc<RingContext>> {
    if cap > DEFAULT_DELTA_CAP {
        eprintln!(
            "note: delta cap raised to {cap}; delta {delta} needs about {} MiB",
            estimated_table_bytes(delta.min(qcdoob_core::MAX_DELTA)) >> 20
        );
    }
    RingContext::with_cap(delta, cap).map(Arc::new).map_err(|e| match e {
        Error::EvenDelta(_) | Error::DeltaTooSmall(_) | Error::DeltaAboveCap { .. } => Usage(e.to_string()).into(),
        e => e.into(),
    })
}

fn build(delta: u32, cap: u32) -> Result<(RingPartition, CheckMatrix)> {
    let partition = assemble_partition(ring(delta, cap)?).context("building the partition")?;
    let h = CheckMatrix::from_partition(&partition);
    Ok((partition, h))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn generate(delta: u32, cap: u32, partition_out: Option<&Path>, matrix_out: Option<&Path>, with_blocks: bool) -> Result<bool> {
    let (partition, h) = build(delta, cap)?;
    if let Some(path) = partition_out {
        write(path, &partition.to_json(with_blocks)?)?;
    }
    if let Some(path) = matrix_out {
        write(path, &h.to_text())?;
    }
    let p = h.params();
    let (rows, cols) = h.dims();
    println!("D({},{}), matrix {rows}x{cols}", p.m, p.n);
    println!(
        "{} triples, {} sixtuples, {} nonzero elements",
        partition.num_triples(),
        partition.num_sixtuples(),
        3 * partition.num_triples() + 6 * partition.num_sixtuples()
    );
    Ok(true)
}

fn verify(
    delta: u32,
    cap: u32,
    level: Level,
    report_out: Option<&Path>,
    seed: u64,
    partition_in: Option<&Path>,
) -> Result<bool> {
    let report = match partition_in {
        Some(path) => {
            ring(delta, cap)?;
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let file = PartitionFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
            if file.delta != delta {
                return Err(Usage(format!("{} holds delta {}, but --delta is {delta}", path.display(), file.delta)).into());
            }
            let partition = file.into_partition(cap).with_context(|| format!("rejecting {}", path.display()))?;
            verifier::verify_partition_suite(&partition, level, seed)
        }
        None => verifier::verify_all_capped(delta, cap, level, seed).map_err(|e| match e {
            Error::EvenDelta(_) | Error::DeltaTooSmall(_) | Error::DeltaAboveCap { .. } => {
                anyhow::Error::new(Usage(e.to_string()))
            }
            e => e.into(),
        })?,
    };
    print!("{}", report.table());
    if let Some(path) = report_out {
        write(path, &report.to_json()?)?;
    }
    for f in report.failures() {
        eprintln!("FAIL {}: {}", f.name(), f.witness().unwrap_or("no witness"));
    }
    Ok(report.passed())
}

fn decode(delta: u32, cap: u32, vector: &str) -> Result<bool> {
    let (partition, h) = build(delta, cap)?;
    let v: DoobVertex = vector.parse().map_err(|e: Error| Usage(e.to_string()))?;
    let len = h.params().len();
    if v.len() != len {
        return Err(Usage(format!("vector has {} digits, expected {len}", v.len())).into());
    }
    let decoded = h.decode(&partition, &v)?;
    let moved = h.params().distance(&v, &decoded.codeword)?;
    println!("codeword: {}", decoded.codeword);
    match decoded.correction {
        Some(e) => println!("correction: {e}"),
        None => println!("correction: none"),
    }
    println!("distance: {moved}");
    Ok(true)
}

fn census(delta: u32, cap: u32, format: Format) -> Result<bool> {
    let (_, h) = build(delta, cap)?;
    let divisibility = CosetTable::build(delta)?.check_prop1();
    let (order2, order4) = verifier::weight3_census(&h);
    let expected = (h.params().m as u64, 0);
    match format {
        Format::Text => {
            println!("{:>4}  {:>6}", "s", "N_s");
            for &(s, count) in &divisibility.rows {
                println!("{s:>4}  {count:>6}");
            }
            let verdict = if divisibility.holds() { "holds".to_string() } else { format!("fails for s = {:?}", divisibility.violations) };
            println!("3 | N_s * s for s > 2: {verdict}");
            println!("weight-3 census (order 2, order 4): ({order2}, {order4})");
        }
        Format::Json => {
            let cosets: Vec<_> = divisibility.rows.iter().map(|&(s, count)| serde_json::json!({ "s": s, "count": count })).collect();
            let doc = serde_json::json!({
                "delta": delta,
                "cosets": cosets,
                "divisibility_holds": divisibility.holds(),
                "violations": divisibility.violations,
                "census": { "order2": order2, "order4": order4 },
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(divisibility.holds() && (order2, order4) == expected)
}

fn demo(delta: u32, cap: u32, errors: usize, trials: u64, seed: u64) -> Result<bool> {
    let (partition, h) = build(delta, cap)?;
    let p = *h.params();
    if errors > p.m + p.n {
        return Err(Usage(format!("at most {} errors fit on distinct coordinates", p.m + p.n)).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut recovered = 0u64;
    for _ in 0..trials {
        let codeword = h.random_codeword_with(&mut rng);
        let mut v = codeword.clone();
        for coord in index::sample(&mut rng, p.m + p.n, errors) {
            let e = if coord < p.m {
                ErrorPattern::Shrikhande { pair: coord, diff: SHRIKHANDE_SET[rng.gen_range(0..6)] }
            } else {
                ErrorPattern::Hamming { coord: coord - p.m, value: rng.gen_range(1..=3) }
            };
            e.apply(&p, &mut v);
        }
        if h.decode(&partition, &v)?.codeword == codeword {
            recovered += 1;
        }
    }
    let rate = recovered as f64 / trials as f64;
    println!("D({},{}), {trials} codewords, {errors} error(s) each", p.m, p.n);
    println!("recovered {recovered}/{trials}, rate {rate:.4}");
    if errors <= 1 && recovered != trials {
        eprintln!("FAIL: within the packing radius every codeword must be recovered");
        return Ok(false);
    }
    Ok(true)
}
