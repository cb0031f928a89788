use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use semiforge::algebra::Semifield;
use semiforge::classify::{is_isotopic, PlaneRecord, Stages, DEFAULT_CAP};
use semiforge::cube::{decode_matrix, encode_matrix, parse_record, MatrixCode, StandardBasis};
use semiforge::fixtures::PLANES;
use semiforge::gf::{Matrix, PrimeField};
use semiforge::search::{full_classification, SearchOptions};
use semiforge_cli::verify::{verify_planes, VerifyOptions};

/// Exit status for a verification mismatch; usage and format errors use 2.
const MISMATCH: u8 = 1;
const FORMAT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "semiforge",
    version,
    about = "Finite semifields through standard bases"
)]
struct Cli {
    /// Worker threads; defaults to SEMIFORGE_THREADS, then the core count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    At,
    Orbits,
    Census,
    Structure,
}

#[derive(clap::Args)]
struct StageArgs {
    /// Skip an expensive stage (repeatable).
    #[arg(long = "skip", value_enum)]
    skip: Vec<Stage>,
    /// Largest autotopism group materialized for orbit computations.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
}

impl StageArgs {
    fn stages(&self) -> Stages {
        Stages {
            at: !self.skip.contains(&Stage::At),
            orbits: !self.skip.contains(&Stage::Orbits),
            census: !self.skip.contains(&Stage::Census),
            cap: self.cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encode a matrix given as rows of digits (read from stdin when absent).
    Encode {
        #[arg(long)]
        pos: usize,
        #[arg(long, default_value_t = 3)]
        p: u8,
        #[arg(long, default_value_t = 5)]
        n: usize,
        rows: Vec<String>,
    },
    /// Print the matrix with the given code.
    Decode {
        code: u128,
        #[arg(long)]
        pos: usize,
        #[arg(long, default_value_t = 3)]
        p: u8,
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Check every record of a file (`-` for stdin).
    Validate { file: PathBuf },
    /// Compute the invariants of every record of a file.
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        stages: StageArgs,
    },
    /// Decide isotopy between the first records of two files.
    Isotopic { first: PathBuf, second: PathBuf },
    /// Enumerate standard bases of order p^n and classify them.
    Search {
        #[arg(long)]
        p: u8,
        #[arg(long)]
        n: usize,
        /// Number of jobs the shard plan is split into.
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Run only job `i` of `--shards` (results only, no classification).
        #[arg(long)]
        shard: Option<usize>,
        /// Digits of enc(A_3) fixed per shard.
        #[arg(long)]
        prefix_len: Option<usize>,
        /// Stop after this many shards.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
        #[command(flatten)]
        stages: StageArgs,
    },
    /// Reproduce the published order-243 data from the embedded fixtures.
    VerifyPaper {
        /// Also check the headline class counts over the S3-expansion.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        stages: StageArgs,
    },
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

/// Records of a file with their 1-based line numbers; blank lines and `#`
/// comments are skipped.
fn read_records(path: &Path) -> anyhow::Result<Vec<(usize, StandardBasis)>> {
    let text = read_input(path)?;
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let basis =
            parse_record(line).with_context(|| format!("{}: line {}", path.display(), k + 1))?;
        out.push((k + 1, basis));
    }
    Ok(out)
}

fn parse_rows(field: PrimeField, n: usize, rows: &[String]) -> anyhow::Result<Matrix> {
    let text;
    let rows: Vec<&str> = if rows.is_empty() {
        text = read_input(Path::new("-"))?;
        text.lines().filter(|l| !l.trim().is_empty()).collect()
    } else {
        rows.iter().map(String::as_str).collect()
    };
    let parsed: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| {
            r.chars()
                .filter(|c| !c.is_whitespace() && *c != ',')
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .with_context(|| format!("bad digit {c:?}"))
                })
                .collect()
        })
        .collect::<anyhow::Result<_>>()?;
    if parsed.len() != n || parsed.iter().any(|r| r.len() != n) {
        bail!("expected {n} rows of {n} entries");
    }
    Ok(Matrix::from_rows(field, &parsed)?)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Encode { pos, p, n, rows } => {
            let m = parse_rows(PrimeField::new(p)?, n, &rows)?;
            println!("{}", encode_matrix(&m, pos)?);
        }
        Command::Decode { code, pos, p, n } => {
            print!(
                "{}",
                decode_matrix(MatrixCode::new(code, pos), PrimeField::new(p)?, n)?
            );
        }
        Command::Validate { file } => {
            let mut status = 0;
            for (line, basis) in read_records(&file)? {
                match basis.validate() {
                    Ok(()) => println!("line {line}: ok"),
                    Err(report) => {
                        println!("line {line}: {report}");
                        status = MISMATCH;
                    }
                }
            }
            return Ok(status);
        }
        Command::Invariants { file, stages } => {
            let stages = stages.stages();
            for (i, (line, basis)) in read_records(&file)?.into_iter().enumerate() {
                let d = Semifield::from_basis(basis).with_context(|| format!("line {line}"))?;
                if i > 0 {
                    println!();
                }
                print!(
                    "{}",
                    PlaneRecord::compute(&line.to_string(), &d, &stages)?.to_text()?
                );
            }
        }
        Command::Isotopic { first, second } => {
            let load = |path: &Path| -> anyhow::Result<Semifield> {
                let (line, basis) = read_records(path)?
                    .into_iter()
                    .next()
                    .with_context(|| format!("{} has no record", path.display()))?;
                Semifield::from_basis(basis)
                    .with_context(|| format!("{}: line {line}", path.display()))
            };
            let (d1, d2) = (load(&first)?, load(&second)?);
            match is_isotopic(&d1, &d2)? {
                Some(w) => {
                    println!("isotopic");
                    println!("F=\n{}G=\n{}H=\n{}", w.f, w.g, w.h);
                }
                None => {
                    println!("not isotopic");
                    return Ok(MISMATCH);
                }
            }
        }
        Command::Search {
            p,
            n,
            shards,
            shard,
            prefix_len,
            budget,
            out,
            checkpoint,
            resume,
            stages,
        } => {
            if shards == 0 || shard.is_some_and(|i| i >= shards) {
                bail!("--shard must be below --shards");
            }
            let opts = SearchOptions {
                prefix_len,
                selection: shard.map(|i| (shards, i)),
                budget,
                results: out,
                checkpoint,
                resume,
                stages: stages.stages(),
            };
            let outcome = full_classification(p, n, &opts)?;
            let run = &outcome.run;
            println!(
                "shards={}/{} plan={}",
                run.completed, run.selected, run.plan_len
            );
            println!("{}", run.stats);
            match &outcome.classification {
                Some(c) => {
                    for rec in &c.records {
                        println!();
                        print!("{}", rec.to_text()?);
                    }
                    println!();
                    println!("s3_classes={}", c.s3_classes);
                    println!("isotopy_classes={}", c.isotopy_classes);
                    if let Some(k) = c.isomorphism_classes {
                        println!("isomorphism_classes={k}");
                    }
                }
                None if !run.is_complete() => println!("status=resumable"),
                None => println!("status=partial-selection"),
            }
        }
        Command::VerifyPaper { full, stages } => {
            let opts = VerifyOptions {
                stages: stages.stages(),
                structure: !stages.skip.contains(&Stage::Structure),
                full,
            };
            let report = verify_planes(&PLANES, &opts)?;
            print!("{}", report.to_text());
            let failed = report.failures().count();
            println!("{} checks, {failed} failed", report.checks.len());
            if failed > 0 {
                return Ok(MISMATCH);
            }
        }
    }
    Ok(0)
}

fn threads(flag: Option<usize>) -> anyhow::Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("SEMIFORGE_THREADS") {
        Ok(v) => Ok(Some(
            v.trim()
                .parse()
                .context("SEMIFORGE_THREADS is not a number")?,
        )),
        Err(_) => Ok(None),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = threads(cli.threads).and_then(|t| {
        if let Some(t) = t {
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build_global()?;
        }
        run(cli)
    });
    match status {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(FORMAT)
        }
    }
}
