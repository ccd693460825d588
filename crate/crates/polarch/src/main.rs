//! Command-line front end: construction, analysis, identity checking and
//! simulation as batch commands with JSON/CSV output.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use polarch::algebra::closed_form::bec_f_alpha;
use polarch::algebra::transform_by_pattern;
use polarch::codec::monte_carlo_fer;
use polarch::construct::{select_frozen, synthesize_all};
use polarch::error::{Error, Result};
use polarch::pattern::PatternIndex;
use polarch::rational::{format_rational, parse_rational};
use polarch::spec::ChannelSpec;
use polarch::verify::run_suite;

#[derive(Parser)]
#[command(
    name = "polarch",
    version,
    about = "Exact synthetic-channel construction and analysis for polar codes",
    after_help = "Channel specs: bsc:EPS, bec:Q, bab:A,B, mixture:C@W+C@W+..., \
                  matrix:P,P,..|P,P,.., or a JSON mixture object. All numbers are \
                  exact fractions (\"num/den\"); decimals are rejected."
)]
struct Cli {
    /// Worker threads for synthesis and simulation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize all 2^k channels and emit the reliability table (CSV by
    /// default, JSON when --out ends in .json).
    Construct {
        #[arg(long)]
        channel: String,
        #[arg(long)]
        order: u32,
        /// Write to a file instead of stdout; .json selects JSON output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Abort if any synthesized mixture exceeds this many parts.
        #[arg(long)]
        max_parts: Option<usize>,
    },
    /// Pick the information/frozen split for a dimension (JSON).
    Frozen {
        #[arg(long)]
        channel: String,
        #[arg(long)]
        order: u32,
        #[arg(long)]
        dimension: usize,
    },
    /// Apply one transform pattern and print the resulting mixture (JSON).
    Transform {
        #[arg(long)]
        channel: String,
        #[arg(long)]
        pattern: String,
    },
    /// Run a named invariant suite; exits 1 if any check fails.
    Verify {
        /// One of: algebra, oracle, closedform, identity.
        #[arg(long)]
        suite: String,
    },
    /// Monte-Carlo encode/transmit/decode loop (JSON outcome).
    Simulate {
        #[arg(long)]
        channel: String,
        #[arg(long)]
        order: u32,
        #[arg(long)]
        dimension: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Genie-aided per-index statistics instead of frame errors.
        #[arg(long)]
        genie: bool,
    },
    /// Exact erasure probabilities of all order-k patterns over E(q) (JSON).
    BecProfile {
        #[arg(long)]
        q: String,
        #[arg(long)]
        order: u32,
    },
}

#[derive(Serialize)]
struct BecProfileRow {
    alpha: PatternIndex,
    erasure: String,
}

#[derive(Serialize)]
struct BecProfileOut {
    q: String,
    order_k: u32,
    rows: Vec<BecProfileRow>,
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Construct { channel, order, out, max_parts } => {
            let w = ChannelSpec::parse(&channel)?.mixture()?;
            let table = synthesize_all(&w, order, max_parts)?;
            match out {
                None => {
                    let stdout = std::io::stdout();
                    table.write_csv(&mut stdout.lock())?;
                }
                Some(path) => {
                    let mut file = BufWriter::new(File::create(&path)?);
                    if path.extension().is_some_and(|e| e == "json") {
                        serde_json::to_writer_pretty(&mut file, &table.to_json())
                            .map_err(|e| Error::Parse(e.to_string()))?;
                        writeln!(file)?;
                    } else {
                        table.write_csv(&mut file)?;
                    }
                }
            }
            Ok(0)
        }
        Command::Frozen { channel, order, dimension } => {
            let w = ChannelSpec::parse(&channel)?.mixture()?;
            let table = synthesize_all(&w, order, None)?;
            let plan = select_frozen(&table, dimension)?;
            println!("{}", serde_json::to_string_pretty(&plan.to_json()).expect("plan serializes"));
            Ok(0)
        }
        Command::Transform { channel, pattern } => {
            let w = ChannelSpec::parse(&channel)?.mixture()?;
            let alpha: PatternIndex = pattern.parse()?;
            let result = transform_by_pattern(&w, &alpha);
            println!("{}", serde_json::to_string(&result.to_json()).expect("mixture serializes"));
            Ok(0)
        }
        Command::Verify { suite } => {
            let report = run_suite(&suite)?;
            for check in &report.checks {
                println!("{} {}", if check.passed { "ok  " } else { "FAIL" }, check.name);
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            println!(
                "suite {}: {}/{} checks passed",
                report.suite,
                report.checks.len() - failed,
                report.checks.len()
            );
            Ok(u8::from(failed > 0))
        }
        Command::Simulate { channel, order, dimension, trials, seed, genie } => {
            if trials == 0 {
                return Err(Error::InvalidParameter("need at least one trial".into()));
            }
            let spec = ChannelSpec::parse(&channel)?;
            let table = synthesize_all(&spec.mixture()?, order, None)?;
            let plan = select_frozen(&table, dimension)?;
            let outcome = monte_carlo_fer(&spec.simulator(), &plan, trials, seed, genie)?;
            println!("{}", serde_json::to_string(&outcome).expect("outcome serializes"));
            Ok(0)
        }
        Command::BecProfile { q, order } => {
            let q = parse_rational(&q)?;
            if !(1..=24).contains(&order) {
                return Err(Error::OrderOutOfRange { order, min: 1, max: 24 });
            }
            let rows = PatternIndex::all_of_length(order)
                .map(|alpha| {
                    let erasure = format_rational(&bec_f_alpha(&q, &alpha));
                    BecProfileRow { alpha, erasure }
                })
                .collect();
            let out = BecProfileOut { q: format_rational(&q), order_k: order, rows };
            println!("{}", serde_json::to_string_pretty(&out).expect("profile serializes"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: could not configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
