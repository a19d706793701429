//! `cctp`: generate scenarios, run the online algorithms, compute offline
//! optima and sweep parameter grids.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage or validation error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use cctp_core::experiment::{offline_optimum, run_scenario, run_sweep, Algorithm, RunOptions, SweepConfig, TieChoice};
use cctp_core::format::{read_scenario, ScenarioFile};
use cctp_core::lowerbound::generate_hurkens;
use cctp_core::random::{generate_random_scenario, Geometry};
use cctp_core::trace::write_trace;
use cctp_core::tsp::{held_karp_optimal, metric_closure, HK_LIMIT};
use cctp_core::{Error, VertexId};

#[derive(Parser)]
#[command(name = "cctp", version, about = "Online covering Canadian traveller simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a scenario file.
    #[command(subcommand)]
    Gen(GenKind),
    /// Run one algorithm and print its record as JSON.
    Run(RunArgs),
    /// Offline optimum by Held–Karp on the metric closure.
    Opt {
        scenario: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a grid of scenarios and algorithms, writing CSV.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall time per run (makes the report non-reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Random scenario with `k` blocked edges.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = Geometry::Euclidean)]
        geometry: Geometry,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The triangle-chain scenario of depth `p`, with landmarks.
    Hurkens {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    scenario: PathBuf,
    #[arg(long, default_value = "cnn")]
    algo: Algorithm,
    #[arg(long, default_value = "default")]
    tie: TieChoice,
    /// `landmark` for the tour stored in the scenario, or a comma-separated
    /// vertex order.
    #[arg(long)]
    inject_tour: Option<String>,
    /// Write the JSONL move trace here.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Check the information contract after every move.
    #[arg(long)]
    audit: bool,
    #[arg(long)]
    timing: bool,
    /// Skip the offline optimum.
    #[arg(long)]
    no_opt: bool,
}

/// An error that maps to exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<Error>() {
            return if e.is_validation() || matches!(e, Error::Io(_)) { 2 } else { 1 };
        }
        if cause.is::<io::Error>() {
            return 2;
        }
    }
    1
}

fn dispatch(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Gen(GenKind::Random {
            n,
            k,
            seed,
            geometry,
            out,
        }) => {
            if n < 2 {
                bail!(Usage(format!("--n must be at least 2, got {n}")));
            }
            let s = generate_random_scenario(n, k, seed, geometry)?;
            emit(out.as_deref(), &ScenarioFile::from_scenario(&s, None).to_json()?)
        }
        Command::Gen(GenKind::Hurkens { p, out }) => {
            let (s, l) = generate_hurkens(p)?;
            emit(out.as_deref(), &ScenarioFile::from_scenario(&s, Some(&l)).to_json()?)
        }
        Command::Run(args) => run(args),
        Command::Opt { scenario, out } => {
            let (s, _) = load(&scenario)?;
            if s.n() > HK_LIMIT {
                return Err(Error::TooLarge {
                    what: "held-karp",
                    size: s.n(),
                    limit: HK_LIMIT,
                }
                .into());
            }
            let tour = held_karp_optimal(&metric_closure(&s), s.source())?;
            let record = serde_json::json!({
                "scenario": scenario_id(&scenario),
                "n": s.n(),
                "k": s.k(),
                "opt": tour.cost,
                "tour": tour.order,
            });
            emit(out.as_deref(), &(serde_json::to_string_pretty(&record)? + "\n"))
        }
        Command::Sweep { config, out, timing } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let cfg = SweepConfig::from_json(&text)?;
            let report = run_sweep(&cfg, timing);
            for (row, err) in report.failures() {
                eprintln!("{} {}: {err}", row.scenario, row.algo);
            }
            match out {
                Some(path) => report.write_csv(BufWriter::new(create(&path)?))?,
                None => report.write_csv(io::stdout().lock())?,
            }
            Ok(())
        }
    }
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let (s, landmarks) = load(&args.scenario)?;
    let inject_tour = match args.inject_tour.as_deref() {
        None => None,
        Some("landmark") => match &landmarks {
            Some(l) => Some(l.injected_tour.clone()),
            None => bail!(Usage("--inject-tour landmark needs a scenario with landmarks".into())),
        },
        Some(list) => Some(parse_order(list)?),
    };
    let opts = RunOptions {
        algorithm: args.algo,
        tie: args.tie,
        inject_tour,
        audit: args.audit,
        timing: args.timing,
    };
    let opt = if args.no_opt {
        None
    } else {
        offline_optimum(&s, landmarks.as_ref())?
    };
    let outcome = run_scenario(&scenario_id(&args.scenario), &s, landmarks.as_ref(), &opts, opt)?;
    if let Some(path) = &args.trace {
        write_trace(BufWriter::new(create(path)?), &outcome.trace)?;
    }
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&outcome.record)? + "\n"))
}

fn parse_order(list: &str) -> anyhow::Result<Vec<VertexId>> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<VertexId>()
                .map_err(|_| Usage(format!("bad vertex {t:?} in --inject-tour")).into())
        })
        .collect()
}

fn load(path: &Path) -> anyhow::Result<(cctp_core::Scenario, Option<cctp_core::lowerbound::Landmarks>)> {
    read_scenario(path).with_context(|| format!("loading {}", path.display()))
}

fn scenario_id(path: &Path) -> String {
    path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned())
}

fn create(path: &Path) -> anyhow::Result<File> {
    File::create(path).with_context(|| format!("creating {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => create(path)?.write_all(text.as_bytes())?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
