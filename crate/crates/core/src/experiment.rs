//! Experiment harness: single runs with phase breakdown and offline optimum,
//! and grid sweeps written as CSV.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::batch::par_map;
use crate::cctp::{compress_and_explore, repeated_shortcut_baseline, TiePolicy};
use crate::env::{Environment, Phase, TraceRecord};
use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::instance::Scenario;
use crate::lowerbound::{generate_hurkens, optimal_cost_formula, Landmarks};
use crate::random::{generate_random_scenario, Geometry};
use crate::tsp::{held_karp_optimal, metric_closure, AlgoTsp, Christofides, DoubleTree, InjectedTour, HK_LIMIT};

pub const CSV_HEADER: [&str; 10] = [
    "scenario",
    "n",
    "k",
    "algo",
    "cost",
    "opt",
    "ratio",
    "shortcut_cost",
    "explore_cost",
    "wall_ms",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Compress-and-explore with Christofides and nearest neighbour.
    #[default]
    Cnn,
    /// Compress-and-explore with the double-tree tour and nearest neighbour.
    DoubleTreeNn,
    /// Repeated shortcut passes (comparison baseline).
    RepeatedShortcut,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Cnn, Algorithm::DoubleTreeNn, Algorithm::RepeatedShortcut];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cnn => "cnn",
            Algorithm::DoubleTreeNn => "double-tree-nn",
            Algorithm::RepeatedShortcut => "repeated-shortcut",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieChoice {
    #[default]
    Default,
    /// The recursive chain order carried by the scenario's landmarks.
    Lemma,
}

impl FromStr for TieChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(TieChoice::Default),
            "lemma" => Ok(TieChoice::Lemma),
            _ => Err(Error::OutOfRange(format!("unknown tie policy {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub algorithm: Algorithm,
    pub tie: TieChoice,
    /// Replaces the algorithm's TSP step with this fixed order.
    pub inject_tour: Option<Vec<VertexId>>,
    /// Re-check information soundness after every move.
    pub audit: bool,
    /// Measure wall time (otherwise `wall_ms` is 0 so output is reproducible).
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptMethod {
    HeldKarp,
    /// Closed form for the triangle-chain family, used beyond the exact
    /// solver's size limit.
    ChainFormula,
}

/// One algorithm run on one scenario.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub scenario: String,
    pub n: usize,
    pub k: usize,
    pub algo: String,
    pub cost: f64,
    pub opt: Option<f64>,
    pub opt_method: Option<OptMethod>,
    pub ratio: Option<f64>,
    /// Cost up to the end of the first shortcut pass, including any retrace.
    pub shortcut_cost: f64,
    /// Everything after the shortcut pass, including the final return.
    pub explore_cost: f64,
    /// The final return to the source alone.
    pub return_cost: f64,
    pub wall_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tsp_fallback: Option<String>,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub record: ExperimentRecord,
    pub trace: Vec<TraceRecord>,
}

fn tie_policy(tie: TieChoice, landmarks: Option<&Landmarks>) -> Result<TiePolicy> {
    match tie {
        TieChoice::Default => Ok(TiePolicy::LowestIndex),
        TieChoice::Lemma => landmarks
            .map(|l| TiePolicy::Priority(l.lemma_priority()))
            .ok_or_else(|| Error::InvalidScenario("lemma ties need a scenario with landmarks".into())),
    }
}

/// Offline optimum: Held–Karp on the metric closure when small enough,
/// otherwise the closed form for chain scenarios, otherwise `None`.
pub fn offline_optimum(scenario: &Scenario, landmarks: Option<&Landmarks>) -> Result<Option<(f64, OptMethod)>> {
    if scenario.n() <= HK_LIMIT {
        let tour = held_karp_optimal(&metric_closure(scenario), scenario.source())?;
        return Ok(Some((tour.cost, OptMethod::HeldKarp)));
    }
    match landmarks {
        Some(l) => Ok(Some((optimal_cost_formula(l.p)? as f64, OptMethod::ChainFormula))),
        None => Ok(None),
    }
}

/// Runs one algorithm through a fresh environment. `opt` is attached to the
/// record as given.
pub fn run_scenario(
    id: &str,
    scenario: &Scenario,
    landmarks: Option<&Landmarks>,
    opts: &RunOptions,
    opt: Option<(f64, OptMethod)>,
) -> Result<RunOutcome> {
    let tie = tie_policy(opts.tie, landmarks)?;
    let injected = opts.inject_tour.clone().map(InjectedTour::new).transpose()?;
    let tsp: &dyn AlgoTsp = match (&injected, opts.algorithm) {
        (Some(t), _) => t,
        (None, Algorithm::Cnn | Algorithm::RepeatedShortcut) => &Christofides,
        (None, Algorithm::DoubleTreeNn) => &DoubleTree,
    };

    let started = Instant::now();
    let mut env = Environment::new(scenario)?.with_audit(opts.audit);
    let (cost, fallback) = match opts.algorithm {
        Algorithm::Cnn | Algorithm::DoubleTreeNn => {
            let run = compress_and_explore(&mut env, tsp, &tie)?;
            (run.cost(), run.plan.fallback)
        }
        Algorithm::RepeatedShortcut => (repeated_shortcut_baseline(&mut env, tsp)?.cost(), None),
    };
    let wall_ms = if opts.timing {
        started.elapsed().as_secs_f64() * 1e3
    } else {
        0.0
    };
    let trace = env.into_trace();

    let shortcut_cost = trace
        .iter()
        .take_while(|r| r.phase == Phase::Shortcut)
        .last()
        .map_or(0.0, |r| r.cumulative_cost);
    let return_cost = trace.iter().filter(|r| r.phase == Phase::Return).map(|r| r.cost).sum();
    let record = ExperimentRecord {
        scenario: id.to_string(),
        n: scenario.n(),
        k: scenario.k(),
        algo: opts.algorithm.name().to_string(),
        cost,
        opt: opt.map(|o| o.0),
        opt_method: opt.map(|o| o.1),
        ratio: opt.map(|(o, _)| if o > 0.0 { cost / o } else { 1.0 }),
        shortcut_cost,
        explore_cost: cost - shortcut_cost,
        return_cost,
        wall_ms,
        tsp_fallback: fallback,
    };
    Ok(RunOutcome { record, trace })
}

/// A grid of random scenarios.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomGrid {
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub geometry: Geometry,
}

/// Chain scenarios; by default run with the landmark tour and lemma ties.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainGrid {
    pub p: Vec<u32>,
    #[serde(default = "yes")]
    pub inject_tour: bool,
    #[serde(default = "lemma")]
    pub tie: TieChoice,
}

fn yes() -> bool {
    true
}

fn lemma() -> TieChoice {
    TieChoice::Lemma
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub random: Vec<RandomGrid>,
    #[serde(default)]
    pub hurkens: Vec<ChainGrid>,
    #[serde(default = "all_algorithms")]
    pub algorithms: Vec<Algorithm>,
}

fn all_algorithms() -> Vec<Algorithm> {
    Algorithm::ALL.to_vec()
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Job {
    Random { n: usize, k: usize, seed: u64, geometry: Geometry },
    Chain { p: u32, inject_tour: bool, tie: TieChoice },
}

impl Job {
    fn id(&self) -> String {
        match self {
            Job::Random { n, k, seed, geometry } => match geometry {
                Geometry::Euclidean => format!("random-n{n}-k{k}-s{seed}"),
                Geometry::RandomMetricClosure => format!("random-closure-n{n}-k{k}-s{seed}"),
            },
            Job::Chain { p, inject_tour, tie } => {
                let mut id = format!("hurkens-p{p}");
                if !inject_tour {
                    id.push_str("-tsp");
                }
                if *tie == TieChoice::Default {
                    id.push_str("-lowest");
                }
                id
            }
        }
    }

    fn build(&self) -> Result<(Scenario, Option<Landmarks>)> {
        match *self {
            Job::Random { n, k, seed, geometry } => Ok((generate_random_scenario(n, k, seed, geometry)?, None)),
            Job::Chain { p, .. } => generate_hurkens(p).map(|(s, l)| (s, Some(l))),
        }
    }

    fn options(&self, algorithm: Algorithm, landmarks: Option<&Landmarks>, timing: bool) -> RunOptions {
        let (tie, inject_tour) = match self {
            Job::Random { .. } => (TieChoice::Default, None),
            Job::Chain { inject_tour, tie, .. } => {
                (*tie, inject_tour.then(|| landmarks.map(|l| l.injected_tour.clone())).flatten())
            }
        };
        RunOptions {
            algorithm,
            tie,
            inject_tour,
            audit: false,
            timing,
        }
    }
}

/// One CSV row. Failed runs keep their keys and carry the error.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub scenario: String,
    pub n: usize,
    pub k: usize,
    pub algo: String,
    pub outcome: std::result::Result<ExperimentRecord, String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AggregateRow {
    pub kind: &'static str,
    pub n: usize,
    pub k: usize,
    pub algo: String,
    pub ratio: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub aggregates: Vec<AggregateRow>,
}

impl SweepReport {
    pub fn failures(&self) -> impl Iterator<Item = (&SweepRow, &str)> {
        self.rows.iter().filter_map(|r| r.outcome.as_ref().err().map(|e| (r, e.as_str())))
    }

    /// Writes the header, one row per run, then the aggregate rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        fn num(x: Option<f64>) -> String {
            x.map(|v| v.to_string()).unwrap_or_default()
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for row in &self.rows {
            let rec = row.outcome.as_ref().ok();
            w.write_record([
                row.scenario.clone(),
                row.n.to_string(),
                row.k.to_string(),
                row.algo.clone(),
                num(rec.map(|r| r.cost)),
                num(rec.and_then(|r| r.opt)),
                num(rec.and_then(|r| r.ratio)),
                num(rec.map(|r| r.shortcut_cost)),
                num(rec.map(|r| r.explore_cost)),
                num(rec.map(|r| r.wall_ms)),
            ])?;
        }
        for a in &self.aggregates {
            w.write_record([
                a.kind.to_string(),
                a.n.to_string(),
                a.k.to_string(),
                a.algo.clone(),
                String::new(),
                String::new(),
                a.ratio.to_string(),
                String::new(),
                String::new(),
                String::new(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Runs every (scenario, algorithm) pair of the grid. Scenarios run in
/// parallel when the `parallel` feature is on; the row order is fixed by the
/// scenario keys and algorithm order regardless.
pub fn run_sweep(config: &SweepConfig, timing: bool) -> SweepReport {
    let mut jobs = Vec::new();
    for g in &config.random {
        for &n in &g.n {
            for &k in &g.k {
                for &seed in &g.seeds {
                    jobs.push(Job::Random {
                        n,
                        k,
                        seed,
                        geometry: g.geometry,
                    });
                }
            }
        }
    }
    for g in &config.hurkens {
        for &p in &g.p {
            jobs.push(Job::Chain {
                p,
                inject_tour: g.inject_tour,
                tie: g.tie,
            });
        }
    }
    jobs.sort();
    jobs.dedup();
    let mut algorithms = config.algorithms.clone();
    algorithms.sort();
    algorithms.dedup();

    let per_job = par_map(&jobs, |job| run_job(job, &algorithms, timing));
    let rows: Vec<SweepRow> = per_job.into_iter().flatten().collect();
    let aggregates = aggregate(&rows);
    SweepReport { rows, aggregates }
}

fn run_job(job: &Job, algorithms: &[Algorithm], timing: bool) -> Vec<SweepRow> {
    let id = job.id();
    let (n, k) = match job {
        Job::Random { n, k, .. } => (*n, *k),
        Job::Chain { p, .. } => (1usize << (p + 1), 0),
    };
    let built = job.build().and_then(|(s, l)| {
        let opt = offline_optimum(&s, l.as_ref())?;
        Ok((s, l, opt))
    });
    algorithms
        .iter()
        .map(|&algo| {
            let outcome = match &built {
                Ok((s, l, opt)) => {
                    run_scenario(&id, s, l.as_ref(), &job.options(algo, l.as_ref(), timing), *opt)
                        .map(|o| o.record)
                        .map_err(|e| e.to_string())
                }
                Err(e) => Err(e.to_string()),
            };
            let (n, k) = match &built {
                Ok((s, _, _)) => (s.n(), s.k()),
                Err(_) => (n, k),
            };
            SweepRow {
                scenario: id.clone(),
                n,
                k,
                algo: algo.name().to_string(),
                outcome,
            }
        })
        .collect()
}

fn aggregate(rows: &[SweepRow]) -> Vec<AggregateRow> {
    let mut groups: std::collections::BTreeMap<(usize, usize, &str), Vec<f64>> = Default::default();
    for row in rows {
        if let Ok(ExperimentRecord { ratio: Some(r), .. }) = &row.outcome {
            groups.entry((row.n, row.k, row.algo.as_str())).or_default().push(*r);
        }
    }
    let mut out = Vec::new();
    for ((n, k, algo), ratios) in groups {
        let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        for (kind, ratio) in [("aggregate-max", max), ("aggregate-mean", mean)] {
            out.push(AggregateRow {
                kind,
                n,
                k,
                algo: algo.to_string(),
                ratio,
            });
        }
    }
    out
}
