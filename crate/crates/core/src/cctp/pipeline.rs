use crate::env::{Environment, Phase};
use crate::error::{Error, Result};
use crate::graph::{VertexId, Walk};
use crate::tsp::{AlgoTsp, InjectedTour, TourPlan};

use super::{compress, nn_explore, shortcut, CompressedGraph, Exploration, ShortCutResult, TiePolicy};

/// Everything a compress-and-explore run produced.
#[derive(Clone, Debug)]
pub struct CnnRun {
    pub plan: TourPlan,
    pub shortcut: ShortCutResult,
    pub compressed: CompressedGraph,
    pub exploration: Exploration,
    /// The full physical route: shortcut pass then expanded exploration.
    pub walk: Walk,
}

impl CnnRun {
    pub fn cost(&self) -> f64 {
        self.walk.cost
    }

    pub fn shortcut_cost(&self) -> f64 {
        self.shortcut.walk.cost
    }

    /// Exploration including the final return.
    pub fn explore_cost(&self) -> f64 {
        self.exploration.walk.cost
    }
}

/// Runs `algo_tsp` on the whole instance, the shortcut pass along that tour,
/// compression, and nearest-neighbour exploration, all through `env`.
pub fn compress_and_explore(env: &mut Environment<'_>, algo_tsp: &dyn AlgoTsp, tie: &TiePolicy) -> Result<CnnRun> {
    let n = env.view().n();
    let source = env.source();
    let all: Vec<VertexId> = std::iter::once(source).chain((0..n).filter(|&v| v != source)).collect();
    let plan = algo_tsp.plan(env.costs(), &all)?;

    let sc = shortcut(env, &plan.tour)?;
    env.set_phase(Phase::Compress);
    let compressed = compress(&sc, env.view(), env.costs());
    let exploration = nn_explore(env, &compressed, tie)?;

    let walk = env.view().walk().clone();
    if !env.view().all_visited() || walk.last() != Some(source) {
        return Err(Error::Inconsistent("run ended without covering every vertex at the source".into()));
    }
    Ok(CnnRun {
        plan,
        shortcut: sc,
        compressed,
        exploration,
        walk,
    })
}

/// Wraps a fixed vertex order as a TSP step.
pub fn inject_tour(order: Vec<VertexId>) -> Result<InjectedTour> {
    InjectedTour::new(order)
}
