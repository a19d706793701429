//! Comparison baseline: repeated shortcut passes over re-planned tours of
//! the unvisited vertices, alternating direction. Simplified stand-in for
//! cyclic routing, not a reimplementation of it.

use crate::env::{EdgeKind, Environment, Phase};
use crate::error::{Error, Result};
use crate::graph::{dijkstra, CostMatrix, VertexId, Walk};
use crate::tsp::{tighten_to_metric, AlgoTsp};

use super::shortcut;

#[derive(Clone, Debug)]
pub struct BaselineRun {
    pub rounds: usize,
    pub walk: Walk,
    /// Cost of the first pass (which ends back at the source).
    pub first_round_cost: f64,
}

impl BaselineRun {
    pub fn cost(&self) -> f64 {
        self.walk.cost
    }
}

pub fn repeated_shortcut_baseline(env: &mut Environment<'_>, algo_tsp: &dyn AlgoTsp) -> Result<BaselineRun> {
    let n = env.view().n();
    let source = env.source();
    let all: Vec<VertexId> = std::iter::once(source).chain((0..n).filter(|&v| v != source)).collect();
    let plan = algo_tsp.plan(env.costs(), &all)?;
    let first = shortcut(env, &plan.tour)?;
    env.set_phase(Phase::Explore);
    let mut rounds = 1;

    while !env.view().all_visited() {
        rounds += 1;
        if rounds > n + 1 {
            return Err(Error::Inconsistent(format!("baseline made no progress after {n} rounds")));
        }
        let at = env.view().position();
        let mut subset = vec![at];
        subset.extend(env.view().unvisited());

        let optimistic = optimistic_closure(env);
        let mut order = algo_tsp.plan(&optimistic, &subset)?.tour.order;
        if rounds % 2 == 0 {
            order[1..].reverse();
        }

        let mut progressed = false;
        let mut here = at;
        for &next in &order[1..] {
            if !env.view().is_visited(next) && env.view().is_known_unblocked(here, next) {
                env.move_to(next, EdgeKind::Direct)?;
                here = next;
                progressed = true;
            }
        }
        if !progressed {
            step_to_nearest_unvisited(env)?;
        }
    }

    env.set_phase(Phase::Return);
    go_home(env)?;
    Ok(BaselineRun {
        rounds,
        walk: env.view().walk().clone(),
        first_round_cost: first.walk.cost,
    })
}

/// Shortest paths where only edges known to be blocked are excluded.
fn optimistic_closure(env: &Environment<'_>) -> CostMatrix {
    let view = env.view();
    let mut d = CostMatrix::from_fn(view.n(), |a, b| {
        if view.revealed_blocked().contains(&crate::graph::Edge::new(a, b)) {
            f64::INFINITY
        } else {
            env.costs().get(a, b)
        }
    });
    tighten_to_metric(&mut d);
    d
}

fn known_paths(env: &Environment<'_>) -> crate::graph::ShortestPaths {
    let view = env.view();
    dijkstra(view.n(), view.position(), |a, b| {
        view.is_known_unblocked(a, b).then(|| env.costs().get(a, b))
    })
}

fn walk_path(env: &mut Environment<'_>, path: &[VertexId]) -> Result<()> {
    for &v in &path[1..] {
        env.move_to(v, EdgeKind::Direct)?;
    }
    Ok(())
}

fn step_to_nearest_unvisited(env: &mut Environment<'_>) -> Result<()> {
    let sp = known_paths(env);
    let target = env
        .view()
        .unvisited()
        .filter(|&v| sp.reachable(v))
        .min_by(|&a, &b| sp.dist[a].total_cmp(&sp.dist[b]).then(a.cmp(&b)))
        .ok_or_else(|| Error::Inconsistent("no unvisited vertex reachable by known edges".into()))?;
    let path = sp.path_to(target).expect("reachable");
    walk_path(env, &path)
}

fn go_home(env: &mut Environment<'_>) -> Result<()> {
    let source = env.source();
    if env.view().position() == source {
        return Ok(());
    }
    let sp = known_paths(env);
    let path = sp
        .path_to(source)
        .ok_or_else(|| Error::Inconsistent("no known route back to the source".into()))?;
    walk_path(env, &path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::instance::{MetricInstance, Scenario};
    use crate::tsp::Christofides;

    #[test]
    fn no_blocks_is_one_round() {
        let pts = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let s = Scenario::new(MetricInstance::from_points(pts, 0).unwrap(), [], None).unwrap();
        let mut env = Environment::new(&s).unwrap();
        let run = repeated_shortcut_baseline(&mut env, &Christofides).unwrap();
        assert_eq!(run.rounds, 1);
        assert_eq!(run.cost(), 4.0);
    }

    #[test]
    fn covers_everything_with_blocks() {
        let inst = MetricInstance::new(CostMatrix::from_fn(5, |_, _| 1.0), 0).unwrap();
        let s = Scenario::new(
            inst,
            [Edge::new(0, 2), Edge::new(1, 2), Edge::new(3, 2), Edge::new(1, 3)],
            Some(4),
        )
        .unwrap();
        let mut env = Environment::new(&s).unwrap().with_audit(true);
        let run = repeated_shortcut_baseline(&mut env, &Christofides).unwrap();
        assert!(env.view().all_visited());
        assert_eq!(run.walk.last(), Some(0));
        assert!(run.rounds <= s.k() + 1);
    }
}
