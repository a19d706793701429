//! Nearest-neighbour exploration of the compressed graph.

use crate::env::{EdgeKind, Environment, Phase};
use crate::error::{Error, Result};
use crate::graph::{dijkstra, ShortestPaths, VertexId, Walk};

use super::{CompressedGraph, Hop};

/// How to choose among unvisited vertices at the same distance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum TiePolicy {
    /// Smallest vertex id.
    #[default]
    LowestIndex,
    /// Smallest rank, indexed by vertex id; vertices past the end of the
    /// table rank last and fall back to their id.
    Priority(Vec<usize>),
}

impl TiePolicy {
    pub fn key(&self, v: VertexId) -> (usize, VertexId) {
        match self {
            TiePolicy::LowestIndex => (0, v),
            TiePolicy::Priority(rank) => (rank.get(v).copied().unwrap_or(usize::MAX), v),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Exploration {
    /// Compressed vertices in the order they were targeted, source first.
    pub targets: Vec<VertexId>,
    /// The walk in compressed-graph terms (one entry per hop endpoint),
    /// including the final return.
    pub compressed_walk: Vec<VertexId>,
    /// Physical route with every path edge expanded, including the return.
    pub walk: Walk,
    pub visit_cost: f64,
    pub return_cost: f64,
}

impl Exploration {
    pub fn cost(&self) -> f64 {
        self.walk.cost
    }
}

/// Repeatedly moves to the unvisited compressed vertex with the smallest
/// known-route distance, then returns to the source along the cheapest known
/// route. Vertices with no known route yet are passed over until one appears.
pub fn nn_explore(env: &mut Environment<'_>, graph: &CompressedGraph, tie: &TiePolicy) -> Result<Exploration> {
    let source = env.source();
    let Some(mut at) = graph.local(env.view().position()) else {
        return Err(Error::Inconsistent(format!(
            "traveller at {} which is not in the compressed graph",
            env.view().position()
        )));
    };
    env.set_phase(Phase::Explore);
    let start_len = env.view().walk().vertices.len();
    let start_cost = env.view().total_cost();
    let mut targets = vec![graph.vertices()[at]];
    let mut compressed_walk = vec![graph.vertices()[at]];

    loop {
        let view = env.view();
        let pending = graph.vertices().iter().filter(|&&v| !view.is_visited(v)).count();
        if pending == 0 {
            break;
        }
        let sp = known_routes(env, graph, at);
        let view = env.view();
        let next = (0..graph.len())
            .filter(|&b| !view.is_visited(graph.vertices()[b]) && sp.reachable(b))
            .min_by(|&x, &y| {
                sp.dist[x]
                    .total_cmp(&sp.dist[y])
                    .then_with(|| tie.key(graph.vertices()[x]).cmp(&tie.key(graph.vertices()[y])))
            });
        let Some(next) = next else {
            return Err(Error::Inconsistent(format!(
                "{pending} compressed vertices unvisited but none reachable by known routes"
            )));
        };
        targets.push(graph.vertices()[next]);
        follow(env, graph, &sp, next, &mut compressed_walk)?;
        at = next;
    }
    let visit_cost = env.view().total_cost() - start_cost;

    env.set_phase(Phase::Return);
    let before_return = env.view().total_cost();
    let home = graph.local(source).expect("source is a compressed vertex");
    if at != home {
        let sp = known_routes(env, graph, at);
        if !sp.reachable(home) {
            return Err(Error::Inconsistent("no known route back to the source".into()));
        }
        follow(env, graph, &sp, home, &mut compressed_walk)?;
    }
    let return_cost = env.view().total_cost() - before_return;

    let vertices = env.view().walk().vertices[start_len - 1..].to_vec();
    Ok(Exploration {
        targets,
        compressed_walk,
        walk: Walk::from_vertices(env.costs(), vertices),
        visit_cost,
        return_cost,
    })
}

fn known_routes(env: &Environment<'_>, graph: &CompressedGraph, from: usize) -> ShortestPaths {
    let (view, costs) = (env.view(), env.costs());
    dijkstra(graph.len(), from, |a, b| graph.usable(view, costs, a, b).map(|(c, _)| c))
}

/// Walks the shortest known route to local vertex `to`, expanding path
/// edges. Hop choices are fixed before moving so the cost matches the
/// distance the target was chosen by.
fn follow(
    env: &mut Environment<'_>,
    graph: &CompressedGraph,
    sp: &ShortestPaths,
    to: usize,
    compressed_walk: &mut Vec<VertexId>,
) -> Result<()> {
    let route = sp.path_to(to).expect("target is reachable");
    let hops: Vec<(usize, usize, Hop)> = route
        .windows(2)
        .map(|w| {
            let (_, hop) = graph
                .usable(env.view(), env.costs(), w[0], w[1])
                .expect("route uses usable edges");
            (w[0], w[1], hop)
        })
        .collect();
    for (a, b, hop) in hops {
        match hop {
            Hop::Direct => {
                env.move_to(graph.vertices()[b], EdgeKind::Direct)?;
            }
            Hop::Path => {
                let (_, expansion) = graph.path_edge(a, b).expect("path edge exists");
                for &v in &expansion[1..] {
                    env.move_to(v, EdgeKind::PathExpansion)?;
                }
            }
        }
        compressed_walk.push(graph.vertices()[b]);
    }
    Ok(())
}
