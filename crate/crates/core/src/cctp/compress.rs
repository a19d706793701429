use std::collections::BTreeMap;

use crate::env::TravellerView;
use crate::graph::{dijkstra, CostMatrix, Edge, VertexId};
use crate::instance::Scenario;
use crate::tsp::tighten_to_metric;

use super::ShortCutResult;

/// A known-feasible shortest path between two vertices of the compressed
/// graph, stored with its full route in the original graph.
#[derive(Clone, Debug, PartialEq)]
pub struct PathEdge {
    pub cost: f64,
    /// Original-graph route from the lower-local-index endpoint to the other.
    pub expansion: Vec<VertexId>,
}

/// Which of the (at most two) parallel edges a hop uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hop {
    Direct,
    Path,
}

/// The multigraph on the source and the vertices ShortCut skipped. Direct
/// edges join every pair (their state may still be unknown); path edges
/// exist for pairs joined by a route through already-known unblocked edges.
#[derive(Clone, Debug, PartialEq)]
pub struct CompressedGraph {
    vertices: Vec<VertexId>,
    local: Vec<Option<usize>>,
    path_edges: BTreeMap<(usize, usize), PathEdge>,
}

impl CompressedGraph {
    /// Vertices in original ids; index 0 is the source.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn local(&self, v: VertexId) -> Option<usize> {
        self.local.get(v).copied().flatten()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.local(v).is_some()
    }

    pub fn direct_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let m = self.len();
        (0..m).flat_map(move |a| (a + 1..m).map(move |b| Edge::new(self.vertices[a], self.vertices[b])))
    }

    /// Path edges keyed by their original-id endpoints.
    pub fn path_edges(&self) -> impl Iterator<Item = (Edge, &PathEdge)> + '_ {
        self.path_edges
            .iter()
            .map(|(&(a, b), p)| (Edge::new(self.vertices[a], self.vertices[b]), p))
    }

    pub fn path_edge_count(&self) -> usize {
        self.path_edges.len()
    }

    /// The path edge between two local indices, expansion oriented `a → b`.
    pub fn path_edge(&self, a: usize, b: usize) -> Option<(f64, Vec<VertexId>)> {
        if a == b {
            return None;
        }
        let key = (a.min(b), a.max(b));
        self.path_edges.get(&key).map(|p| {
            let mut route = p.expansion.clone();
            if a > b {
                route.reverse();
            }
            (p.cost, route)
        })
    }

    /// Cheapest edge between local vertices `a` and `b` the traveller may use
    /// right now: path edges always, direct edges once revealed unblocked.
    /// Ties go to the direct edge.
    pub fn usable(&self, view: &TravellerView, costs: &CostMatrix, a: usize, b: usize) -> Option<(f64, Hop)> {
        if a == b {
            return None;
        }
        let (va, vb) = (self.vertices[a], self.vertices[b]);
        let direct = view.is_known_unblocked(va, vb).then(|| costs.get(va, vb));
        let path = self.path_edges.get(&(a.min(b), a.max(b))).map(|p| p.cost);
        match (direct, path) {
            (Some(d), Some(p)) if p < d => Some((p, Hop::Path)),
            (Some(d), _) => Some((d, Hop::Direct)),
            (None, Some(p)) => Some((p, Hop::Path)),
            (None, None) => None,
        }
    }

    /// Offline table over the compressed vertices using the true state of
    /// the direct edges, closed under shortest paths. Its optimal tour is the
    /// optimum of the exploration instance.
    pub fn offline_cost_table(&self, scenario: &Scenario) -> CostMatrix {
        let m = self.len();
        let mut table = CostMatrix::from_fn(m, |a, b| {
            let (va, vb) = (self.vertices[a], self.vertices[b]);
            let direct = if scenario.is_blocked(va, vb) {
                f64::INFINITY
            } else {
                scenario.costs().get(va, vb)
            };
            let path = self.path_edges.get(&(a, b)).map_or(f64::INFINITY, |p| p.cost);
            direct.min(path)
        });
        tighten_to_metric(&mut table);
        table
    }
}

/// Builds the compressed graph. The auxiliary graph `H` holds every edge the
/// traveller knows to be unblocked, which are exactly the unblocked edges
/// with a visited endpoint; each pair of compressed vertices joined in `H`
/// gets a path edge with the Dijkstra distance and route. Costs nothing.
pub fn compress(result: &ShortCutResult, view: &TravellerView, costs: &CostMatrix) -> CompressedGraph {
    compress_vertices(&result.remaining, view, costs)
}

/// [`compress`] over an explicit vertex list (source first), for callers
/// that did not run a shortcut pass.
pub fn compress_vertices(vertices: &[VertexId], view: &TravellerView, costs: &CostMatrix) -> CompressedGraph {
    let n = view.n();
    let vertices = vertices.to_vec();
    let mut local = vec![None; n];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = Some(i);
    }

    let mut path_edges = BTreeMap::new();
    for (a, &x) in vertices.iter().enumerate() {
        let sp = dijkstra(n, x, |u, w| view.is_known_unblocked(u, w).then(|| costs.get(u, w)));
        for (b, &y) in vertices.iter().enumerate().skip(a + 1) {
            if let Some(expansion) = sp.path_to(y) {
                path_edges.insert(
                    (a, b),
                    PathEdge {
                        cost: sp.dist[y],
                        expansion,
                    },
                );
            }
        }
    }
    CompressedGraph {
        vertices,
        local,
        path_edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cctp::shortcut;
    use crate::env::Environment;
    use crate::instance::{MetricInstance, Scenario};
    use crate::tsp::TspTour;

    fn unit(n: usize, blocked: &[(usize, usize)]) -> Scenario {
        let inst = MetricInstance::new(CostMatrix::from_fn(n, |_, _| 1.0), 0).unwrap();
        Scenario::new(inst, blocked.iter().map(|&(a, b)| Edge::new(a, b)), None).unwrap()
    }

    #[test]
    fn nothing_skipped_gives_single_vertex() {
        let s = unit(4, &[]);
        let mut env = Environment::new(&s).unwrap();
        let tour = TspTour::from_order(s.costs(), vec![0, 1, 2, 3]);
        let r = shortcut(&mut env, &tour).unwrap();
        let g = compress(&r, env.view(), s.costs());
        assert_eq!(g.vertices(), &[0]);
        assert_eq!(g.direct_edges().count(), 0);
        assert_eq!(g.path_edge_count(), 0);
    }

    #[test]
    fn path_edges_route_through_visited_vertices() {
        // 0→1 open, {1,2},{1,3} blocked so both are skipped; {0,2} blocked
        let s = unit(4, &[(1, 2), (1, 3), (0, 2)]);
        let mut env = Environment::new(&s).unwrap();
        let tour = TspTour::from_order(s.costs(), vec![0, 1, 2, 3]);
        let r = shortcut(&mut env, &tour).unwrap();
        assert_eq!(r.remaining, vec![0, 2, 3]);
        let g = compress(&r, env.view(), s.costs());
        // 0–3 is known unblocked (0 visited); 0–2 is blocked; 2–3 unknown
        assert_eq!(g.path_edge(0, 2).unwrap(), (1.0, vec![0, 3]));
        assert!(g.path_edge(0, 1).is_none());
        assert!(g.path_edge(1, 2).is_none());
        assert_eq!(g.direct_edges().count(), 3);
        // direct 0–3 revealed unblocked at the same cost: direct wins the tie
        assert_eq!(g.usable(env.view(), s.costs(), 0, 2), Some((1.0, Hop::Direct)));
        assert_eq!(g.usable(env.view(), s.costs(), 1, 2), None);
        let offline = g.offline_cost_table(&s);
        assert_eq!(offline.get(0, 1), 2.0);
    }
}
