//! Dense graph primitives shared by every module: vertex ids, canonical edges,
//! symmetric cost tables, walks, union-find and an O(n²) Dijkstra.
//!
//! Instances here are small (tens of vertices) and complete, so everything is
//! stored as flat `n × n` tables rather than adjacency lists.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Unordered vertex pair, stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[VertexId; 2]", try_from = "[VertexId; 2]")]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    /// Panics on a self-loop.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        assert_ne!(a, b, "self-loop {a}");
        if a < b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    pub fn lo(self) -> VertexId {
        self.lo
    }

    pub fn hi(self) -> VertexId {
        self.hi
    }

    pub fn other(self, v: VertexId) -> VertexId {
        if v == self.lo {
            self.hi
        } else {
            self.lo
        }
    }

    pub fn touches(self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }
}

impl From<Edge> for [VertexId; 2] {
    fn from(e: Edge) -> Self {
        [e.lo, e.hi]
    }
}

impl TryFrom<[VertexId; 2]> for Edge {
    type Error = String;

    fn try_from([a, b]: [VertexId; 2]) -> std::result::Result<Self, String> {
        if a == b {
            return Err(format!("self-loop edge [{a},{b}]"));
        }
        Ok(Edge::new(a, b))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

/// Symmetric pairwise cost table with a zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct CostMatrix {
    n: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn zeros(n: usize) -> Self {
        CostMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds a table from `f(i, j)` evaluated once per pair `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(VertexId, VertexId) -> f64) -> Self {
        let mut m = CostMatrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Rows `i = 0..n`, row `i` holding `cost(i, 0..i)`.
    pub fn from_lower_triangular(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = CostMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i {
                return Err(Error::Format(format!(
                    "costs row {i} has {} entries, expected {i}",
                    row.len()
                )));
            }
            for (j, &c) in row.iter().enumerate() {
                if !c.is_finite() || c < 0.0 {
                    return Err(Error::Format(format!("cost({i},{j}) = {c} is not a non-negative number")));
                }
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    pub fn to_lower_triangular(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..i).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn euclidean(points: &[[f64; 2]]) -> Self {
        CostMatrix::from_fn(points.len(), |i, j| {
            let dx = points[i][0] - points[j][0];
            let dy = points[i][1] - points[j][1];
            (dx * dx + dy * dy).sqrt()
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: VertexId, j: VertexId) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn edge(&self, e: Edge) -> f64 {
        self.get(e.lo, e.hi)
    }

    pub fn set(&mut self, i: VertexId, j: VertexId, c: f64) {
        self.data[i * self.n + j] = c;
        self.data[j * self.n + i] = c;
    }

    /// Sub-table over `vertices`, re-indexed `0..vertices.len()`.
    pub fn restrict(&self, vertices: &[VertexId]) -> CostMatrix {
        CostMatrix::from_fn(vertices.len(), |a, b| self.get(vertices[a], vertices[b]))
    }

    /// Cost of the closed tour `order[0] → … → order[last] → order[0]`.
    pub fn cycle_cost(&self, order: &[VertexId]) -> f64 {
        if order.len() < 2 {
            return 0.0;
        }
        let mut cost = 0.0;
        for w in order.windows(2) {
            cost += self.get(w[0], w[1]);
        }
        cost + self.get(order[order.len() - 1], order[0])
    }
}

/// A vertex sequence in the original graph together with its total cost.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Walk {
    pub vertices: Vec<VertexId>,
    pub cost: f64,
}

impl Walk {
    pub fn start(v: VertexId) -> Self {
        Walk {
            vertices: vec![v],
            cost: 0.0,
        }
    }

    /// Sums consecutive costs left to right, the same order the environment
    /// accumulates them.
    pub fn from_vertices(costs: &CostMatrix, vertices: Vec<VertexId>) -> Self {
        let mut cost = 0.0;
        for w in vertices.windows(2) {
            cost += costs.get(w[0], w[1]);
        }
        Walk { vertices, cost }
    }

    pub fn first(&self) -> Option<VertexId> {
        self.vertices.first().copied()
    }

    pub fn last(&self) -> Option<VertexId> {
        self.vertices.last().copied()
    }

    pub fn push(&mut self, v: VertexId, step_cost: f64) {
        self.vertices.push(v);
        self.cost += step_cost;
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn hops(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        true
    }

    pub fn components(&self) -> usize {
        self.components
    }
}

/// Single-source shortest paths on a dense graph.
#[derive(Clone, Debug)]
pub struct ShortestPaths {
    pub source: VertexId,
    pub dist: Vec<f64>,
    pub pred: Vec<Option<VertexId>>,
}

impl ShortestPaths {
    pub fn reachable(&self, v: VertexId) -> bool {
        self.dist[v].is_finite()
    }

    /// Vertex sequence `source → … → target`, or `None` when unreachable.
    pub fn path_to(&self, target: VertexId) -> Option<Vec<VertexId>> {
        if !self.reachable(target) {
            return None;
        }
        let mut path = vec![target];
        let mut v = target;
        while let Some(p) = self.pred[v] {
            path.push(p);
            v = p;
        }
        path.reverse();
        debug_assert_eq!(path[0], self.source);
        Some(path)
    }
}

/// O(n²) Dijkstra. `weight(u, v)` returns `None` when no usable edge joins
/// `u` and `v`. The settled vertex is the minimum by `(dist, index)` and a
/// predecessor only changes on strict improvement, so paths are reproducible.
pub fn dijkstra(
    n: usize,
    source: VertexId,
    mut weight: impl FnMut(VertexId, VertexId) -> Option<f64>,
) -> ShortestPaths {
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![None; n];
    let mut done = vec![false; n];
    dist[source] = 0.0;
    loop {
        let mut best: Option<VertexId> = None;
        for v in 0..n {
            if !done[v] && dist[v].is_finite() && best.is_none_or(|b| dist[v] < dist[b]) {
                best = Some(v);
            }
        }
        let Some(u) = best else { break };
        done[u] = true;
        for v in 0..n {
            if done[v] || v == u {
                continue;
            }
            if let Some(w) = weight(u, v) {
                let alt = dist[u] + w;
                if alt < dist[v] {
                    dist[v] = alt;
                    pred[v] = Some(u);
                }
            }
        }
    }
    ShortestPaths { source, dist, pred }
}
