use crate::graph::{CostMatrix, Edge, UnionFind};

#[derive(Clone, Debug, PartialEq)]
pub struct SpanningTree {
    pub edges: Vec<Edge>,
    pub weight: f64,
}

impl SpanningTree {
    pub fn degree(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for e in &self.edges {
            deg[e.lo()] += 1;
            deg[e.hi()] += 1;
        }
        deg
    }
}

/// Kruskal over the complete graph. Edges are taken in lexicographic order
/// of `(cost, min endpoint, max endpoint)`, which fixes the tree among ties.
pub fn minimum_spanning_tree(costs: &CostMatrix) -> SpanningTree {
    let n = costs.n();
    let mut candidates: Vec<Edge> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| Edge::new(i, j)))
        .collect();
    candidates.sort_by(|a, b| costs.edge(*a).total_cmp(&costs.edge(*b)).then(a.cmp(b)));

    let mut uf = UnionFind::new(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut weight = 0.0;
    for e in candidates {
        if uf.union(e.lo(), e.hi()) {
            weight += costs.edge(e);
            edges.push(e);
            if edges.len() + 1 == n {
                break;
            }
        }
    }
    SpanningTree { edges, weight }
}
