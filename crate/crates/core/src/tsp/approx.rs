use crate::error::{Error, Result};
use crate::graph::{CostMatrix, Edge, VertexId};

use super::{min_weight_perfect_matching, minimum_spanning_tree, TspTour};

/// Largest odd-vertex set solved by the exact matching DP.
pub const MATCHING_DP_LIMIT: usize = 20;

/// Preorder walk of the MST rooted at `start`, children by increasing index.
/// At most twice the optimum on metric input.
pub fn double_tree_tour(costs: &CostMatrix, start: VertexId) -> TspTour {
    let n = costs.n();
    let tree = minimum_spanning_tree(costs);
    let mut children = vec![Vec::new(); n];
    for e in &tree.edges {
        children[e.lo()].push(e.hi());
        children[e.hi()].push(e.lo());
    }
    for c in &mut children {
        c.sort_unstable();
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        if std::mem::replace(&mut seen[v], true) {
            continue;
        }
        order.push(v);
        stack.extend(children[v].iter().rev().filter(|&&c| !seen[c]));
    }
    TspTour::from_order(costs, order)
}

/// Christofides: MST, exact matching on its odd-degree vertices, Euler
/// circuit of the union from `start`, then first-visit shortcutting.
/// Fails with [`Error::TooLarge`] when the MST has more than
/// [`MATCHING_DP_LIMIT`] odd vertices.
pub fn christofides_tour(costs: &CostMatrix, start: VertexId) -> Result<TspTour> {
    let n = costs.n();
    if n <= 2 {
        return Ok(TspTour::from_order(costs, rotate_identity(n, start)));
    }
    let tree = minimum_spanning_tree(costs);
    let odd: Vec<VertexId> = tree
        .degree(n)
        .iter()
        .enumerate()
        .filter(|(_, &d)| d % 2 == 1)
        .map(|(v, _)| v)
        .collect();
    let (matching, _) = min_weight_perfect_matching(costs, &odd)?;

    let mut multigraph = tree.edges.clone();
    multigraph.extend(matching);
    let circuit = euler_circuit(n, &multigraph, start)?;

    let mut seen = vec![false; n];
    let order: Vec<VertexId> = circuit
        .into_iter()
        .filter(|&v| !std::mem::replace(&mut seen[v], true))
        .collect();
    Ok(TspTour::from_order(costs, order))
}

fn rotate_identity(n: usize, start: VertexId) -> Vec<VertexId> {
    (0..n).map(|i| (start + i) % n).collect()
}

/// Hierholzer's algorithm on a connected multigraph with all degrees even.
/// From each vertex the unused edge to the lowest-index neighbour is taken
/// first. Returns the closed circuit, first and last vertex both `start`.
pub fn euler_circuit(n: usize, edges: &[Edge], start: VertexId) -> Result<Vec<VertexId>> {
    let mut adj: Vec<Vec<(VertexId, usize)>> = vec![Vec::new(); n];
    for (id, e) in edges.iter().enumerate() {
        adj[e.lo()].push((e.hi(), id));
        adj[e.hi()].push((e.lo(), id));
    }
    if let Some(v) = adj.iter().position(|a| a.len() % 2 == 1) {
        return Err(Error::InvalidTour(format!("vertex {v} has odd degree")));
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut used = vec![false; edges.len()];
    let mut next = vec![0usize; n];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        while next[v] < adj[v].len() && used[adj[v][next[v]].1] {
            next[v] += 1;
        }
        if let Some(&(w, id)) = adj[v].get(next[v]) {
            used[id] = true;
            stack.push(w);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    if circuit.len() != edges.len() + 1 {
        return Err(Error::InvalidTour("multigraph is not connected".into()));
    }
    circuit.reverse();
    Ok(circuit)
}
