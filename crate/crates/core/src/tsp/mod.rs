//! Offline TSP machinery: spanning trees, the double-tree and Christofides
//! approximations, the Held–Karp exact oracle and shortest-path closures.

mod algo;
mod approx;
mod closure;
mod held_karp;
mod matching;
mod mst;

pub use algo::{AlgoTsp, Christofides, DoubleTree, InjectedTour, TourPlan};
pub use approx::{christofides_tour, double_tree_tour, euler_circuit, MATCHING_DP_LIMIT};
pub use closure::{metric_closure, tighten_to_metric};
pub use held_karp::{held_karp_optimal, HK_LIMIT};
pub use matching::min_weight_perfect_matching;
pub use mst::{minimum_spanning_tree, SpanningTree};

use crate::error::{Error, Result};
use crate::graph::{CostMatrix, VertexId};

/// A Hamiltonian cycle given as a vertex order starting at its start vertex.
/// The closing edge back to `order[0]` is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct TspTour {
    pub order: Vec<VertexId>,
    pub cost: f64,
}

impl TspTour {
    pub fn from_order(costs: &CostMatrix, order: Vec<VertexId>) -> Self {
        let cost = costs.cycle_cost(&order);
        TspTour { order, cost }
    }

    pub fn start(&self) -> VertexId {
        self.order[0]
    }

    /// Same cycle walked the other way, still starting at `order[0]`.
    pub fn reversed(&self) -> TspTour {
        let mut order = self.order.clone();
        order[1..].reverse();
        TspTour {
            order,
            cost: self.cost,
        }
    }

    /// Checks that the order is a permutation of `0..n` starting at `start`.
    pub fn validate(&self, n: usize, start: VertexId) -> Result<()> {
        check_permutation(&self.order, n, start)
    }
}

pub(crate) fn check_permutation(order: &[VertexId], n: usize, start: VertexId) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidTour(format!("tour has {} vertices, expected {n}", order.len())));
    }
    if order.first() != Some(&start) {
        return Err(Error::InvalidTour(format!("tour must start at {start}")));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(Error::InvalidTour(format!("vertex {v} out of range")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidTour(format!("vertex {v} repeated")));
        }
    }
    Ok(())
}
