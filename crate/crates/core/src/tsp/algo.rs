use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{CostMatrix, VertexId};

use super::{christofides_tour, double_tree_tour, TspTour};

/// A tour plus a note when the requested method could not be used.
#[derive(Clone, Debug, PartialEq)]
pub struct TourPlan {
    pub tour: TspTour,
    pub fallback: Option<String>,
}

/// The pluggable offline TSP step of compress-and-explore.
pub trait AlgoTsp: Sync {
    fn name(&self) -> &str;

    /// A Hamiltonian cycle over `vertices` (in original ids, starting at
    /// `vertices[0]`) under `costs`, which is indexed by original ids.
    fn plan(&self, costs: &CostMatrix, vertices: &[VertexId]) -> Result<TourPlan>;
}

fn lift(costs: &CostMatrix, vertices: &[VertexId], local: TspTour) -> TspTour {
    let order = local.order.into_iter().map(|i| vertices[i]).collect();
    TspTour::from_order(costs, order)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Christofides;

impl AlgoTsp for Christofides {
    fn name(&self) -> &str {
        "christofides"
    }

    fn plan(&self, costs: &CostMatrix, vertices: &[VertexId]) -> Result<TourPlan> {
        let sub = costs.restrict(vertices);
        match christofides_tour(&sub, 0) {
            Ok(t) => Ok(TourPlan {
                tour: lift(costs, vertices, t),
                fallback: None,
            }),
            Err(err @ Error::TooLarge { .. }) => Ok(TourPlan {
                tour: lift(costs, vertices, double_tree_tour(&sub, 0)),
                fallback: Some(format!("christofides fell back to double-tree: {err}")),
            }),
            Err(err) => Err(err),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DoubleTree;

impl AlgoTsp for DoubleTree {
    fn name(&self) -> &str {
        "double-tree"
    }

    fn plan(&self, costs: &CostMatrix, vertices: &[VertexId]) -> Result<TourPlan> {
        let sub = costs.restrict(vertices);
        Ok(TourPlan {
            tour: lift(costs, vertices, double_tree_tour(&sub, 0)),
            fallback: None,
        })
    }
}

/// Returns a fixed vertex order verbatim. On a vertex subset the order is
/// filtered to that subset and rotated to start at its first vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct InjectedTour {
    order: Vec<VertexId>,
}

impl InjectedTour {
    pub fn new(order: Vec<VertexId>) -> Result<Self> {
        let mut seen = HashSet::new();
        if let Some(v) = order.iter().find(|v| !seen.insert(**v)) {
            return Err(Error::InvalidTour(format!("vertex {v} repeated in injected tour")));
        }
        if order.is_empty() {
            return Err(Error::InvalidTour("injected tour is empty".into()));
        }
        Ok(InjectedTour { order })
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }
}

impl AlgoTsp for InjectedTour {
    fn name(&self) -> &str {
        "injected"
    }

    fn plan(&self, costs: &CostMatrix, vertices: &[VertexId]) -> Result<TourPlan> {
        let wanted: HashSet<VertexId> = vertices.iter().copied().collect();
        let mut order: Vec<VertexId> = self.order.iter().copied().filter(|v| wanted.contains(v)).collect();
        if order.len() != vertices.len() {
            return Err(Error::InvalidTour(format!(
                "injected tour covers {} of the {} requested vertices",
                order.len(),
                vertices.len()
            )));
        }
        let at = order.iter().position(|&v| v == vertices[0]).expect("start is in the filtered order");
        order.rotate_left(at);
        Ok(TourPlan {
            tour: TspTour::from_order(costs, order),
            fallback: None,
        })
    }
}
