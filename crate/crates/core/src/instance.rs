//! Metric instances and scenarios (an instance plus its hidden blocked edges).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CostMatrix, Edge, UnionFind, VertexId};

/// Relative tolerance used when checking the triangle inequality.
pub const METRIC_EPS: f64 = 1e-9;

/// A complete weighted graph with a source vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricInstance {
    costs: CostMatrix,
    source: VertexId,
    points: Option<Vec<[f64; 2]>>,
}

impl MetricInstance {
    pub fn new(costs: CostMatrix, source: VertexId) -> Result<Self> {
        if costs.n() == 0 {
            return Err(Error::InvalidScenario("instance has no vertices".into()));
        }
        if source >= costs.n() {
            return Err(Error::InvalidScenario(format!(
                "source {source} out of range for n={}",
                costs.n()
            )));
        }
        Ok(MetricInstance {
            costs,
            source,
            points: None,
        })
    }

    pub fn from_points(points: Vec<[f64; 2]>, source: VertexId) -> Result<Self> {
        let mut inst = MetricInstance::new(CostMatrix::euclidean(&points), source)?;
        inst.points = Some(points);
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.costs.n()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn costs(&self) -> &CostMatrix {
        &self.costs
    }

    pub fn cost(&self, a: VertexId, b: VertexId) -> f64 {
        self.costs.get(a, b)
    }

    pub fn points(&self) -> Option<&[[f64; 2]]> {
        self.points.as_deref()
    }
}

/// One triangle-inequality failure: `cost(a, c) > cost(a, b) + cost(b, c)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricViolation {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub direct: f64,
    pub detour: f64,
}

/// Every violation of `cost(a,c) ≤ cost(a,b) + cost(b,c)` exceeding the
/// relative tolerance `eps`. With `eps = 0` the check is exact in floating
/// point. An empty vector means the table is metric.
pub fn validate_metric(costs: &CostMatrix, eps: f64) -> Vec<MetricViolation> {
    let n = costs.n();
    let mut out = Vec::new();
    for a in 0..n {
        for c in a + 1..n {
            let direct = costs.get(a, c);
            for b in 0..n {
                if b == a || b == c {
                    continue;
                }
                let detour = costs.get(a, b) + costs.get(b, c);
                if direct > detour + eps * detour {
                    out.push(MetricViolation {
                        a,
                        b,
                        c,
                        direct,
                        detour,
                    });
                }
            }
        }
    }
    out
}

/// An instance together with the set of blocked edges. The blocked set is
/// ground truth and is only exposed to offline code (oracles, generators,
/// serialization); online algorithms go through [`crate::env::Environment`].
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    instance: MetricInstance,
    blocked: BTreeSet<Edge>,
    blocked_table: Vec<bool>,
    k_bound: Option<usize>,
}

impl Scenario {
    /// Checks vertex ranges, the `k_bound` and connectivity of the unblocked
    /// subgraph. The triangle inequality is checked separately by
    /// [`validate_metric`] so callers can choose a tolerance.
    pub fn new(
        instance: MetricInstance,
        blocked: impl IntoIterator<Item = Edge>,
        k_bound: Option<usize>,
    ) -> Result<Self> {
        let n = instance.n();
        let blocked: BTreeSet<Edge> = blocked.into_iter().collect();
        let mut blocked_table = vec![false; n * n];
        for e in &blocked {
            if e.hi() >= n {
                return Err(Error::InvalidScenario(format!("blocked edge {e} out of range for n={n}")));
            }
            blocked_table[e.lo() * n + e.hi()] = true;
            blocked_table[e.hi() * n + e.lo()] = true;
        }
        if let Some(k) = k_bound {
            if blocked.len() > k {
                return Err(Error::InvalidScenario(format!(
                    "{} blocked edges exceed k_bound {k}",
                    blocked.len()
                )));
            }
        }
        let scenario = Scenario {
            instance,
            blocked,
            blocked_table,
            k_bound,
        };
        let components = scenario.unblocked_components();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(scenario)
    }

    pub fn instance(&self) -> &MetricInstance {
        &self.instance
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }

    pub fn source(&self) -> VertexId {
        self.instance.source()
    }

    pub fn costs(&self) -> &CostMatrix {
        self.instance.costs()
    }

    pub fn blocked(&self) -> &BTreeSet<Edge> {
        &self.blocked
    }

    pub fn k(&self) -> usize {
        self.blocked.len()
    }

    pub fn k_bound(&self) -> Option<usize> {
        self.k_bound
    }

    #[inline]
    pub fn is_blocked(&self, a: VertexId, b: VertexId) -> bool {
        self.blocked_table[a * self.n() + b]
    }

    /// Number of connected components of `(V, E \ blocked)`.
    pub fn unblocked_components(&self) -> usize {
        unblocked_components(self.n(), |a, b| self.is_blocked(a, b))
    }

    /// Edges that are not blocked, in lexicographic order.
    pub fn unblocked_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.is_blocked(i, j))
            .map(|(i, j)| Edge::new(i, j))
    }
}

pub(crate) fn unblocked_components(n: usize, is_blocked: impl Fn(VertexId, VertexId) -> bool) -> usize {
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if !is_blocked(i, j) {
                uf.union(i, j);
            }
        }
    }
    uf.components()
}
