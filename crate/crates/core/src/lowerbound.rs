//! The triangle-chain family on which compress-and-explore with Christofides
//! and nearest neighbour pays a ratio growing linearly in `p` (so
//! logarithmically in the number of blocked edges).
//!
//! `G_p` is a chain of `2^p − 1` unit triangles: a lower row
//! `b_0 … b_{2^p−1}` and an upper row `a_0 … a_{2^p−2}`, triangle `i` being
//! `(b_i, a_i, b_{i+1})`. The complete instance adds a vertex `u` joined to
//! `b_0` at cost 1; every other new pair is blocked, at cost 1 when it
//! touches `u` and 2 otherwise.
//!
//! Vertex ids: lower row `0 … 2^p − 1`, upper row `2^p … 2^{p+1} − 2`, then
//! `u = 2^{p+1} − 1`. The source is `l_p = b_0`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CostMatrix, Edge, VertexId};
use crate::instance::{MetricInstance, Scenario};

pub const MAX_P: u32 = 6;

/// Named vertices of a generated chain, plus the tours tests pin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Landmarks {
    pub p: u32,
    pub l: VertexId,
    pub r: VertexId,
    pub m: VertexId,
    pub u: VertexId,
    /// `l → u → r →` back along the zig-zag path `→ l`: the cycle formed by
    /// the path-shaped MST from `u` to `r` plus the matching edge `{u, r}`.
    pub injected_tour: Vec<VertexId>,
    /// The recursive nearest-neighbour visiting order over `G_p`: left
    /// sub-chain, right sub-chain, then the apex `m`.
    pub lemma_order: Vec<VertexId>,
}

impl Landmarks {
    /// Rank per vertex id for [`crate::cctp::TiePolicy::Priority`]: the
    /// position in `lemma_order`, with `u` last.
    pub fn lemma_priority(&self) -> Vec<usize> {
        let mut rank = order_priority(&self.lemma_order);
        rank.resize(self.u + 1, self.lemma_order.len());
        rank
    }
}

/// Rank table (indexed by vertex id) placing vertices in the given order.
pub fn order_priority(order: &[VertexId]) -> Vec<usize> {
    let n = order.iter().max().map_or(0, |&m| m + 1);
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    rank
}

#[derive(Clone, Copy, Debug)]
struct Chain {
    lower: usize,
}

impl Chain {
    fn new(p: u32) -> Self {
        Chain { lower: 1 << p }
    }
    fn b(self, i: usize) -> VertexId {
        i
    }
    fn a(self, i: usize) -> VertexId {
        self.lower + i
    }
    fn u(self) -> VertexId {
        2 * self.lower - 1
    }
    fn triangle_edges(self) -> impl Iterator<Item = Edge> {
        (0..self.lower - 1).flat_map(move |i| {
            [
                Edge::new(self.b(i), self.b(i + 1)),
                Edge::new(self.a(i), self.b(i)),
                Edge::new(self.a(i), self.b(i + 1)),
            ]
        })
    }
}

fn check_p(p: u32) -> Result<()> {
    if !(1..=MAX_P).contains(&p) {
        return Err(Error::OutOfRange(format!("p must be in 1..={MAX_P}, got {p}")));
    }
    Ok(())
}

/// Builds `G_p^+` with source `l_p`.
pub fn generate_hurkens(p: u32) -> Result<(Scenario, Landmarks)> {
    check_p(p)?;
    let chain = Chain::new(p);
    let n = 2 * chain.lower;
    let u = chain.u();
    let mut open = vec![false; n * n];
    let mut mark = |e: Edge| {
        open[e.lo() * n + e.hi()] = true;
    };
    chain.triangle_edges().for_each(&mut mark);
    mark(Edge::new(u, chain.b(0)));

    let costs = CostMatrix::from_fn(n, |i, j| {
        if open[i * n + j] || i == u || j == u {
            1.0
        } else {
            2.0
        }
    });
    let blocked: Vec<Edge> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !open[i * n + j])
        .map(|(i, j)| Edge::new(i, j))
        .collect();
    let k = blocked.len();
    let scenario = Scenario::new(MetricInstance::new(costs, chain.b(0))?, blocked, Some(k))?;
    Ok((scenario, landmarks(p, chain)))
}

/// `G_p` alone (no `u`), completed with blocked cost-2 edges. Source `l_p`.
/// Returns the scenario and the recursive visiting order.
pub fn generate_triangle_chain(p: u32) -> Result<(Scenario, Vec<VertexId>)> {
    check_p(p)?;
    let chain = Chain::new(p);
    let n = 2 * chain.lower - 1;
    let open: Vec<Edge> = chain.triangle_edges().collect();
    let costs = CostMatrix::from_fn(n, |i, j| if open.contains(&Edge::new(i, j)) { 1.0 } else { 2.0 });
    let blocked: Vec<Edge> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| Edge::new(i, j)))
        .filter(|e| !open.contains(e))
        .collect();
    let k = blocked.len();
    let scenario = Scenario::new(MetricInstance::new(costs, chain.b(0))?, blocked, Some(k))?;
    Ok((scenario, landmarks(p, chain).lemma_order))
}

fn landmarks(p: u32, chain: Chain) -> Landmarks {
    let last = chain.lower - 1;
    let mut injected_tour = vec![chain.b(0), chain.u(), chain.b(last)];
    for i in (0..last).rev() {
        injected_tour.push(chain.a(i));
        if i > 0 {
            injected_tour.push(chain.b(i));
        }
    }
    let mut lemma_order = Vec::with_capacity(2 * chain.lower - 1);
    lemma_route(chain, 0, p, &mut lemma_order);
    Landmarks {
        p,
        l: chain.b(0),
        r: chain.b(last),
        m: chain.a(chain.lower / 2 - 1),
        u: chain.u(),
        injected_tour,
        lemma_order,
    }
}

fn lemma_route(chain: Chain, lo: usize, p: u32, out: &mut Vec<VertexId>) {
    if p == 1 {
        out.extend([chain.b(lo), chain.b(lo + 1), chain.a(lo)]);
        return;
    }
    let half = 1usize << (p - 1);
    lemma_route(chain, lo, p - 1, out);
    lemma_route(chain, lo + half, p - 1, out);
    out.push(chain.a(lo + half - 1));
}

fn pow2(e: u32) -> u64 {
    1u64 << e
}

fn check_formula_p(p: u32) -> Result<()> {
    if !(1..=40).contains(&p) {
        return Err(Error::OutOfRange(format!("p must be in 1..=40, got {p}")));
    }
    Ok(())
}

/// Offline optimum on `G_p^+`: `2 + 3(2^p − 1)`.
pub fn optimal_cost_formula(p: u32) -> Result<u64> {
    check_formula_p(p)?;
    Ok(2 + 3 * (pow2(p) - 1))
}

/// Nearest-neighbour tour on `G_p` from `l_p`: `(p+4)·2^{p−1} − 2`.
pub fn lemma_route_cost_formula(p: u32) -> Result<u64> {
    check_formula_p(p)?;
    Ok((p as u64 + 4) * pow2(p - 1) - 2)
}

/// The visiting part of that tour (ending at `m_p`): `(p+3)·2^{p−1} − 2`.
pub fn lemma_visit_cost_formula(p: u32) -> Result<u64> {
    check_formula_p(p)?;
    Ok((p as u64 + 3) * pow2(p - 1) - 2)
}

/// The return from `m_p` to `l_p`: `2^{p−1}`.
pub fn lemma_return_cost_formula(p: u32) -> Result<u64> {
    check_formula_p(p)?;
    Ok(pow2(p - 1))
}

/// Full online cost on `G_p^+`: shortcut (2) plus the exploration tour.
pub fn cnn_cost_formula(p: u32) -> Result<u64> {
    Ok(2 + lemma_route_cost_formula(p)?)
}

/// `(p+4)·2^{p−1} / (2 + 3(2^p − 1))`, checked against `(p+4)/6`.
pub fn ratio_lower_bound(p: u32) -> Result<Ratio<u64>> {
    let ratio = Ratio::new(cnn_cost_formula(p)?, optimal_cost_formula(p)?);
    let floor = Ratio::new(p as u64 + 4, 6);
    if ratio < floor {
        return Err(Error::Inconsistent(format!("ratio {ratio} below (p+4)/6 = {floor}")));
    }
    Ok(ratio)
}
