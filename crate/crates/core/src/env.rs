//! The online environment. It owns the scenario (the truth) and hands
//! algorithms a [`TravellerView`], which only contains what the traveller has
//! observed. Arriving at a vertex reveals the state of every incident edge.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CostMatrix, Edge, VertexId, Walk};
use crate::instance::{MetricInstance, Scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeState {
    Unknown,
    Blocked,
    Unblocked,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Shortcut,
    Compress,
    Explore,
    Return,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeKind {
    Direct,
    PathExpansion,
}

/// One line of the JSONL run trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub phase: Phase,
    pub from: VertexId,
    pub to: VertexId,
    pub edge_kind: EdgeKind,
    pub cost: f64,
    pub cumulative_cost: f64,
}

/// Everything the traveller knows.
#[derive(Clone, Debug)]
pub struct TravellerView {
    n: usize,
    position: VertexId,
    visited: Vec<bool>,
    visited_count: usize,
    states: Vec<EdgeState>,
    revealed_blocked: BTreeSet<Edge>,
    walk: Walk,
}

impl TravellerView {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn position(&self) -> VertexId {
        self.position
    }

    pub fn is_visited(&self, v: VertexId) -> bool {
        self.visited[v]
    }

    pub fn visited_count(&self) -> usize {
        self.visited_count
    }

    pub fn all_visited(&self) -> bool {
        self.visited_count == self.n
    }

    pub fn unvisited(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).filter(|&v| !self.visited[v])
    }

    #[inline]
    pub fn state(&self, a: VertexId, b: VertexId) -> EdgeState {
        self.states[a * self.n + b]
    }

    pub fn is_known_unblocked(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.state(a, b) == EdgeState::Unblocked
    }

    pub fn revealed_blocked(&self) -> &BTreeSet<Edge> {
        &self.revealed_blocked
    }

    pub fn walk(&self) -> &Walk {
        &self.walk
    }

    pub fn total_cost(&self) -> f64 {
        self.walk.cost
    }

    /// Checks that exactly the edges incident to visited vertices carry a
    /// revealed state.
    pub fn check_information_soundness(&self) -> Result<()> {
        for a in 0..self.n {
            for b in a + 1..self.n {
                let should_know = self.visited[a] || self.visited[b];
                let knows = self.state(a, b) != EdgeState::Unknown;
                if should_know != knows {
                    return Err(Error::InformationLeak(format!(
                        "edge {} known={knows} but incident-to-visited={should_know}",
                        Edge::new(a, b)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Cloning forks the run: both copies share the scenario and diverge from
/// the current state.
#[derive(Clone)]
pub struct Environment<'s> {
    scenario: &'s Scenario,
    view: TravellerView,
    phase: Phase,
    trace: Vec<TraceRecord>,
    audit: bool,
}

impl<'s> Environment<'s> {
    /// Places the traveller at the source and reveals its incident edges.
    pub fn new(scenario: &'s Scenario) -> Result<Self> {
        let components = scenario.unblocked_components();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        let n = scenario.n();
        let source = scenario.source();
        let mut env = Environment {
            scenario,
            view: TravellerView {
                n,
                position: source,
                visited: vec![false; n],
                visited_count: 0,
                states: vec![EdgeState::Unknown; n * n],
                revealed_blocked: BTreeSet::new(),
                walk: Walk::start(source),
            },
            phase: Phase::Shortcut,
            trace: Vec::new(),
            audit: false,
        };
        env.arrive(source);
        Ok(env)
    }

    /// Re-check the information contract after every move.
    pub fn with_audit(mut self, audit: bool) -> Self {
        self.audit = audit;
        self
    }

    pub fn view(&self) -> &TravellerView {
        &self.view
    }

    /// Costs and source are public knowledge; only block states are hidden.
    pub fn instance(&self) -> &MetricInstance {
        self.scenario.instance()
    }

    pub fn costs(&self) -> &CostMatrix {
        self.scenario.costs()
    }

    pub fn source(&self) -> VertexId {
        self.scenario.source()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn set_phase(&mut self, phase: Phase) {
        self.phase = phase;
    }

    pub fn trace(&self) -> &[TraceRecord] {
        &self.trace
    }

    pub fn into_trace(self) -> Vec<TraceRecord> {
        self.trace
    }

    /// Traverses `{position, to}`. The edge must already be revealed
    /// unblocked; anything else is an algorithm bug and fails hard.
    pub fn move_to(&mut self, to: VertexId, kind: EdgeKind) -> Result<&TravellerView> {
        let from = self.view.position;
        if to >= self.view.n {
            return Err(Error::InvalidMove {
                from,
                to,
                reason: "target out of range",
            });
        }
        if to == from {
            return Err(Error::InvalidMove {
                from,
                to,
                reason: "self-loop",
            });
        }
        match self.view.state(from, to) {
            EdgeState::Unblocked => {}
            EdgeState::Blocked => return Err(Error::BlockedTraversal { from, to }),
            EdgeState::Unknown => return Err(Error::UnrevealedTraversal { from, to }),
        }
        let cost = self.scenario.costs().get(from, to);
        self.view.walk.push(to, cost);
        self.view.position = to;
        self.trace.push(TraceRecord {
            phase: self.phase,
            from,
            to,
            edge_kind: kind,
            cost,
            cumulative_cost: self.view.walk.cost,
        });
        if !self.view.visited[to] {
            self.arrive(to);
        }
        if self.audit {
            self.view.check_information_soundness()?;
        }
        Ok(&self.view)
    }

    fn arrive(&mut self, v: VertexId) {
        let n = self.view.n;
        self.view.visited[v] = true;
        self.view.visited_count += 1;
        for x in (0..n).filter(|&x| x != v) {
            if self.view.states[v * n + x] != EdgeState::Unknown {
                continue;
            }
            let state = if self.scenario.is_blocked(v, x) {
                self.view.revealed_blocked.insert(Edge::new(v, x));
                EdgeState::Blocked
            } else {
                EdgeState::Unblocked
            };
            self.view.states[v * n + x] = state;
            self.view.states[x * n + v] = state;
        }
    }
}
