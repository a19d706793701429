use std::collections::BTreeSet;

use crate::env::{EdgeKind, Environment, Phase};
use crate::error::{Error, Result};
use crate::graph::{Edge, VertexId, Walk};
use crate::tsp::TspTour;

#[derive(Clone, Debug, PartialEq)]
pub struct ShortCutResult {
    /// Blocked edges known when the pass ends.
    pub discovered_blocked: BTreeSet<Edge>,
    /// The source followed by every skipped vertex, in tour order.
    pub remaining: Vec<VertexId>,
    /// Physical route, from the source back to the source.
    pub walk: Walk,
    /// True when the closing edge was blocked and the route was retraced.
    pub retraced: bool,
}

/// Follows `tour` from the source, skipping every vertex whose edge from the
/// current position is blocked. Closes with the direct edge to the source
/// when it is open, otherwise walks the forward route backwards.
pub fn shortcut(env: &mut Environment<'_>, tour: &TspTour) -> Result<ShortCutResult> {
    let source = env.source();
    let n = env.view().n();
    if env.view().position() != source || env.view().visited_count() != 1 {
        return Err(Error::InvalidMove {
            from: env.view().position(),
            to: source,
            reason: "shortcut needs a fresh environment",
        });
    }
    tour.validate(n, source)?;
    env.set_phase(Phase::Shortcut);
    let start_len = env.view().walk().vertices.len();

    let mut remaining = vec![source];
    let mut forward = vec![source];
    let mut at = source;
    for &next in &tour.order[1..] {
        if env.view().is_known_unblocked(at, next) {
            env.move_to(next, EdgeKind::Direct)?;
            forward.push(next);
            at = next;
        } else {
            remaining.push(next);
        }
    }

    let mut retraced = false;
    if at != source {
        if env.view().is_known_unblocked(at, source) {
            env.move_to(source, EdgeKind::Direct)?;
        } else {
            retraced = true;
            for &v in forward.iter().rev().skip(1) {
                env.move_to(v, EdgeKind::Direct)?;
            }
        }
    }

    let vertices = env.view().walk().vertices[start_len - 1..].to_vec();
    Ok(ShortCutResult {
        discovered_blocked: env.view().revealed_blocked().clone(),
        remaining,
        walk: Walk::from_vertices(env.costs(), vertices),
        retraced,
    })
}
