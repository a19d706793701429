use crate::error::{Error, Result};
use crate::graph::{CostMatrix, Edge, VertexId};

use super::MATCHING_DP_LIMIT;

/// Exact minimum-weight perfect matching on `vertices` by bitmask DP:
/// `best[S]` matches the lowest vertex of `S` against every partner in `S`.
/// O(2^m · m) time for `m = vertices.len()`, which must be even and at most
/// [`MATCHING_DP_LIMIT`].
pub fn min_weight_perfect_matching(costs: &CostMatrix, vertices: &[VertexId]) -> Result<(Vec<Edge>, f64)> {
    let m = vertices.len();
    if m > MATCHING_DP_LIMIT {
        return Err(Error::TooLarge {
            what: "matching",
            size: m,
            limit: MATCHING_DP_LIMIT,
        });
    }
    if m % 2 == 1 {
        return Err(Error::InvalidTour(format!("odd vertex count {m} has no perfect matching")));
    }
    if m == 0 {
        return Ok((Vec::new(), 0.0));
    }

    let full = (1usize << m) - 1;
    let mut best = vec![f64::INFINITY; 1 << m];
    let mut partner = vec![0u8; 1 << m];
    best[0] = 0.0;
    for mask in 1..=full {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let cand = best[rest & !(1 << j)] + costs.get(vertices[i], vertices[j]);
            if cand < best[mask] {
                best[mask] = cand;
                partner[mask] = j as u8;
            }
        }
    }

    let mut pairs = Vec::with_capacity(m / 2);
    let mut mask = full;
    while mask != 0 {
        let i = mask.trailing_zeros() as usize;
        let j = partner[mask] as usize;
        pairs.push(Edge::new(vertices[i], vertices[j]));
        mask &= !(1 << i) & !(1 << j);
    }
    Ok((pairs, best[full]))
}
