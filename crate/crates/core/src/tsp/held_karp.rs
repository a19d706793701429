// Exact TSP by the Held–Karp subset DP.
//
// best[S][j] is the cheapest path that leaves the start, visits exactly the
// vertices of S (start excluded) and ends at j ∈ S. Subsets are processed in
// increasing numeric order, so every S \ {j} is final before S is read.

use crate::error::{Error, Result};
use crate::graph::{CostMatrix, VertexId};

use super::TspTour;

/// Largest table the exact oracle accepts.
pub const HK_LIMIT: usize = 18;

pub fn held_karp_optimal(costs: &CostMatrix, start: VertexId) -> Result<TspTour> {
    let m = costs.n();
    if m > HK_LIMIT {
        return Err(Error::TooLarge {
            what: "Held-Karp",
            size: m,
            limit: HK_LIMIT,
        });
    }
    if start >= m {
        return Err(Error::OutOfRange(format!("start {start} out of range for {m} vertices")));
    }
    if m <= 2 {
        let order = (0..m).map(|i| (start + i) % m).collect();
        return Ok(TspTour::from_order(costs, order));
    }

    let others: Vec<VertexId> = (0..m).filter(|&v| v != start).collect();
    let k = others.len();
    let masks = 1usize << k;
    let mut best = vec![f64::INFINITY; masks * k];
    let mut parent = vec![u8::MAX; masks * k];

    for (j, &v) in others.iter().enumerate() {
        best[(1 << j) * k + j] = costs.get(start, v);
    }
    for mask in 1..masks {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut ends = mask;
        while ends != 0 {
            let j = ends.trailing_zeros() as usize;
            ends &= ends - 1;
            let prev = mask & !(1 << j);
            let mut pick = u8::MAX;
            let mut value = f64::INFINITY;
            let mut bits = prev;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let cand = best[prev * k + i] + costs.get(others[i], others[j]);
                if cand < value {
                    value = cand;
                    pick = i as u8;
                }
            }
            best[mask * k + j] = value;
            parent[mask * k + j] = pick;
        }
    }

    let full = masks - 1;
    let mut last = 0;
    let mut total = f64::INFINITY;
    for j in 0..k {
        let cand = best[full * k + j] + costs.get(others[j], start);
        if cand < total {
            total = cand;
            last = j;
        }
    }

    let mut rev = Vec::with_capacity(m);
    let mut mask = full;
    let mut j = last;
    loop {
        rev.push(others[j]);
        let p = parent[mask * k + j];
        mask &= !(1 << j);
        if p == u8::MAX {
            break;
        }
        j = p as usize;
    }
    debug_assert_eq!(mask, 0);
    let mut order = Vec::with_capacity(m);
    order.push(start);
    order.extend(rev.into_iter().rev());
    Ok(TspTour::from_order(costs, order))
}
