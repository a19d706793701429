//! Independent oracles and fixtures shared by the integration tests. Nothing
//! here calls the library's own algorithms; only its data types.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cctp_core::graph::{CostMatrix, Edge, VertexId, Walk};
use cctp_core::instance::{MetricInstance, Scenario};
use cctp_core::random::{generate_random_scenario, Geometry};
use itertools::Itertools;

/// Minimum spanning tree weight by decoding every Prüfer sequence.
pub fn prufer_mst_weight(c: &CostMatrix) -> f64 {
    let n = c.n();
    if n <= 1 {
        return 0.0;
    }
    if n == 2 {
        return c.get(0, 1);
    }
    let mut best = f64::INFINITY;
    for seq in (0..n - 2).map(|_| 0..n).multi_cartesian_product() {
        let mut degree = vec![1usize; n];
        for &v in &seq {
            degree[v] += 1;
        }
        let mut weight = 0.0;
        for &v in &seq {
            let leaf = (0..n).find(|&x| degree[x] == 1).unwrap();
            weight += c.get(leaf, v);
            degree[leaf] -= 1;
            degree[v] -= 1;
        }
        let last: Vec<usize> = (0..n).filter(|&x| degree[x] == 1).collect();
        weight += c.get(last[0], last[1]);
        best = best.min(weight);
    }
    best
}

/// Optimal Hamiltonian cycle by trying every order of the non-start vertices.
pub fn brute_force_tsp(c: &CostMatrix, start: VertexId) -> f64 {
    let rest: Vec<usize> = (0..c.n()).filter(|&v| v != start).collect();
    if rest.is_empty() {
        return 0.0;
    }
    rest.iter()
        .copied()
        .permutations(rest.len())
        .map(|perm| {
            let mut cost = c.get(start, perm[0]) + c.get(*perm.last().unwrap(), start);
            for w in perm.windows(2) {
                cost += c.get(w[0], w[1]);
            }
            cost
        })
        .fold(f64::INFINITY, f64::min)
}

/// All-pairs shortest paths by Floyd–Warshall over the given usable edges.
pub fn floyd(n: usize, usable: impl Fn(usize, usize) -> Option<f64>) -> Vec<Vec<f64>> {
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
        for (j, cell) in row.iter_mut().enumerate() {
            if i != j {
                if let Some(w) = usable(i, j) {
                    *cell = w;
                }
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Shortest-path distances from `src` by Bellman–Ford relaxation.
pub fn bellman_ford(n: usize, src: usize, usable: impl Fn(usize, usize) -> Option<f64>) -> Vec<f64> {
    let mut d = vec![f64::INFINITY; n];
    d[src] = 0.0;
    for _ in 0..n {
        let mut changed = false;
        for u in 0..n {
            for v in 0..n {
                if u == v || d[u].is_infinite() {
                    continue;
                }
                if let Some(w) = usable(u, v) {
                    if d[u] + w < d[v] {
                        d[v] = d[u] + w;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    d
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// Checks a physical walk against the ground truth: starts and ends at the
/// source, covers every vertex, crosses no blocked edge, and its cost is the
/// left-to-right sum of its steps.
pub fn check_walk(s: &Scenario, walk: &Walk) -> Result<(), String> {
    let v = &walk.vertices;
    if v.first() != Some(&s.source()) || v.last() != Some(&s.source()) {
        return Err(format!("walk {v:?} does not start and end at {}", s.source()));
    }
    let seen: BTreeSet<_> = v.iter().copied().collect();
    if seen.len() != s.n() {
        return Err(format!("walk covers {} of {} vertices", seen.len(), s.n()));
    }
    let mut cost = 0.0;
    for w in v.windows(2) {
        if w[0] == w[1] {
            return Err(format!("walk repeats {}", w[0]));
        }
        if s.blocked().contains(&Edge::new(w[0], w[1])) {
            return Err(format!("walk crosses blocked edge {{{},{}}}", w[0], w[1]));
        }
        cost += s.costs().get(w[0], w[1]);
    }
    if cost.to_bits() != walk.cost.to_bits() {
        return Err(format!("walk cost {} but steps sum to {cost}", walk.cost));
    }
    Ok(())
}

/// Largest `k` for which an `n`-vertex complete graph can stay connected.
pub fn max_blockable(n: usize) -> usize {
    n * (n - 1) / 2 - (n - 1)
}

/// The seeded random suite: `count` scenarios with `n` in 3..=12 and
/// `k` in 0..=8, alternating geometry.
pub fn random_suite(count: usize) -> Vec<(String, Scenario)> {
    (0..count)
        .map(|i| {
            let n = 3 + i % 10;
            let k = ((i / 10) % 9).min(max_blockable(n));
            let geometry = if i % 2 == 0 {
                Geometry::Euclidean
            } else {
                Geometry::RandomMetricClosure
            };
            let seed = 1000 + i as u64;
            let s = generate_random_scenario(n, k, seed, geometry).expect("suite scenario");
            (format!("{geometry}-n{n}-k{k}-s{seed}"), s)
        })
        .collect()
}

/// Vertex `v_i` of the sixteen-vertex worked example.
pub fn v(i: usize) -> VertexId {
    i - 1
}

/// The sixteen-vertex worked example: points on a circle, tour
/// `v_1 → … → v_16`, and a blocked set that forces the forward route
/// `v_1 v_2 v_4 v_5 v_9 v_10 v_11 v_14 v_16` with a blocked closing edge.
pub fn worked_example() -> Scenario {
    let points: Vec<[f64; 2]> = (0..16)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / 16.0;
            [t.cos(), t.sin()]
        })
        .collect();
    let pairs = [
        (2, 3),
        (5, 6),
        (5, 7),
        (5, 8),
        (11, 12),
        (11, 13),
        (14, 15),
        (16, 1),
        (1, 10),
        (1, 3),
        (9, 16),
        (2, 14),
    ];
    let blocked = pairs.iter().map(|&(a, b)| Edge::new(v(a), v(b)));
    Scenario::new(MetricInstance::from_points(points, v(1)).unwrap(), blocked, Some(pairs.len())).unwrap()
}
