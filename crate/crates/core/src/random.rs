//! Seeded scenario generation.
//!
//! All randomness comes from `ChaCha8` (rand_chacha 0.3) seeded with
//! `SeedableRng::seed_from_u64(seed)`. Draws use only `next_u64`:
//! floats are `(x >> 11) · 2⁻⁵³` and bounded integers use rejection on the
//! largest multiple of the bound, so the stream is reproducible from the
//! seed without depending on `rand`'s distribution internals.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CostMatrix, Edge};
use crate::instance::{unblocked_components, MetricInstance, Scenario};
use crate::tsp::tighten_to_metric;

/// Connected blocked sets are drawn by rejection; give up after this many.
pub const MAX_REJECTIONS: usize = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Geometry {
    /// Uniform points in the unit square, Euclidean distances.
    #[default]
    Euclidean,
    /// Uniform weights in `[0.1, 1)`, tightened to their shortest-path closure.
    RandomMetricClosure,
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Euclidean => "euclidean",
            Geometry::RandomMetricClosure => "random-metric-closure",
        })
    }
}

impl FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Geometry::Euclidean),
            "random-metric-closure" | "closure" => Ok(Geometry::RandomMetricClosure),
            other => Err(Error::OutOfRange(format!("unknown geometry {other:?}"))),
        }
    }
}

pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[0, bound)`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = (u64::MAX / bound) * bound;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % bound;
            }
        }
    }
}

/// Builds a random scenario on `n` vertices (source 0) with exactly `k`
/// blocked edges chosen uniformly among the `k`-subsets that keep the
/// unblocked subgraph connected.
pub fn generate_random_scenario(n: usize, k: usize, seed: u64, geometry: Geometry) -> Result<Scenario> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n must be at least 2, got {n}")));
    }
    let pairs_total = n * (n - 1) / 2;
    // a connected graph needs at least n - 1 unblocked edges
    if k > pairs_total - (n - 1) {
        return Err(Error::CannotKeepConnected {
            n,
            k,
            reason: format!("at most {} of {pairs_total} edges can be blocked", pairs_total - (n - 1)),
        });
    }

    let mut rng = SeededRng::new(seed);
    let instance = match geometry {
        Geometry::Euclidean => {
            let points = (0..n).map(|_| [rng.unit_f64(), rng.unit_f64()]).collect();
            MetricInstance::from_points(points, 0)?
        }
        Geometry::RandomMetricClosure => {
            let mut costs = CostMatrix::from_fn(n, |_, _| 0.1 + 0.9 * rng.unit_f64());
            tighten_to_metric(&mut costs);
            MetricInstance::new(costs, 0)?
        }
    };

    let mut pairs: Vec<Edge> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| Edge::new(i, j)))
        .collect();
    for _ in 0..MAX_REJECTIONS {
        // partial Fisher–Yates: the first k slots become a uniform k-subset
        for slot in 0..k {
            let pick = slot + rng.below((pairs.len() - slot) as u64) as usize;
            pairs.swap(slot, pick);
        }
        let chosen = &pairs[..k];
        let mut table = vec![false; n * n];
        for e in chosen {
            table[e.lo() * n + e.hi()] = true;
        }
        let components = unblocked_components(n, |a, b| table[a.min(b) * n + a.max(b)]);
        if components == 1 {
            return Scenario::new(instance, chosen.iter().copied(), Some(k));
        }
    }
    Err(Error::CannotKeepConnected {
        n,
        k,
        reason: format!("no connected blocked set found in {MAX_REJECTIONS} draws"),
    })
}
