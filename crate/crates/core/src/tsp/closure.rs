use crate::graph::CostMatrix;
use crate::instance::Scenario;

/// All-pairs shortest-path costs over the unblocked edges of `scenario`.
/// This is the table the offline optimum is computed on.
pub fn metric_closure(scenario: &Scenario) -> CostMatrix {
    let n = scenario.n();
    let mut d = CostMatrix::from_fn(n, |i, j| {
        if scenario.is_blocked(i, j) {
            f64::INFINITY
        } else {
            scenario.costs().get(i, j)
        }
    });
    tighten_to_metric(&mut d);
    d
}

/// Floyd–Warshall sweeps repeated until nothing changes. At the fixpoint
/// every `d(i,j) ≤ d(i,k) + d(k,j)` holds exactly in floating point, not
/// just up to rounding.
pub fn tighten_to_metric(d: &mut CostMatrix) {
    let n = d.n();
    loop {
        let mut changed = false;
        for k in 0..n {
            for i in 0..n {
                let dik = d.get(i, k);
                if !dik.is_finite() {
                    continue;
                }
                for j in i + 1..n {
                    let alt = dik + d.get(k, j);
                    if alt < d.get(i, j) {
                        d.set(i, j, alt);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::instance::{validate_metric, MetricInstance};

    #[test]
    fn blocked_unit_edge_becomes_two() {
        let inst = MetricInstance::new(CostMatrix::from_fn(5, |_, _| 1.0), 0).unwrap();
        let s = Scenario::new(inst, [Edge::new(1, 3)], None).unwrap();
        let d = metric_closure(&s);
        assert_eq!(d.get(1, 3), 2.0);
        assert_eq!(d.get(0, 4), 1.0);
        assert!(validate_metric(&d, 0.0).is_empty());
    }

    #[test]
    fn tightens_non_metric_input() {
        let mut c = CostMatrix::from_fn(3, |_, _| 1.0);
        c.set(0, 2, 5.0);
        tighten_to_metric(&mut c);
        assert_eq!(c.get(0, 2), 2.0);
    }
}
