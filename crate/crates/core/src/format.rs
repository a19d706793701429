//! The `cctp-v1` scenario file.
//!
//! ```json
//! {"format":"cctp-v1","n":3,"source":0,"costs":[[],[1.0],[1.0,1.0]],"blocked":[[0,2]]}
//! ```
//!
//! Exactly one of `points` (Euclidean coordinates) or `costs` (lower-triangular
//! rows, row `i` holding `cost(i, 0..i)`) is present. Blocked edges are
//! written `[i, j]` with `i < j`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CostMatrix, Edge, VertexId};
use crate::instance::{validate_metric, MetricInstance, Scenario, METRIC_EPS};
use crate::lowerbound::Landmarks;

pub const FORMAT_TAG: &str = "cctp-v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub format: String,
    pub n: usize,
    pub source: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub costs: Option<Vec<Vec<f64>>>,
    pub blocked: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub landmarks: Option<Landmarks>,
}

impl ScenarioFile {
    pub fn from_scenario(scenario: &Scenario, landmarks: Option<&Landmarks>) -> Self {
        let inst = scenario.instance();
        let (points, costs) = match inst.points() {
            Some(p) => (Some(p.to_vec()), None),
            None => (None, Some(inst.costs().to_lower_triangular())),
        };
        ScenarioFile {
            format: FORMAT_TAG.to_string(),
            n: inst.n(),
            source: inst.source(),
            points,
            costs,
            blocked: scenario.blocked().iter().map(|e| [e.lo(), e.hi()]).collect(),
            k_bound: scenario.k_bound(),
            landmarks: landmarks.cloned(),
        }
    }

    /// Validates the file and builds the scenario: format tag, sizes, edge
    /// encoding, the triangle inequality and connectivity.
    pub fn to_scenario(&self) -> Result<(Scenario, Option<Landmarks>)> {
        if self.format != FORMAT_TAG {
            return Err(Error::Format(format!(
                "unsupported format {:?}, expected {FORMAT_TAG:?}",
                self.format
            )));
        }
        let instance = match (&self.points, &self.costs) {
            (Some(points), None) => {
                if points.iter().flatten().any(|c| !c.is_finite()) {
                    return Err(Error::Format("non-finite coordinate".into()));
                }
                MetricInstance::from_points(points.clone(), self.source)?
            }
            (None, Some(rows)) => MetricInstance::new(CostMatrix::from_lower_triangular(rows)?, self.source)?,
            _ => return Err(Error::Format("exactly one of \"points\" and \"costs\" must be present".into())),
        };
        if instance.n() != self.n {
            return Err(Error::Format(format!(
                "n = {} but the instance has {} vertices",
                self.n,
                instance.n()
            )));
        }
        let violations = validate_metric(instance.costs(), METRIC_EPS);
        if let Some(v) = violations.first() {
            return Err(Error::InvalidScenario(format!(
                "{} triangle-inequality violations, first: cost({},{}) = {} > {} via {}",
                violations.len(),
                v.a,
                v.c,
                v.direct,
                v.detour,
                v.b
            )));
        }
        let mut blocked = Vec::with_capacity(self.blocked.len());
        for &[i, j] in &self.blocked {
            if i >= j {
                return Err(Error::Format(format!("blocked edge [{i},{j}] must satisfy i < j")));
            }
            blocked.push(Edge::new(i, j));
        }
        if blocked.iter().collect::<std::collections::BTreeSet<_>>().len() != blocked.len() {
            return Err(Error::Format("duplicate blocked edge".into()));
        }
        let scenario = Scenario::new(instance, blocked, self.k_bound)?;
        if let Some(l) = &self.landmarks {
            let n = scenario.n();
            if [l.l, l.r, l.m, l.u].iter().any(|&v| v >= n) {
                return Err(Error::Format("landmark out of range".into()));
            }
        }
        Ok((scenario, self.landmarks.clone()))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn write_scenario(path: &Path, scenario: &Scenario, landmarks: Option<&Landmarks>) -> Result<()> {
    std::fs::write(path, ScenarioFile::from_scenario(scenario, landmarks).to_json()?)?;
    Ok(())
}

pub fn read_scenario(path: &Path) -> Result<(Scenario, Option<Landmarks>)> {
    ScenarioFile::from_json(&std::fs::read_to_string(path)?)?.to_scenario()
}
