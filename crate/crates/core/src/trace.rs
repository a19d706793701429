//! JSON-lines run traces and their replay through a fresh environment.

use std::io::{BufRead, Write};

use crate::env::{Environment, TraceRecord};
use crate::error::{Error, Result};
use crate::instance::Scenario;

pub fn write_trace<W: Write>(mut out: W, records: &[TraceRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_trace<R: BufRead>(input: R) -> Result<Vec<TraceRecord>> {
    let mut records = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        records.push(serde_json::from_str(&line)?);
    }
    Ok(records)
}

/// Re-executes every move on a fresh environment and checks that each step
/// is legal and that `cost` and `cumulative_cost` match bit for bit. Returns
/// the replayed total.
pub fn replay_trace(scenario: &Scenario, records: &[TraceRecord]) -> Result<f64> {
    let mut env = Environment::new(scenario)?.with_audit(true);
    for (index, r) in records.iter().enumerate() {
        let at = env.view().position();
        if r.from != at {
            return Err(Error::ReplayMismatch {
                index,
                reason: format!("record starts at {} but the traveller is at {at}", r.from),
            });
        }
        env.set_phase(r.phase);
        env.move_to(r.to, r.edge_kind).map_err(|e| Error::ReplayMismatch {
            index,
            reason: e.to_string(),
        })?;
        let replayed = env.trace().last().expect("a move was recorded");
        if replayed.cost.to_bits() != r.cost.to_bits() {
            return Err(Error::ReplayMismatch {
                index,
                reason: format!("step cost {} recorded as {}", replayed.cost, r.cost),
            });
        }
        if replayed.cumulative_cost.to_bits() != r.cumulative_cost.to_bits() {
            return Err(Error::ReplayMismatch {
                index,
                reason: format!(
                    "cumulative cost {} recorded as {}",
                    replayed.cumulative_cost, r.cumulative_cost
                ),
            });
        }
    }
    Ok(env.view().total_cost())
}
