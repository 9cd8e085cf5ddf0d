//! CSV and JSON-lines output for sweeps.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::experiments::SweepPoint;

/// CSV columns, in order.
pub const CSV_HEADER: [&str; 8] = [
    "p",
    "trials",
    "solves",
    "fraction",
    "ci_low",
    "ci_high",
    "mean_rounds_solved",
    "mean_rounds_unsolved",
];

#[derive(Serialize)]
struct CsvRow {
    p: f64,
    trials: usize,
    solves: usize,
    fraction: f64,
    ci_low: f64,
    ci_high: f64,
    mean_rounds_solved: Option<f64>,
    mean_rounds_unsolved: Option<f64>,
}

/// Writes a header row and one row per point. Absent conditional means are
/// empty fields.
pub fn write_csv<W: Write>(points: &[SweepPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for pt in points {
        w.serialize(CsvRow {
            p: pt.p,
            trials: pt.trials,
            solves: pt.solves,
            fraction: pt.fraction,
            ci_low: pt.ci_low,
            ci_high: pt.ci_high,
            mean_rounds_solved: pt.mean_rounds_solved,
            mean_rounds_unsolved: pt.mean_rounds_unsolved,
        })?;
    }
    if points.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Run metadata attached to every JSON-lines record.
#[derive(Debug, Clone, Serialize)]
pub struct SweepMeta {
    pub seed: u64,
    pub generator: String,
    pub puzzle: String,
    pub rule: String,
    pub coupling: String,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    #[serde(flatten)]
    point: &'a SweepPoint,
    #[serde(flatten)]
    meta: &'a SweepMeta,
}

/// One JSON object per line per point.
pub fn write_jsonl<W: Write>(points: &[SweepPoint], meta: &SweepMeta, mut out: W) -> Result<()> {
    for point in points {
        serde_json::to_writer(&mut out, &JsonRecord { point, meta })?;
        out.write_all(b"\n")
            .map_err(|e| crate::error::Error::Output(e.to_string()))?;
    }
    out.flush()
        .map_err(|e| crate::error::Error::Output(e.to_string()))?;
    Ok(())
}
