//! CSV and JSON exports of campaign results.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use super::campaign::CampaignSummary;
use super::trial::TrialResult;
use crate::error::{Error, Result};

/// Column order of the per-trial CSV. Part of the export schema; append only.
pub const TRIAL_COLUMNS: [&str; 13] = [
    "mode",
    "object",
    "friction",
    "target_x",
    "target_y",
    "seed",
    "outcome",
    "min_distance",
    "completion_time",
    "deviation",
    "realignment_activations",
    "contact_type_transitions",
    "longest_contact_loss",
];

#[derive(Serialize)]
struct TrialRow<'a> {
    mode: &'a str,
    object: &'a str,
    friction: &'a str,
    target_x: f64,
    target_y: f64,
    seed: u64,
    outcome: &'a str,
    min_distance: f64,
    completion_time: f64,
    deviation: Option<f64>,
    realignment_activations: usize,
    contact_type_transitions: usize,
    longest_contact_loss: f64,
}

impl<'a> From<&'a TrialResult> for TrialRow<'a> {
    fn from(r: &'a TrialResult) -> Self {
        Self {
            mode: r.mode.name(),
            object: r.object.name(),
            friction: r.friction.name(),
            target_x: r.target.x,
            target_y: r.target.y,
            seed: r.seed,
            outcome: r.outcome.name(),
            min_distance: r.min_distance,
            completion_time: r.completion_time,
            deviation: r.deviation,
            realignment_activations: r.realignment_activations,
            contact_type_transitions: r.contact_type_transitions,
            longest_contact_loss: r.longest_contact_loss,
        }
    }
}

pub fn write_trials_csv<W: Write>(results: &[TrialResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        w.serialize(TrialRow::from(r))?;
    }
    if results.is_empty() {
        w.write_record(TRIAL_COLUMNS)?;
    }
    w.flush().map_err(|e| Error::io("<csv output>", e))
}

/// The 5×5 grid of per-target mean minimum distances, rows from `y = 2` down to
/// `y = -2`, columns from `x = -2` to `x = 2`. Cells without trials (including the
/// robot's own cell at the centre) are left blank.
pub fn write_target_grid_csv<W: Write>(summary: &CampaignSummary, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["y\\x", "-2", "-1", "0", "1", "2"])?;
    for y in (-2..=2).rev() {
        let mut row = vec![y.to_string()];
        for x in -2..=2 {
            let cell = summary
                .by_target
                .iter()
                .find(|c| c.target.x == x as f64 && c.target.y == y as f64);
            row.push(cell.map(|c| c.mean_min_distance.to_string()).unwrap_or_default());
        }
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| Error::io("<csv output>", e))
}

pub fn write_summary_json<W: Write>(summary: &CampaignSummary, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, summary)?;
    Ok(())
}

/// Writes `trials.csv`, `targets_grid.csv` and `summary.json` into `dir`,
/// creating it if needed.
pub fn export_results(summary: &CampaignSummary, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_file(&dir.join("trials.csv"), |w| write_trials_csv(&summary.results, w))?;
    write_file(&dir.join("targets_grid.csv"), |w| write_target_grid_csv(summary, w))?;
    write_file(&dir.join("summary.json"), |w| write_summary_json(summary, w))
}

fn write_file(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w)?;
    w.flush().map_err(|e| Error::io(path, e))
}
