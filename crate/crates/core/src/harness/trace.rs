//! Per-tick trace records, written as JSON lines, and their CSV replay.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::controller::{DebugRecord, Status};
use crate::error::{Error, Result};
use crate::geometry::{Pose2D, Vec2};
use crate::sim::ContactPoint;
use crate::tactile::ContactKind;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub time: f64,
    pub robot: Pose2D,
    pub object: Pose2D,
    pub manifold: Vec<ContactPoint>,
    pub active_taxels: Vec<usize>,
    pub contact_kind: ContactKind,
    /// Robot-frame contact location (zero when there is no contact).
    pub contact: Vec2,
    pub status: Status,
    pub controller: DebugRecord,
}

pub struct TraceWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl TraceWriter {
    pub fn create(path: &Path) -> Result<Self> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        Ok(Self {
            path: path.to_path_buf(),
            out: BufWriter::new(file),
        })
    }

    pub fn write(&mut self, record: &TraceRecord) -> Result<()> {
        serde_json::to_writer(&mut self.out, record)?;
        self.out.write_all(b"\n").map_err(|e| Error::io(&self.path, e))
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush().map_err(|e| Error::io(&self.path, e))
    }
}

pub fn read_trace(path: &Path) -> Result<Vec<TraceRecord>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut records = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: format!("line {}: {e}", n + 1),
        })?;
        records.push(record);
    }
    Ok(records)
}

/// Flat row used when replaying a trace to CSV.
#[derive(Debug, Serialize)]
struct ReplayRow {
    time: f64,
    robot_x: f64,
    robot_y: f64,
    robot_theta: f64,
    object_x: f64,
    object_y: f64,
    object_theta: f64,
    contact_type: u8,
    active_taxels: usize,
    contact_x: f64,
    contact_y: f64,
    status: Status,
    distance: f64,
    a_r: f64,
    gamma: f64,
    sigma: f64,
    vx: f64,
    vy: f64,
    omega: f64,
    max_penetration: f64,
}

/// Writes one CSV row per trace record.
pub fn replay_to_csv<W: Write>(records: &[TraceRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(ReplayRow {
            time: r.time,
            robot_x: r.robot.x,
            robot_y: r.robot.y,
            robot_theta: r.robot.theta(),
            object_x: r.object.x,
            object_y: r.object.y,
            object_theta: r.object.theta(),
            contact_type: r.contact_kind.code(),
            active_taxels: r.active_taxels.len(),
            contact_x: r.contact.x,
            contact_y: r.contact.y,
            status: r.status,
            distance: r.controller.distance,
            a_r: r.controller.a_r,
            gamma: r.controller.gamma,
            sigma: r.controller.sigma,
            vx: r.controller.saturated.vx,
            vy: r.controller.saturated.vy,
            omega: r.controller.saturated.omega,
            max_penetration: r.manifold.iter().map(|c| c.penetration).fold(0.0, f64::max),
        })?;
    }
    w.flush().map_err(|e| Error::io("<csv output>", e))
}
