//! Batches of trials over objects, friction sets and targets.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ScenarioConfig;
use super::metrics::Outcome;
use super::trial::{run_trial, TrialResult};
use crate::controller::Mode;
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::sim::{FrictionSet, ObjectKind};

/// Success rates reported for the reference experiment, kept alongside
/// simulated results for comparison.
pub const REFERENCE_RPS_SUCCESS: f64 = 0.8819;
pub const REFERENCE_NPS_SUCCESS: f64 = 0.1597;

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignSpec {
    pub mode: Mode,
    pub objects: Vec<ObjectKind>,
    pub frictions: Vec<FrictionSet>,
    pub targets: Vec<Vec2>,
    /// Template for every trial; object, friction, target and mode are overwritten.
    pub base: ScenarioConfig,
    /// When set, each trial writes its trace as JSON lines into this directory.
    pub trace_dir: Option<PathBuf>,
}

impl CampaignSpec {
    pub fn new(mode: Mode, targets: Vec<Vec2>) -> Self {
        Self {
            mode,
            objects: ObjectKind::ALL.to_vec(),
            frictions: FrictionSet::ALL.to_vec(),
            targets,
            base: ScenarioConfig::default(),
            trace_dir: None,
        }
    }

    /// Expands the spec into one scenario per object × friction × target, in that nesting order.
    pub fn scenarios(&self) -> Vec<ScenarioConfig> {
        let mut out = Vec::with_capacity(self.objects.len() * self.frictions.len() * self.targets.len());
        for &object in &self.objects {
            for &friction in &self.frictions {
                for &target in &self.targets {
                    let mut cfg = self.base.clone();
                    cfg.object = object;
                    cfg.friction = friction;
                    cfg.target = target;
                    cfg.controller.mode = self.mode;
                    cfg.record_trace = false;
                    cfg.trace_path = self.trace_dir.as_ref().map(|dir| {
                        dir.join(format!(
                            "{}_{}_{}_{}_{}.jsonl",
                            self.mode.name(),
                            object.name(),
                            friction.name(),
                            target.x,
                            target.y
                        ))
                    });
                    out.push(cfg);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CellCounts {
    pub trials: usize,
    pub successes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectFrictionCell {
    pub object: ObjectKind,
    pub friction: FrictionSet,
    #[serde(flatten)]
    pub counts: CellCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetCell {
    pub target: Vec2,
    #[serde(flatten)]
    pub counts: CellCounts,
    pub mean_min_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub mode: Mode,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub reference_success_rate: f64,
    pub outcomes: BTreeMap<String, usize>,
    pub by_object_friction: Vec<ObjectFrictionCell>,
    pub by_target: Vec<TargetCell>,
    pub results: Vec<TrialResult>,
}

impl CampaignSummary {
    /// Aggregates trial results. The input order does not matter: results are
    /// sorted by object, friction, target and seed first.
    pub fn from_results(mode: Mode, mut results: Vec<TrialResult>) -> Self {
        results.sort_by(|a, b| trial_key(a).partial_cmp(&trial_key(b)).expect("finite targets"));
        let trials = results.len();
        let successes = results.iter().filter(|r| r.outcome == Outcome::Success).count();

        let mut outcomes = BTreeMap::new();
        for r in &results {
            *outcomes.entry(r.outcome.name().to_string()).or_insert(0) += 1;
        }

        let mut by_object_friction: Vec<ObjectFrictionCell> = Vec::new();
        let mut by_target: Vec<(TargetCell, f64)> = Vec::new();
        for r in &results {
            let hit = usize::from(r.outcome == Outcome::Success);
            match by_object_friction.iter_mut().find(|c| c.object == r.object && c.friction == r.friction) {
                Some(c) => {
                    c.counts.trials += 1;
                    c.counts.successes += hit;
                }
                None => by_object_friction.push(ObjectFrictionCell {
                    object: r.object,
                    friction: r.friction,
                    counts: CellCounts { trials: 1, successes: hit },
                }),
            }
            match by_target.iter_mut().find(|(c, _)| c.target == r.target) {
                Some((c, sum)) => {
                    c.counts.trials += 1;
                    c.counts.successes += hit;
                    *sum += r.min_distance;
                }
                None => by_target.push((
                    TargetCell {
                        target: r.target,
                        counts: CellCounts { trials: 1, successes: hit },
                        mean_min_distance: 0.0,
                    },
                    r.min_distance,
                )),
            }
        }
        let by_target = by_target
            .into_iter()
            .map(|(mut c, sum)| {
                c.mean_min_distance = sum / c.counts.trials as f64;
                c
            })
            .collect();

        Self {
            mode,
            trials,
            successes,
            success_rate: if trials == 0 { 0.0 } else { successes as f64 / trials as f64 },
            reference_success_rate: match mode {
                Mode::Rps => REFERENCE_RPS_SUCCESS,
                Mode::Nps => REFERENCE_NPS_SUCCESS,
            },
            outcomes,
            by_object_friction,
            by_target,
            results,
        }
    }
}

fn trial_key(r: &TrialResult) -> (ObjectKind, FrictionSet, f64, f64, u64) {
    (r.object, r.friction, r.target.x, r.target.y, r.seed)
}

/// Runs every scenario of `spec` on the rayon pool.
///
/// A trial that fails with a harness error is recorded as a numerical abort
/// carrying the error text; the campaign itself keeps going.
pub fn run_campaign(spec: &CampaignSpec) -> Result<CampaignSummary> {
    let scenarios = spec.scenarios();
    if scenarios.is_empty() {
        return Err(Error::Scenario("campaign has no scenarios".into()));
    }
    for cfg in &scenarios {
        cfg.validate()?;
    }
    let results: Vec<TrialResult> = scenarios
        .par_iter()
        .map(|cfg| run_trial(cfg).unwrap_or_else(|e| aborted(cfg, e)))
        .collect();
    Ok(CampaignSummary::from_results(spec.mode, results))
}

fn aborted(cfg: &ScenarioConfig, e: Error) -> TrialResult {
    TrialResult {
        mode: cfg.mode(),
        object: cfg.object,
        friction: cfg.friction,
        target: cfg.target,
        seed: cfg.seed,
        outcome: Outcome::NumericalAbort,
        min_distance: (cfg.target - cfg.robot_start.position()).norm(),
        completion_time: 0.0,
        deviation: None,
        realignment_activations: 0,
        contact_type_transitions: 0,
        longest_contact_loss: 0.0,
        trace_path: cfg.trace_path.clone(),
        diagnostic: Some(e.to_string()),
        trace: Vec::new(),
    }
}
