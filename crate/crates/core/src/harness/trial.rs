//! One pushing trial: sense, localize, control, then advance the physics.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::config::ScenarioConfig;
use super::metrics::{deviation_over_contact, Outcome, TrialMonitor};
use super::trace::{TraceRecord, TraceWriter};
use crate::controller::{Controller, ControllerInput, Mode, Status};
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::sim::{FrictionSet, ObjectKind, World};
use crate::tactile::{ContactKind, TaxelArray};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub mode: Mode,
    pub object: ObjectKind,
    pub friction: FrictionSet,
    pub target: Vec2,
    pub seed: u64,
    pub outcome: Outcome,
    /// Smallest contact-to-target distance seen while in contact, meters.
    pub min_distance: f64,
    /// Time the trial ended, seconds.
    pub completion_time: f64,
    /// Mean absolute lateral contact offset over contact intervals, meters.
    pub deviation: Option<f64>,
    pub realignment_activations: usize,
    /// Number of point/line contact-type changes between consecutive ticks in contact.
    pub contact_type_transitions: usize,
    /// Longest continuous stretch without contact, seconds.
    pub longest_contact_loss: f64,
    pub trace_path: Option<PathBuf>,
    /// Error text when the trial ended in a numerical abort.
    pub diagnostic: Option<String>,
    #[serde(skip)]
    pub trace: Vec<TraceRecord>,
}

/// Runs a trial to completion. Only configuration and I/O problems are
/// returned as errors; a diverging simulation ends the trial with
/// [`Outcome::NumericalAbort`].
pub fn run_trial(config: &ScenarioConfig) -> Result<TrialResult> {
    config.validate()?;
    let model = config.object_model();
    let object_pose = config.initial_object_pose(&model);
    let taxels = TaxelArray::from_layout(&config.taxels, &config.sim.robot)?;
    let mut world = World::new(config.sim, model, config.robot_start, object_pose)?;
    let mut controller = Controller::new(config.controller)?;
    let params = *controller.params();
    let mut monitor = TrialMonitor::new(
        params.d_success,
        config.timeout,
        config.contact_loss_limit,
        config.contact_loss_rule,
    );
    let mut writer = config.trace_path.as_deref().map(TraceWriter::create).transpose()?;

    let steps = config.steps_per_tick();
    let mut trace = Vec::new();
    let mut offsets: Vec<(f64, Option<f64>)> = Vec::new();
    let mut realignments = 0;
    let mut transitions = 0;
    let mut previous_status = Status::Approaching;
    let mut previous_kind = ContactKind::None;
    let mut diagnostic = None;
    let mut ever_touched = false;

    let outcome = loop {
        let state = *world.state();
        let shape = &world.object_model().footprint;
        let active = taxels.sample(&state.robot, shape, &state.object);
        let contact = taxels.localize(&active)?;
        let input = ControllerInput {
            robot: state.robot,
            target: config.target,
            contact: contact.clone(),
            time: state.time,
        };
        let out = controller.step(&input);

        if out.status == Status::Realigning && previous_status != Status::Realigning {
            realignments += 1;
        }
        if contact.exists() && previous_kind != ContactKind::None && contact.kind != previous_kind {
            transitions += 1;
        }
        if contact.exists() {
            previous_kind = contact.kind;
            ever_touched = true;
        }
        previous_status = out.status;
        offsets.push((state.time, contact.exists().then_some(contact.l)));

        if writer.is_some() || config.record_trace {
            let record = TraceRecord {
                time: state.time,
                robot: state.robot,
                object: state.object,
                manifold: world.manifold().points().to_vec(),
                active_taxels: contact.active.clone(),
                contact_kind: contact.kind,
                contact: contact.position,
                status: out.status,
                controller: out.debug,
            };
            if let Some(w) = writer.as_mut() {
                w.write(&record)?;
            }
            if config.record_trace {
                trace.push(record);
            }
        }

        let distance = contact.exists().then_some(out.debug.distance);
        if let Some(outcome) = monitor.observe(state.time, distance) {
            break outcome;
        }

        let mut failed = None;
        for _ in 0..steps {
            if let Err(e) = world.step(out.twist) {
                failed = Some(e);
                break;
            }
        }
        match failed {
            None => {}
            Some(e @ (Error::Diverged { .. } | Error::NonFinite { .. })) => {
                diagnostic = Some(e.to_string());
                break Outcome::NumericalAbort;
            }
            Some(e) => return Err(e),
        }
    };

    if let Some(w) = writer {
        w.finish()?;
    }

    let end = world.state();
    let min_distance = if ever_touched {
        monitor.min_distance()
    } else {
        // never touched: report how close the robot's front edge got
        let front = end.robot.transform_point(Vec2::new(config.sim.robot.front_x(), 0.0));
        (config.target - front).norm()
    };

    Ok(TrialResult {
        mode: config.mode(),
        object: config.object,
        friction: config.friction,
        target: config.target,
        seed: config.seed,
        outcome,
        min_distance,
        completion_time: end.time,
        deviation: deviation_over_contact(&offsets),
        realignment_activations: realignments,
        contact_type_transitions: transitions,
        longest_contact_loss: monitor.longest_loss(),
        trace_path: config.trace_path.clone(),
        diagnostic,
        trace,
    })
}
