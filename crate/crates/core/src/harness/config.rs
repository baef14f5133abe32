use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::controller::{ControllerParams, Mode};
use crate::error::{Error, Result};
use crate::geometry::{Pose2D, Vec2};
use crate::sim::{make_object, FrictionSet, ObjectKind, ObjectModel, SimConfig};
use crate::tactile::TaxelLayout;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactLossRule {
    /// Fail when a single uninterrupted loss exceeds the limit.
    #[default]
    Continuous,
    /// Fail when the total time without contact exceeds the limit.
    Cumulative,
}

/// Where the object starts relative to the robot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Placement {
    /// Gap between the robot front edge and the object, meters.
    pub gap: f64,
    /// Lateral offset of the object centre, meters (robot frame).
    pub lateral_offset: f64,
    /// Uniform lateral jitter half-width drawn from the scenario seed, meters.
    pub lateral_jitter: f64,
    /// Uniform yaw jitter half-width drawn from the scenario seed, radians.
    pub yaw_jitter: f64,
}

impl Default for Placement {
    fn default() -> Self {
        Self {
            gap: 0.05,
            lateral_offset: 0.0,
            lateral_jitter: 0.0,
            yaw_jitter: 0.0,
        }
    }
}

/// Everything needed to run one pushing trial. Loaded from TOML; every field has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub object: ObjectKind,
    pub friction: FrictionSet,
    pub target: Vec2,
    pub robot_start: Pose2D,
    pub placement: Placement,
    pub controller: ControllerParams,
    /// Trial time limit, seconds.
    pub timeout: f64,
    /// Contact-loss limit, seconds.
    pub contact_loss_limit: f64,
    pub contact_loss_rule: ContactLossRule,
    /// Controller period, seconds; rounded to a whole number of physics steps.
    pub control_period: f64,
    pub sim: SimConfig,
    pub taxels: TaxelLayout,
    pub seed: u64,
    /// Keep the per-tick trace in memory on the result.
    pub record_trace: bool,
    /// Write the per-tick trace as JSON lines to this file.
    pub trace_path: Option<PathBuf>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            object: ObjectKind::UniformBox,
            friction: FrictionSet::S1,
            target: Vec2::new(2.0, 0.0),
            robot_start: Pose2D::default(),
            placement: Placement::default(),
            controller: ControllerParams::default(),
            timeout: 300.0,
            contact_loss_limit: 150.0,
            contact_loss_rule: ContactLossRule::Continuous,
            control_period: 0.02,
            sim: SimConfig::default(),
            taxels: TaxelLayout::default(),
            seed: 0,
            record_trace: false,
            trace_path: None,
        }
    }
}

impl ScenarioConfig {
    pub fn new(object: ObjectKind, friction: FrictionSet, target: Vec2, mode: Mode) -> Self {
        Self {
            object,
            friction,
            target,
            controller: ControllerParams::with_mode(mode),
            ..Self::default()
        }
    }

    pub fn mode(&self) -> Mode {
        self.controller.mode
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Parse {
            path: PathBuf::from("<string>"),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: Self = toml::from_str(&text).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("scenario config is always serializable")
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.timeout.is_finite() && self.timeout > 0.0) {
            return Err(Error::Scenario(format!("timeout must be positive, got {}", self.timeout)));
        }
        if self.contact_loss_limit.is_nan() || self.contact_loss_limit <= 0.0 {
            return Err(Error::Scenario("contact_loss_limit must be positive".into()));
        }
        if !self.target.is_finite() {
            return Err(Error::Scenario("target must be finite".into()));
        }
        if (self.target - self.robot_start.position()).norm() == 0.0 {
            return Err(Error::Scenario("target coincides with the robot start position".into()));
        }
        if !self.robot_start.is_finite() {
            return Err(Error::Scenario("robot start pose must be finite".into()));
        }
        let p = &self.placement;
        if !(p.gap >= 0.0 && p.lateral_jitter >= 0.0 && p.yaw_jitter >= 0.0 && p.lateral_offset.is_finite()) {
            return Err(Error::Scenario(format!("invalid placement {p:?}")));
        }
        self.sim.validate()?;
        self.controller.validate()?;
        let ticks = self.control_period / self.sim.dt;
        if ticks.is_nan() || ticks < 1.0 - 1e-9 {
            return Err(Error::Scenario("control_period must be at least one physics step".into()));
        }
        Ok(())
    }

    pub fn steps_per_tick(&self) -> usize {
        ((self.control_period / self.sim.dt).round() as usize).max(1)
    }

    pub fn object_model(&self) -> ObjectModel {
        make_object(self.object, self.friction)
    }

    /// Initial object pose in the world frame: centred `gap` ahead of the robot's
    /// front edge, axis-aligned with the robot, plus the seeded jitter.
    pub fn initial_object_pose(&self, model: &ObjectModel) -> Pose2D {
        let p = &self.placement;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let jitter_y = if p.lateral_jitter > 0.0 {
            rng.random_range(-p.lateral_jitter..=p.lateral_jitter)
        } else {
            0.0
        };
        let jitter_yaw = if p.yaw_jitter > 0.0 {
            rng.random_range(-p.yaw_jitter..=p.yaw_jitter)
        } else {
            0.0
        };
        let local = Vec2::new(
            self.sim.robot.front_x() + p.gap + model.footprint.half_depth_x(),
            p.lateral_offset + jitter_y,
        );
        let start = &self.robot_start;
        Pose2D::from_position(start.transform_point(local), start.theta() + jitter_yaw)
    }
}
