//! Tactile-only reactive pushing controller.
//!
//! Each control tick maps `(robot pose, target, contact report)` to a base
//! velocity command. The forward/lateral split comes from an adaptive rate
//! that grows logistically with the contact's lateral offset, steering follows
//! a bicycle-style heading law, and a hysteresis threshold switches into a
//! realignment state when the contact drifts into the critical edge band.
//!
//! The non-reactive baseline ([`Mode::Nps`]) is the same law with the adaptive
//! rate pinned to zero and the realignment state disabled.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{angle_diff, Pose2D, Twist2D, Vec2};
use crate::tactile::ContactReport;

/// Margin kept between the steering angle and ±π/2 before taking its tangent.
pub const STEERING_MARGIN: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Reactive pushing strategy.
    #[default]
    Rps,
    /// Non-reactive baseline.
    Nps,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Rps => "rps",
            Mode::Nps => "nps",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rps" => Ok(Mode::Rps),
            "nps" => Ok(Mode::Nps),
            other => Err(Error::Params(format!("unknown mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ControllerParams {
    /// Velocity gain, 1/s.
    pub k_v: f64,
    /// Heading gain.
    pub k_h: f64,
    /// Curvature length, m.
    pub wheelbase: f64,
    /// Upper asymptote of the adaptive rate.
    pub eta: f64,
    /// Lower asymptote of the adaptive rate.
    pub zeta: f64,
    /// Inflection offset of the adaptive rate, m.
    pub beta: f64,
    /// Logistic steepness, 1/m.
    pub steepness: f64,
    /// Distance below which lateral motion is cancelled, m.
    pub d_th: f64,
    /// Critical region threshold, m.
    pub l_cr: f64,
    /// Middle region threshold, m.
    pub l_mr: f64,
    /// Adaptive rate used in the realignment state.
    pub a_r_max: f64,
    pub d_success: f64,
    pub v_lin_max: f64,
    pub omega_max: f64,
    /// Forward speed while no contact is sensed, m/s.
    pub v_approach: f64,
    pub mode: Mode,
}

impl Default for ControllerParams {
    fn default() -> Self {
        Self {
            k_v: 0.1,
            k_h: 1.0,
            wheelbase: 0.2,
            eta: 10.0,
            zeta: 0.0,
            beta: 0.12,
            steepness: 60.0,
            d_th: 0.5,
            l_cr: 0.24,
            l_mr: 0.05,
            a_r_max: 10.0,
            d_success: 0.05,
            v_lin_max: 0.05,
            omega_max: 0.15,
            v_approach: 0.01,
            mode: Mode::Rps,
        }
    }
}

impl ControllerParams {
    pub fn with_mode(mode: Mode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("k_v", self.k_v),
            ("k_h", self.k_h),
            ("wheelbase", self.wheelbase),
            ("eta", self.eta),
            ("zeta", self.zeta),
            ("beta", self.beta),
            ("steepness", self.steepness),
            ("d_th", self.d_th),
            ("l_cr", self.l_cr),
            ("l_mr", self.l_mr),
            ("a_r_max", self.a_r_max),
            ("d_success", self.d_success),
            ("v_lin_max", self.v_lin_max),
            ("omega_max", self.omega_max),
            ("v_approach", self.v_approach),
        ];
        if let Some((name, v)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Params(format!("{name} is not finite ({v})")));
        }
        let positive = [
            ("k_v", self.k_v),
            ("k_h", self.k_h),
            ("wheelbase", self.wheelbase),
            ("beta", self.beta),
            ("d_success", self.d_success),
            ("v_lin_max", self.v_lin_max),
            ("omega_max", self.omega_max),
        ];
        if let Some((name, v)) = positive.iter().find(|(_, v)| *v <= 0.0) {
            return Err(Error::Params(format!("{name} must be positive, got {v}")));
        }
        if !(0.0 <= self.zeta && self.zeta < self.eta) {
            return Err(Error::Params(format!("need 0 <= zeta < eta, got zeta={} eta={}", self.zeta, self.eta)));
        }
        if self.steepness < 0.0 || self.d_th < 0.0 || self.a_r_max < 0.0 || self.v_approach < 0.0 {
            return Err(Error::Params("steepness, d_th, a_r_max and v_approach must be non-negative".into()));
        }
        if !(0.0 < self.l_mr && self.l_mr < self.l_cr) {
            return Err(Error::Params(format!("need 0 < l_mr < l_cr, got l_mr={} l_cr={}", self.l_mr, self.l_cr)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Approaching,
    Pushing,
    Realigning,
    Reached,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControllerState {
    /// Hysteresis threshold, either `l_cr` or `l_mr`.
    pub l_th: f64,
    pub in_realignment: bool,
    pub last_contact: Option<ContactReport>,
    pub last_contact_time: f64,
    pub reached: bool,
}

impl ControllerState {
    pub fn new(params: &ControllerParams) -> Self {
        Self {
            l_th: params.l_cr,
            in_realignment: false,
            last_contact: None,
            last_contact_time: 0.0,
            reached: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ControllerInput {
    pub robot: Pose2D,
    pub target: Vec2,
    pub contact: ContactReport,
    pub time: f64,
}

/// Intermediate quantities of one tick, for the trace log.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DebugRecord {
    pub l: f64,
    pub distance: f64,
    pub a_r: f64,
    pub gamma: f64,
    pub sigma: f64,
    pub raw: Twist2D,
    pub saturated: Twist2D,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutput {
    pub twist: Twist2D,
    pub state: ControllerState,
    pub status: Status,
    pub debug: DebugRecord,
}

/// Vector from the world-frame contact point to the target.
///
/// Returns `None` when no contact has ever been reported.
pub fn displacement(input: &ControllerInput, last_contact: Option<&ContactReport>) -> Option<Vec2> {
    let contact = if input.contact.exists() {
        &input.contact
    } else {
        last_contact?
    };
    Some(input.target - input.robot.transform_point(contact.position))
}

pub fn v_star(d: Vec2, params: &ControllerParams) -> f64 {
    params.k_v * d.norm()
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Logistic adaptive rate; zero once the contact is within `d_th` of the target.
pub fn adaptive_rate(l: f64, d: Vec2, params: &ControllerParams) -> f64 {
    if d.norm() <= params.d_th {
        return 0.0;
    }
    let range = params.eta - params.zeta;
    (params.zeta + range / (1.0 + ((params.beta - l.abs()) * params.steepness).exp())) * sign(l)
}

/// Splits `v_star` into forward and lateral components.
pub fn linear_velocity(v_star: f64, a_r: f64) -> (f64, f64) {
    let scale = v_star / (1.0 + a_r * a_r).sqrt();
    (scale, a_r * scale)
}

/// Steering angle toward the heading of `d`, clamped inside ±(π/2 − margin).
pub fn steering(d: Vec2, theta: f64, params: &ControllerParams) -> Result<f64> {
    if d == Vec2::ZERO {
        return Err(Error::ZeroDisplacement);
    }
    let heading = d.y.atan2(d.x);
    let limit = std::f64::consts::FRAC_PI_2 - STEERING_MARGIN;
    Ok((params.k_h * angle_diff(heading, theta)?).clamp(-limit, limit))
}

pub fn omega_normal(vx: f64, gamma: f64, params: &ControllerParams) -> f64 {
    vx / params.wheelbase * gamma.tan()
}

/// Rotation attenuation: 1 at the centre, 0 from `l_cr` outward.
pub fn sigma(l: f64, params: &ControllerParams) -> f64 {
    if l.abs() <= params.l_cr {
        1.0 - l.abs() / params.l_cr
    } else {
        0.0
    }
}

pub fn omega_realign(v_star: f64, l: f64, gamma: f64, params: &ControllerParams) -> f64 {
    sigma(l, params) * v_star / params.wheelbase * gamma.tan()
}

/// Caps the linear speed (keeping direction) and the yaw rate.
pub fn saturate(raw: Twist2D, params: &ControllerParams) -> Twist2D {
    let speed = raw.linear_speed();
    let scale = if speed > params.v_lin_max {
        params.v_lin_max / speed
    } else {
        1.0
    };
    Twist2D::new(raw.vx * scale, raw.vy * scale, raw.omega.clamp(-params.omega_max, params.omega_max))
}

/// One control tick.
pub fn controller_step(state: &ControllerState, input: &ControllerInput, params: &ControllerParams) -> StepOutput {
    let mut next = state.clone();
    if input.contact.exists() {
        next.last_contact = Some(input.contact.clone());
        next.last_contact_time = input.time;
    }

    let finish = |next: ControllerState, status: Status, raw: Twist2D, debug: DebugRecord| {
        let saturated = saturate(raw, params);
        StepOutput {
            twist: saturated,
            state: next,
            status,
            debug: DebugRecord { raw, saturated, ..debug },
        }
    };

    if state.reached {
        return finish(next, Status::Reached, Twist2D::ZERO, DebugRecord::default());
    }

    let Some(d) = displacement(input, state.last_contact.as_ref()) else {
        let approach = Twist2D::new(params.v_approach, 0.0, 0.0);
        return finish(next, Status::Approaching, approach, DebugRecord::default());
    };
    let distance = d.norm();
    let contact = if input.contact.exists() {
        &input.contact
    } else {
        next.last_contact.as_ref().expect("displacement implies a known contact")
    };
    let l = contact.l;
    let mut debug = DebugRecord {
        l,
        distance,
        ..DebugRecord::default()
    };

    if !input.contact.exists() {
        // contact lost: creep forward on the last known contact until it returns
        let approach = Twist2D::new(params.v_approach, 0.0, 0.0);
        return finish(next, Status::Approaching, approach, debug);
    }

    if distance < params.d_success {
        next.reached = true;
        return finish(next, Status::Reached, Twist2D::ZERO, debug);
    }

    let speed = v_star(d, params);
    let gamma = steering(d, input.robot.theta(), params).expect("distance above d_success");
    debug.gamma = gamma;

    let realign = params.mode == Mode::Rps && l.abs() > state.l_th;
    let (raw, status) = if realign {
        next.l_th = params.l_mr;
        next.in_realignment = true;
        let a_r = params.a_r_max * sign(l);
        let (vx, vy) = linear_velocity(speed, a_r);
        debug.a_r = a_r;
        debug.sigma = sigma(l, params);
        (Twist2D::new(vx, vy, omega_realign(speed, l, gamma, params)), Status::Realigning)
    } else {
        next.l_th = params.l_cr;
        next.in_realignment = false;
        let a_r = match params.mode {
            Mode::Rps => adaptive_rate(l, d, params),
            Mode::Nps => 0.0,
        };
        let (vx, vy) = linear_velocity(speed, a_r);
        debug.a_r = a_r;
        debug.sigma = 1.0;
        (Twist2D::new(vx, vy, omega_normal(vx, gamma, params)), Status::Pushing)
    };
    finish(next, status, raw, debug)
}

/// Stateful wrapper around [`controller_step`].
#[derive(Debug, Clone)]
pub struct Controller {
    params: ControllerParams,
    state: ControllerState,
}

impl Controller {
    pub fn new(params: ControllerParams) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            state: ControllerState::new(&params),
            params,
        })
    }

    pub fn params(&self) -> &ControllerParams {
        &self.params
    }

    pub fn state(&self) -> &ControllerState {
        &self.state
    }

    pub fn step(&mut self, input: &ControllerInput) -> StepOutput {
        let out = controller_step(&self.state, input, &self.params);
        self.state = out.state.clone();
        out
    }
}
