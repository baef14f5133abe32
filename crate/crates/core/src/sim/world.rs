use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::collision::{detect_contact, ContactManifold};
use super::friction::{penalty_normal, regularized_coulomb, support_levers, BodyVelocity, ContactForce, ContactGains, DEFAULT_EPS_V, GRAVITY};
use super::object::ObjectModel;
use super::shape::ConvexPolygon;
use super::RobotFootprint;
use crate::error::{Error, Result};
use crate::geometry::{Pose2D, Twist2D, Vec2};

const MAX_FRICTION_ITERATIONS: usize = 40;
const FRICTION_TOLERANCE: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    /// Physics step, seconds. Must lie in (0, 0.01].
    pub dt: f64,
    pub gains: ContactGains,
    pub gravity: f64,
    /// Friction regularization speed, m/s.
    pub eps_v: f64,
    pub robot: RobotFootprint,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            gains: ContactGains::default(),
            gravity: GRAVITY,
            eps_v: DEFAULT_EPS_V,
            robot: RobotFootprint::default(),
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt <= 0.01) {
            return Err(Error::Scenario(format!("dt must lie in (0, 0.01], got {}", self.dt)));
        }
        let positive = [
            ("stiffness", self.gains.stiffness),
            ("gravity", self.gravity),
            ("eps_v", self.eps_v),
        ];
        for (what, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Scenario(format!("{what} must be positive, got {v}")));
            }
        }
        if self.gains.damping.is_nan() || self.gains.damping < 0.0 {
            return Err(Error::Scenario("damping must be non-negative".into()));
        }
        self.robot.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct WorldState {
    pub time: f64,
    pub robot: Pose2D,
    pub robot_twist: Twist2D,
    /// Pose of the object's body frame (footprint centre).
    pub object: Pose2D,
    pub object_velocity: BodyVelocity,
}

/// Per-step force bookkeeping, used for invariant checks.
#[derive(Debug, Clone, Default)]
pub struct StepReport {
    pub manifold: ContactManifold,
    pub contact_forces: Vec<ContactForce>,
    pub mu_robot: f64,
    pub kinetic_energy_before: f64,
    pub kinetic_energy_after: f64,
    /// Work done on the object by the robot contact over the step (end-of-step velocity).
    pub contact_work: f64,
    /// Largest ground friction force over its cone limit μ·m·g·w (≤ 1 when admissible).
    pub ground_cone_ratio: f64,
}

impl StepReport {
    /// Largest `|f_t| - μ N` over the contact points.
    pub fn cone_excess(&self) -> f64 {
        self.contact_forces
            .iter()
            .map(|f| f.tangential.norm() - self.mu_robot * f.normal)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Robot base plus one pushed object.
#[derive(Debug, Clone)]
pub struct World {
    config: SimConfig,
    object_model: ObjectModel,
    robot_shape: ConvexPolygon,
    state: WorldState,
    manifold: ContactManifold,
    steps: u64,
}

impl World {
    pub fn new(config: SimConfig, object_model: ObjectModel, robot: Pose2D, object: Pose2D) -> Result<Self> {
        config.validate()?;
        object_model.validate()?;
        let robot_shape = config.robot.polygon()?;
        let mut world = Self {
            config,
            object_model,
            robot_shape,
            state: WorldState {
                time: 0.0,
                robot,
                robot_twist: Twist2D::ZERO,
                object,
                object_velocity: BodyVelocity::default(),
            },
            manifold: ContactManifold::empty(),
            steps: 0,
        };
        world.manifold = world.detect();
        Ok(world)
    }

    pub fn state(&self) -> &WorldState {
        &self.state
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn object_model(&self) -> &ObjectModel {
        &self.object_model
    }

    pub fn robot_shape(&self) -> &ConvexPolygon {
        &self.robot_shape
    }

    /// Contact manifold at the current poses.
    pub fn manifold(&self) -> &ContactManifold {
        &self.manifold
    }

    fn detect(&self) -> ContactManifold {
        detect_contact(&self.state.robot, &self.robot_shape, &self.state.object, &self.object_model.footprint)
    }

    fn com(&self) -> Vec2 {
        self.state.object.transform_point(self.object_model.com_offset)
    }

    fn kinetic_energy(&self, v: &BodyVelocity) -> f64 {
        0.5 * self.object_model.mass * v.linear.norm_squared() + 0.5 * self.object_model.inertia * v.omega * v.omega
    }

    /// Advances the world by one physics step with the robot tracking `command` exactly.
    pub fn step(&mut self, command: Twist2D) -> Result<StepReport> {
        if !command.is_finite() {
            return Err(self.diverged("non-finite command"));
        }
        let dt = self.config.dt;
        let model = &self.object_model;
        let mass = model.mass;
        let inertia = model.inertia;
        let eps_v = self.config.eps_v;
        let robot = self.state.robot;
        let object = self.state.object;
        let com = self.com();
        let v0 = self.state.object_velocity;
        let robot_linear = robot.transform_vector(command.linear());

        let manifold = self.manifold;
        let contacts = manifold.points();

        // Per-contact data: lever from COM, normal load, tangent, robot point velocity.
        let mut normal_loads = [0.0; 2];
        let mut levers = [Vec2::ZERO; 2];
        let mut robot_point_vel = [Vec2::ZERO; 2];
        let mut generalized_normal = Vector3::zeros();
        for (i, c) in contacts.iter().enumerate() {
            levers[i] = c.position - com;
            robot_point_vel[i] = robot_linear + Vec2::cross_scalar(command.omega, c.position - robot.position());
            let rel = v0.point_velocity(levers[i]) - robot_point_vel[i];
            normal_loads[i] = penalty_normal(c, rel, &self.config.gains);
            let f = c.normal * normal_loads[i];
            generalized_normal += Vector3::new(f.x, f.y, levers[i].cross(f));
        }

        let ground: Vec<(Vec2, f64)> = support_levers(model, &object)
            .map(|(lever, w)| (lever, w * mass * self.config.gravity))
            .collect();

        let m_diag = Matrix3::from_diagonal(&Vector3::new(mass, mass, inertia));
        let momentum = m_diag * Vector3::new(v0.linear.x, v0.linear.y, v0.omega);

        // Implicit friction by iteratively reweighted solves of the regularized law.
        let mut x = Vector3::new(v0.linear.x, v0.linear.y, v0.omega);
        for _ in 0..MAX_FRICTION_ITERATIONS {
            let current = to_body(&x);
            let mut a = m_diag;
            let mut b = momentum + generalized_normal * dt;
            for &(lever, load) in &ground {
                let slip = current.point_velocity(lever);
                let c = model.mu_ground * load / slip.norm().max(eps_v);
                add_point_damping(&mut a, lever, c * dt);
            }
            for (i, contact) in contacts.iter().enumerate() {
                if normal_loads[i] <= 0.0 {
                    continue;
                }
                let n = contact.normal;
                let t = n.perp();
                let rel = current.point_velocity(levers[i]) - robot_point_vel[i];
                let c = model.mu_robot * normal_loads[i] / t.dot(rel).abs().max(eps_v);
                let j = Vector3::new(t.x, t.y, levers[i].cross(t));
                a += j * j.transpose() * (c * dt);
                b += j * (c * dt * t.dot(robot_point_vel[i]));
            }
            let next = a
                .cholesky()
                .map(|ch| ch.solve(&b))
                .or_else(|| a.lu().solve(&b))
                .ok_or_else(|| self.diverged("singular friction system"))?;
            let change = (next - x).amax();
            x = next;
            if change < FRICTION_TOLERANCE {
                break;
            }
        }

        // Final forces from the exact law at the converged velocity.
        let solved = to_body(&x);
        let mut total = generalized_normal;
        let mut robot_generalized = generalized_normal;
        let mut contact_forces = Vec::with_capacity(contacts.len());
        for (i, contact) in contacts.iter().enumerate() {
            let n = contact.normal;
            let rel = solved.point_velocity(levers[i]) - robot_point_vel[i];
            let slip = rel - n * n.dot(rel);
            let ft = regularized_coulomb(slip, model.mu_robot, normal_loads[i], eps_v);
            let g = Vector3::new(ft.x, ft.y, levers[i].cross(ft));
            total += g;
            robot_generalized += g;
            contact_forces.push(ContactForce {
                normal: normal_loads[i],
                tangential: ft,
            });
        }
        let mut ground_cone_ratio: f64 = 0.0;
        for &(lever, load) in &ground {
            let f = regularized_coulomb(solved.point_velocity(lever), model.mu_ground, load, eps_v);
            if load > 0.0 {
                ground_cone_ratio = ground_cone_ratio.max(f.norm() / (model.mu_ground * load));
            }
            total += Vector3::new(f.x, f.y, lever.cross(f));
        }
        let x_new = Vector3::new(
            v0.linear.x + dt * total.x / mass,
            v0.linear.y + dt * total.y / mass,
            v0.omega + dt * total.z / inertia,
        );
        let v_new = to_body(&x_new);

        let ke_before = self.kinetic_energy(&v0);
        let ke_after = self.kinetic_energy(&v_new);
        let contact_work = dt * robot_generalized.dot(&x_new);

        // Semi-implicit update: positions from the new velocities.
        let new_com = com + v_new.linear * dt;
        let new_theta = object.theta() + v_new.omega * dt;
        let offset = self.object_model.com_offset.rotated(new_theta);
        self.state.object = Pose2D::from_position(new_com - offset, new_theta);
        self.state.object_velocity = v_new;

        self.state.robot = Pose2D::from_position(robot.position() + robot_linear * dt, robot.theta() + command.omega * dt);
        self.state.robot_twist = command;
        self.steps += 1;
        self.state.time = self.steps as f64 * dt;

        if !(self.state.object.is_finite() && self.state.robot.is_finite() && x_new.iter().all(|v| v.is_finite())) {
            return Err(self.diverged("non-finite state"));
        }

        self.manifold = self.detect();
        Ok(StepReport {
            manifold,
            contact_forces,
            mu_robot: self.object_model.mu_robot,
            kinetic_energy_before: ke_before,
            kinetic_energy_after: ke_after,
            contact_work,
            ground_cone_ratio,
        })
    }

    fn diverged(&self, reason: &str) -> Error {
        Error::Diverged {
            time: self.state.time,
            reason: reason.to_string(),
        }
    }
}

fn to_body(x: &Vector3<f64>) -> BodyVelocity {
    BodyVelocity {
        linear: Vec2::new(x.x, x.y),
        omega: x.z,
    }
}

/// Adds `c · Jᵀ J` for a point at `lever`, where `J x` is the point velocity.
fn add_point_damping(a: &mut Matrix3<f64>, lever: Vec2, c: f64) {
    let (rx, ry) = (lever.x, lever.y);
    a[(0, 0)] += c;
    a[(1, 1)] += c;
    a[(0, 2)] -= c * ry;
    a[(2, 0)] -= c * ry;
    a[(1, 2)] += c * rx;
    a[(2, 1)] += c * rx;
    a[(2, 2)] += c * (rx * rx + ry * ry);
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;

    use super::*;
    use crate::sim::object::{make_object, FrictionSet, ObjectKind};

    fn box_world(gap: f64) -> World {
        let cfg = SimConfig::default();
        let front = cfg.robot.front_x();
        let model = make_object(ObjectKind::UniformBox, FrictionSet::S1);
        World::new(cfg, model, Pose2D::default(), Pose2D::new(front + 0.2 + gap, 0.0, 0.0)).unwrap()
    }

    #[test]
    fn free_robot_moves_kinematically() {
        let mut w = box_world(1.0);
        let object_before = w.state().object;
        for _ in 0..1000 {
            w.step(Twist2D::new(0.05, 0.0, 0.0)).unwrap();
        }
        assert_abs_diff_eq!(w.state().robot.x, 0.05, epsilon = 1e-12);
        assert_abs_diff_eq!(w.state().time, 1.0, epsilon = 1e-9);
        assert_eq!(w.state().object, object_before);
    }

    #[test]
    fn resting_object_stays_at_rest() {
        let mut w = box_world(0.5);
        let before = w.state().object;
        for _ in 0..5000 {
            w.step(Twist2D::ZERO).unwrap();
        }
        assert_eq!(w.state().object, before);
        assert_eq!(w.state().object_velocity, BodyVelocity::default());
    }

    #[test]
    fn straight_push_tracks_commanded_speed() {
        let mut w = box_world(0.0);
        let mut max_pen: f64 = 0.0;
        for _ in 0..10_000 {
            let report = w.step(Twist2D::new(0.05, 0.0, 0.0)).unwrap();
            max_pen = max_pen.max(report.manifold.max_penetration());
            assert!(report.cone_excess() <= 1e-9);
        }
        let speed = w.state().object_velocity.speed();
        assert!((speed - 0.05).abs() / 0.05 < 0.05, "speed {speed}");
        assert!(max_pen < 0.002, "penetration {max_pen}");
        // balance: steady penetration carries μ m g across the face
        assert_abs_diff_eq!(w.state().object.theta(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn object_stops_when_pushing_stops() {
        let mut w = box_world(0.0);
        for _ in 0..3000 {
            w.step(Twist2D::new(0.05, 0.0, 0.0)).unwrap();
        }
        for _ in 0..500 {
            w.step(Twist2D::ZERO).unwrap();
        }
        assert!(w.state().object_velocity.speed() < 1e-4);
    }

    #[test]
    fn rejects_bad_timestep() {
        let cfg = SimConfig {
            dt: 0.02,
            ..SimConfig::default()
        };
        let model = make_object(ObjectKind::UniformBox, FrictionSet::S1);
        assert!(World::new(cfg, model, Pose2D::default(), Pose2D::new(2.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn non_finite_command_aborts() {
        let mut w = box_world(0.0);
        assert!(matches!(w.step(Twist2D::new(f64::NAN, 0.0, 0.0)), Err(Error::Diverged { .. })));
    }
}
