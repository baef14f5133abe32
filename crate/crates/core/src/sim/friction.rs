//! Regularized Coulomb friction and penalty contact forces.
//!
//! Below `eps_v` the friction force grows linearly with slip speed; above it the
//! magnitude is capped at `μN`. The same law is used for the support patch
//! under the object and for the robot/object interface.

use serde::{Deserialize, Serialize};

use super::collision::ContactPoint;
use super::object::ObjectModel;
use crate::geometry::{Pose2D, Vec2};

pub const GRAVITY: f64 = 9.81;
pub const DEFAULT_EPS_V: f64 = 1e-4;

/// Regularized Coulomb force for slip velocity `slip` and normal load `normal`.
pub fn regularized_coulomb(slip: Vec2, mu: f64, normal: f64, eps_v: f64) -> Vec2 {
    slip * (-mu * normal / slip.norm().max(eps_v))
}

/// Planar rigid-body velocity of the object: COM velocity (world) and yaw rate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct BodyVelocity {
    pub linear: Vec2,
    pub omega: f64,
}

impl BodyVelocity {
    pub fn point_velocity(&self, lever: Vec2) -> Vec2 {
        self.linear + Vec2::cross_scalar(self.omega, lever)
    }

    pub fn speed(&self) -> f64 {
        self.linear.norm()
    }
}

/// World-frame lever arms from the COM to each support point.
pub(crate) fn support_levers<'a>(model: &'a ObjectModel, pose: &'a Pose2D) -> impl Iterator<Item = (Vec2, f64)> + 'a {
    model
        .support
        .iter()
        .map(move |s| (pose.transform_vector(s.position - model.com_offset), s.weight))
}

/// Net ground friction force and torque about the COM.
pub fn ground_friction_wrench(pose: &Pose2D, velocity: &BodyVelocity, model: &ObjectModel, gravity: f64, eps_v: f64) -> (Vec2, f64) {
    let weight = model.mass * gravity;
    let mut force = Vec2::ZERO;
    let mut torque = 0.0;
    for (lever, w) in support_levers(model, pose) {
        let f = regularized_coulomb(velocity.point_velocity(lever), model.mu_ground, weight * w, eps_v);
        force += f;
        torque += lever.cross(f);
    }
    (force, torque)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContactGains {
    /// Penalty stiffness, N/m.
    pub stiffness: f64,
    /// Penalty damping on penetration rate, N·s/m.
    pub damping: f64,
}

impl Default for ContactGains {
    fn default() -> Self {
        Self {
            stiffness: 5e4,
            damping: 200.0,
        }
    }
}

/// Force exerted by the robot on the object at one contact point.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ContactForce {
    pub normal: f64,
    /// Tangential component, world frame.
    pub tangential: Vec2,
}

impl ContactForce {
    pub fn total(&self, normal_dir: Vec2) -> Vec2 {
        normal_dir * self.normal + self.tangential
    }
}

/// Penalty normal force from penetration and its rate (clamped at zero).
pub fn penalty_normal(contact: &ContactPoint, relative_velocity: Vec2, gains: &ContactGains) -> f64 {
    if contact.penetration <= 0.0 {
        return 0.0;
    }
    // relative_velocity is object minus robot; approach shrinks n · rel
    let penetration_rate = -contact.normal.dot(relative_velocity);
    (gains.stiffness * contact.penetration + gains.damping * penetration_rate).max(0.0)
}

/// Explicit penalty + regularized Coulomb force for each manifold point.
///
/// `relative_velocities[i]` is the object point velocity minus the robot point
/// velocity at contact `i`.
pub fn robot_contact_wrench(
    contacts: &[ContactPoint],
    relative_velocities: &[Vec2],
    mu_robot: f64,
    gains: &ContactGains,
    eps_v: f64,
) -> Vec<ContactForce> {
    contacts
        .iter()
        .zip(relative_velocities)
        .map(|(c, rel)| {
            let normal = penalty_normal(c, *rel, gains);
            let slip = *rel - c.normal * c.normal.dot(*rel);
            ContactForce {
                normal,
                tangential: regularized_coulomb(slip, mu_robot, normal, eps_v),
            }
        })
        .collect()
}
