//! Planar pushing world: a velocity-controlled rectangular base, one pushed
//! object with support-patch friction, and penalty contact between them.

pub mod collision;
pub mod friction;
pub mod object;
pub mod shape;
pub mod world;

use serde::{Deserialize, Serialize};

pub use collision::{detect_contact, ContactManifold, ContactPoint};
pub use friction::{ground_friction_wrench, robot_contact_wrench, BodyVelocity, ContactForce, ContactGains};
pub use object::{make_object, FrictionSet, ObjectKind, ObjectModel, SupportPoint};
pub use shape::{ConvexPolygon, Footprint};
pub use world::{SimConfig, StepReport, World, WorldState};

use crate::error::{Error, Result};

/// Rectangular base footprint centred on the robot frame origin, x forward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RobotFootprint {
    /// Half of the front edge width, meters.
    pub half_width: f64,
    /// Front-to-back length, meters.
    pub length: f64,
}

impl Default for RobotFootprint {
    fn default() -> Self {
        Self {
            half_width: 0.29,
            length: 0.75,
        }
    }
}

impl RobotFootprint {
    pub fn front_x(&self) -> f64 {
        0.5 * self.length
    }

    pub fn polygon(&self) -> Result<ConvexPolygon> {
        ConvexPolygon::rectangle(self.length, 2.0 * self.half_width)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.length > 0.0) {
            return Err(Error::Geometry(format!("robot footprint must have positive size: {self:?}")));
        }
        Ok(())
    }
}
