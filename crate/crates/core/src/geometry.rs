//! Planar geometry shared by the tactile model, the controller and the simulator.
//!
//! Angles live on the half-open interval `[-π, π)`. [`Pose2D`] wraps its heading
//! on construction, so every consumer can assume a wrapped angle.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Result};

/// Wraps `theta` onto `[-π, π)`.
pub fn wrap_angle(theta: f64) -> Result<f64> {
    ensure_finite("angle", theta).map(wrap)
}

/// Wrapped heading error `target ⊖ current`.
pub fn angle_diff(target: f64, current: f64) -> Result<f64> {
    let target = ensure_finite("target angle", target)?;
    let current = ensure_finite("current angle", current)?;
    Ok(wrap(target - current))
}

/// Rotates `p` by `theta` (world ← robot when `theta` is the robot heading).
pub fn rotate(theta: f64, p: Vec2) -> Result<Vec2> {
    ensure_finite("angle", theta)?;
    ensure_finite("x", p.x)?;
    ensure_finite("y", p.y)?;
    Ok(p.rotated(theta))
}

/// Unchecked wrap for internal hot paths where finiteness is already known.
pub(crate) fn wrap(theta: f64) -> f64 {
    let mut r = (theta + PI).rem_euclid(TAU) - PI;
    // rem_euclid may round up to exactly TAU for tiny negative arguments.
    if r >= PI {
        r -= TAU;
    }
    if r < -PI {
        r += TAU;
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    pub fn rotated(self, theta: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Velocity of a point at lever arm `self` on a body spinning at `omega`.
    pub fn cross_scalar(omega: f64, r: Vec2) -> Vec2 {
        Vec2::new(-omega * r.y, omega * r.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Vec2 {
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Planar pose. The heading is wrapped to `[-π, π)` whenever it is set.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "RawPose")]
pub struct Pose2D {
    pub x: f64,
    pub y: f64,
    theta: f64,
}

#[derive(Deserialize)]
struct RawPose {
    x: f64,
    y: f64,
    #[serde(default)]
    theta: f64,
}

impl From<RawPose> for Pose2D {
    fn from(raw: RawPose) -> Self {
        Pose2D::new(raw.x, raw.y, raw.theta)
    }
}

impl Pose2D {
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: wrap(theta),
        }
    }

    pub fn from_position(position: Vec2, theta: f64) -> Self {
        Self::new(position.x, position.y, theta)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn set_theta(&mut self, theta: f64) {
        self.theta = wrap(theta);
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    /// Maps a point from this frame into the parent frame.
    pub fn transform_point(&self, local: Vec2) -> Vec2 {
        self.position() + local.rotated(self.theta)
    }

    /// Maps a parent-frame point into this frame.
    pub fn inverse_transform_point(&self, world: Vec2) -> Vec2 {
        (world - self.position()).rotated(-self.theta)
    }

    pub fn transform_vector(&self, local: Vec2) -> Vec2 {
        local.rotated(self.theta)
    }

    pub fn inverse_transform_vector(&self, world: Vec2) -> Vec2 {
        world.rotated(-self.theta)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.theta.is_finite()
    }
}

/// Body-frame velocity command `[v_x, v_y, ω]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Twist2D {
    pub vx: f64,
    pub vy: f64,
    pub omega: f64,
}

impl Twist2D {
    pub const ZERO: Twist2D = Twist2D {
        vx: 0.0,
        vy: 0.0,
        omega: 0.0,
    };

    pub const fn new(vx: f64, vy: f64, omega: f64) -> Self {
        Self { vx, vy, omega }
    }

    pub fn linear(&self) -> Vec2 {
        Vec2::new(self.vx, self.vy)
    }

    pub fn linear_speed(&self) -> f64 {
        self.linear().norm()
    }

    pub fn is_finite(&self) -> bool {
        self.vx.is_finite() && self.vy.is_finite() && self.omega.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    use super::*;

    /// Shifts by whole turns until the value lands in [-π, π).
    fn wrap_by_stepping(mut theta: f64) -> f64 {
        while theta >= PI {
            theta -= TAU;
        }
        while theta < -PI {
            theta += TAU;
        }
        theta
    }

    #[test]
    fn wrap_examples() {
        assert_eq!(wrap_angle(0.0).unwrap(), 0.0);
        assert_eq!(wrap_angle(PI).unwrap(), -PI);
        assert_abs_diff_eq!(wrap_angle(3.0 * FRAC_PI_2).unwrap(), -FRAC_PI_2, epsilon = 1e-15);
        assert_eq!(wrap_angle(-PI).unwrap(), -PI);
        assert!(wrap_angle(f64::NAN).is_err());
        assert!(wrap_angle(f64::INFINITY).is_err());
    }

    #[test]
    fn wrap_tiny_negative_stays_in_range() {
        let r = wrap(-1e-18);
        assert!((-PI..PI).contains(&r));
    }

    #[test]
    fn angle_diff_examples() {
        assert_eq!(angle_diff(FRAC_PI_2, FRAC_PI_2).unwrap(), 0.0);
        assert_abs_diff_eq!(angle_diff(FRAC_PI_4, 0.0).unwrap(), FRAC_PI_4, epsilon = 1e-15);
        let expected = wrap_by_stepping(-3.0 - 3.0);
        assert_abs_diff_eq!(expected, TAU - 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(angle_diff(-3.0, 3.0).unwrap(), expected, epsilon = 1e-12);
        assert!(angle_diff(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn rotate_examples() {
        assert_eq!(rotate(0.0, Vec2::new(1.0, 0.0)).unwrap(), Vec2::new(1.0, 0.0));
        let r = rotate(FRAC_PI_2, Vec2::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(r.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.y, 1.0, epsilon = 1e-15);
        // explicit matrix product [[c, -s], [s, c]] · (1, 0)
        let (c, s) = (FRAC_PI_4.cos(), FRAC_PI_4.sin());
        let r = rotate(FRAC_PI_4, Vec2::new(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(r.x, c * 1.0 - s * 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.y, s * 1.0 + c * 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.x, 2f64.sqrt() / 2.0, epsilon = 1e-12);
        assert!(rotate(f64::NAN, Vec2::ZERO).is_err());
    }

    #[test]
    fn pose_wraps_on_construction() {
        let p = Pose2D::new(1.0, 2.0, 3.0 * PI);
        assert_abs_diff_eq!(p.theta(), -PI, epsilon = 1e-12);
        let parsed: Pose2D = serde_json::from_str(r#"{"x":0,"y":0,"theta":7.0}"#).unwrap();
        assert_abs_diff_eq!(parsed.theta(), 7.0 - TAU, epsilon = 1e-12);
    }

    #[test]
    fn pose_transform_round_trip() {
        let pose = Pose2D::new(1.0, -2.0, 0.7);
        let local = Vec2::new(0.3, 0.4);
        let back = pose.inverse_transform_point(pose.transform_point(local));
        assert_abs_diff_eq!(back.x, local.x, epsilon = 1e-12);
        assert_abs_diff_eq!(back.y, local.y, epsilon = 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn wrap_in_range_and_congruent(theta in -200.0f64..200.0) {
            let w = wrap_angle(theta).unwrap();
            prop_assert!((-PI..PI).contains(&w));
            let turns = (w - theta) / TAU;
            prop_assert!((turns - turns.round()).abs() * TAU < 1e-12);
        }

        #[test]
        fn angle_diff_antisymmetric(a in -10.0f64..10.0, b in -10.0f64..10.0) {
            let ab = angle_diff(a, b).unwrap();
            let ba = angle_diff(b, a).unwrap();
            prop_assume!(ab != -PI && ba != -PI);
            prop_assert!((ab + ba).abs() < 1e-12);
        }

        #[test]
        fn rotation_preserves_norm(theta in -10.0f64..10.0, x in -100.0f64..100.0, y in -100.0f64..100.0) {
            let p = Vec2::new(x, y);
            let r = rotate(theta, p).unwrap();
            prop_assert!((r.norm() - p.norm()).abs() < 1e-12);
        }
    }
}
