use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::shape::{ConvexPolygon, Footprint};
use crate::error::{Error, Result};
use crate::geometry::Vec2;

/// The three test objects of the simulation campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectKind {
    UniformBox,
    NonuniformBox,
    Cylinder,
}

impl ObjectKind {
    pub const ALL: [ObjectKind; 3] = [ObjectKind::UniformBox, ObjectKind::Cylinder, ObjectKind::NonuniformBox];

    pub fn name(self) -> &'static str {
        match self {
            ObjectKind::UniformBox => "uniform_box",
            ObjectKind::NonuniformBox => "nonuniform_box",
            ObjectKind::Cylinder => "cylinder",
        }
    }
}

impl std::str::FromStr for ObjectKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform_box" | "box" => Ok(ObjectKind::UniformBox),
            "nonuniform_box" => Ok(ObjectKind::NonuniformBox),
            "cylinder" => Ok(ObjectKind::Cylinder),
            other => Err(Error::Scenario(format!("unknown object '{other}'"))),
        }
    }
}

/// Object/ground and object/robot friction coefficient pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrictionSet {
    S1,
    S2,
}

impl FrictionSet {
    pub const ALL: [FrictionSet; 2] = [FrictionSet::S1, FrictionSet::S2];

    /// `(mu_ground, mu_robot)`
    pub fn coefficients(self) -> (f64, f64) {
        match self {
            FrictionSet::S1 => (0.3, 0.35),
            FrictionSet::S2 => (0.2, 0.5),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FrictionSet::S1 => "s1",
            FrictionSet::S2 => "s2",
        }
    }
}

impl std::str::FromStr for FrictionSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s1" => Ok(FrictionSet::S1),
            "s2" => Ok(FrictionSet::S2),
            other => Err(Error::Scenario(format!("unknown friction set '{other}'"))),
        }
    }
}

/// A point of the support patch, in the body frame, carrying a share of the weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportPoint {
    pub position: Vec2,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectModel {
    pub footprint: Footprint,
    pub mass: f64,
    /// Centre of mass in the body frame (the body frame origin is the footprint centre).
    pub com_offset: Vec2,
    /// Yaw inertia about the centre of mass.
    pub inertia: f64,
    pub support: Vec<SupportPoint>,
    pub mu_ground: f64,
    pub mu_robot: f64,
}

const BOX_GRID: usize = 5;

pub const UNIFORM_BOX_SIDE: f64 = 0.40;
pub const UNIFORM_BOX_MASS: f64 = 20.0;
pub const NONUNIFORM_BOX_SIDE: f64 = 0.45;
pub const NONUNIFORM_BOX_MASS: f64 = 5.0;
pub const NONUNIFORM_WEIGHT_MASS: f64 = 10.0;
pub const NONUNIFORM_WEIGHT_RADIUS: f64 = 0.10;
pub const CYLINDER_RADIUS: f64 = 0.25;
pub const CYLINDER_MASS: f64 = 25.0;

/// Centre of the extra cylinder on the nonuniform box: the rear-left corner
/// (+x away from the pusher, +y to the left) inset by the cylinder radius.
pub fn nonuniform_weight_center() -> Vec2 {
    let c = 0.5 * NONUNIFORM_BOX_SIDE - NONUNIFORM_WEIGHT_RADIUS;
    Vec2::new(c, c)
}

pub fn make_object(kind: ObjectKind, friction: FrictionSet) -> ObjectModel {
    let (mu_ground, mu_robot) = friction.coefficients();
    match kind {
        ObjectKind::UniformBox => {
            let side = UNIFORM_BOX_SIDE;
            let mass = UNIFORM_BOX_MASS;
            ObjectModel {
                footprint: square(side),
                mass,
                com_offset: Vec2::ZERO,
                inertia: mass * (side * side + side * side) / 12.0,
                support: grid_support(side, |_| 1.0),
                mu_ground,
                mu_robot,
            }
        }
        ObjectKind::Cylinder => {
            let r = CYLINDER_RADIUS;
            let mass = CYLINDER_MASS;
            ObjectModel {
                footprint: Footprint::Disk { radius: r },
                mass,
                com_offset: Vec2::ZERO,
                inertia: 0.5 * mass * r * r,
                support: disk_support(r),
                mu_ground,
                mu_robot,
            }
        }
        ObjectKind::NonuniformBox => {
            let side = NONUNIFORM_BOX_SIDE;
            let c = nonuniform_weight_center();
            let (m_box, m_cyl) = (NONUNIFORM_BOX_MASS, NONUNIFORM_WEIGHT_MASS);
            let mass = m_box + m_cyl;
            let com = c * (m_cyl / mass);
            let r = NONUNIFORM_WEIGHT_RADIUS;
            // inertia about the box centre, then shifted to the COM
            let about_center = m_box * (2.0 * side * side) / 12.0 + 0.5 * m_cyl * r * r + m_cyl * c.norm_squared();
            let inertia = about_center - mass * com.norm_squared();
            let cell_mass = |cell: Cell| {
                let box_share = m_box * cell.area() / (side * side);
                box_share + m_cyl * cell.disk_overlap_fraction(c, r)
            };
            ObjectModel {
                footprint: square(side),
                mass,
                com_offset: com,
                inertia,
                support: grid_support(side, cell_mass),
                mu_ground,
                mu_robot,
            }
        }
    }
}

fn square(side: f64) -> Footprint {
    Footprint::Polygon {
        vertices: ConvexPolygon::rectangle(side, side).expect("positive side"),
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    min: Vec2,
    size: f64,
}

impl Cell {
    fn area(&self) -> f64 {
        self.size * self.size
    }

    /// Fraction of a disk's area that falls inside this cell, by midpoint sampling.
    fn disk_overlap_fraction(&self, center: Vec2, radius: f64) -> f64 {
        const N: usize = 64;
        let h = self.size / N as f64;
        let mut inside = 0usize;
        for i in 0..N {
            for j in 0..N {
                let p = self.min + Vec2::new((i as f64 + 0.5) * h, (j as f64 + 0.5) * h);
                if (p - center).norm() <= radius {
                    inside += 1;
                }
            }
        }
        inside as f64 * h * h / (PI * radius * radius)
    }
}

/// Cell-centred `BOX_GRID`² support grid over a square, weights ∝ `cell_mass`.
fn grid_support(side: f64, cell_mass: impl Fn(Cell) -> f64) -> Vec<SupportPoint> {
    let size = side / BOX_GRID as f64;
    let mut points = Vec::with_capacity(BOX_GRID * BOX_GRID);
    for i in 0..BOX_GRID {
        for j in 0..BOX_GRID {
            let min = Vec2::new(-0.5 * side + i as f64 * size, -0.5 * side + j as f64 * size);
            let cell = Cell { min, size };
            points.push(SupportPoint {
                position: min + Vec2::new(0.5 * size, 0.5 * size),
                weight: cell_mass(cell),
            });
        }
    }
    normalize(points)
}

/// Centre point plus rings of 8 and 16 points. Each ring sits at the area
/// centroid radius of its annulus and carries the annulus' area share.
fn disk_support(radius: f64) -> Vec<SupportPoint> {
    let bounds = [0.0, 0.2, 0.6, 1.0];
    let counts = [8usize, 16];
    let mut points = vec![SupportPoint {
        position: Vec2::ZERO,
        weight: bounds[1] * bounds[1],
    }];
    for (ring, &count) in counts.iter().enumerate() {
        let (a, b) = (bounds[ring + 1], bounds[ring + 2]);
        let share = b * b - a * a;
        let r = radius * (2.0 / 3.0) * (b.powi(3) - a.powi(3)) / (b * b - a * a);
        for k in 0..count {
            let phi = TAU * k as f64 / count as f64;
            points.push(SupportPoint {
                position: Vec2::new(r * phi.cos(), r * phi.sin()),
                weight: share / count as f64,
            });
        }
    }
    normalize(points)
}

fn normalize(mut points: Vec<SupportPoint>) -> Vec<SupportPoint> {
    let total: f64 = points.iter().map(|p| p.weight).sum();
    for p in &mut points {
        p.weight /= total;
    }
    points
}

impl ObjectModel {
    pub fn validate(&self) -> Result<()> {
        self.footprint.validate()?;
        let positive = |what: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Scenario(format!("{what} must be positive, got {v}")))
            }
        };
        positive("mass", self.mass)?;
        positive("inertia", self.inertia)?;
        if !(self.mu_ground >= 0.0 && self.mu_robot >= 0.0) {
            return Err(Error::Scenario("friction coefficients must be non-negative".into()));
        }
        if self.support.is_empty() || self.support.iter().any(|p| p.weight.is_nan() || p.weight < 0.0) {
            return Err(Error::Scenario("support weights must be non-negative".into()));
        }
        let total: f64 = self.support.iter().map(|p| p.weight).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Scenario(format!("support weights sum to {total}, expected 1")));
        }
        if !self.footprint.contains(self.com_offset) {
            return Err(Error::Scenario("centre of mass lies outside the footprint".into()));
        }
        Ok(())
    }
}
