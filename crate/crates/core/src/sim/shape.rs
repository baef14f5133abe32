use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec2;

/// Convex polygon with counter-clockwise vertices in its body frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec2>", into = "Vec<Vec2>")]
pub struct ConvexPolygon {
    vertices: Vec<Vec2>,
    normals: Vec<Vec2>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Geometry(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::Geometry("non-finite polygon vertex".into()));
        }
        let n = vertices.len();
        let mut normals = Vec::with_capacity(n);
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if (b - a).cross(c - b) <= 0.0 {
                return Err(Error::Geometry(
                    "polygon must be strictly convex and counter-clockwise".into(),
                ));
            }
            let edge = b - a;
            let normal = Vec2::new(edge.y, -edge.x)
                .normalized()
                .ok_or_else(|| Error::Geometry("zero-length polygon edge".into()))?;
            normals.push(normal);
        }
        let poly = Self { vertices, normals };
        if poly.area() <= 1e-12 {
            return Err(Error::Geometry("zero-area polygon".into()));
        }
        Ok(poly)
    }

    /// Axis-aligned rectangle centred on the origin.
    pub fn rectangle(length_x: f64, width_y: f64) -> Result<Self> {
        let (hx, hy) = (0.5 * length_x, 0.5 * width_y);
        Self::new(vec![
            Vec2::new(-hx, -hy),
            Vec2::new(hx, -hy),
            Vec2::new(hx, hy),
            Vec2::new(-hx, hy),
        ])
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Outward unit normal of edge `i` (from vertex `i` to vertex `i + 1`).
    pub fn normals(&self) -> &[Vec2] {
        &self.normals
    }

    pub fn edge(&self, i: usize) -> (Vec2, Vec2) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        0.5 * (0..n)
            .map(|i| self.vertices[i].cross(self.vertices[(i + 1) % n]))
            .sum::<f64>()
    }

    pub fn centroid(&self) -> Vec2 {
        let n = self.vertices.len();
        let mut acc = Vec2::ZERO;
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            acc += (a + b) * a.cross(b);
        }
        acc * (1.0 / (6.0 * self.area()))
    }

    /// Polar second moment of area about the origin, per unit mass.
    pub fn unit_inertia_about_origin(&self) -> f64 {
        let n = self.vertices.len();
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            let c = a.cross(b);
            num += c * (a.dot(a) + a.dot(b) + b.dot(b));
            den += c;
        }
        num / (6.0 * den)
    }

    pub fn signed_distance(&self, p: Vec2) -> f64 {
        let separation = self
            .vertices
            .iter()
            .zip(&self.normals)
            .map(|(v, n)| n.dot(p - *v))
            .fold(f64::NEG_INFINITY, f64::max);
        if separation <= 0.0 {
            return separation;
        }
        (0..self.vertices.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                distance_to_segment(p, a, b)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

impl TryFrom<Vec<Vec2>> for ConvexPolygon {
    type Error = Error;
    fn try_from(v: Vec<Vec2>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ConvexPolygon> for Vec<Vec2> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices
    }
}

pub(crate) fn distance_to_segment(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let t = ((p - a).dot(ab) / ab.norm_squared()).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Planar footprint of a body, expressed in its own frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Footprint {
    Polygon { vertices: ConvexPolygon },
    Disk { radius: f64 },
}

impl Footprint {
    pub fn disk(radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Geometry(format!("disk radius must be positive, got {radius}")));
        }
        Ok(Footprint::Disk { radius })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            // polygons are validated when constructed
            Footprint::Polygon { .. } => Ok(()),
            Footprint::Disk { radius } => Self::disk(*radius).map(|_| ()),
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Footprint::Polygon { vertices } => vertices.area(),
            Footprint::Disk { radius } => std::f64::consts::PI * radius * radius,
        }
    }

    /// Negative inside, positive outside.
    pub fn signed_distance(&self, p: Vec2) -> f64 {
        match self {
            Footprint::Polygon { vertices } => vertices.signed_distance(p),
            Footprint::Disk { radius } => p.norm() - radius,
        }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        self.signed_distance(p) <= 0.0
    }

    /// Half extent along the body x axis, used for placing the object in front of the robot.
    pub fn half_depth_x(&self) -> f64 {
        match self {
            Footprint::Polygon { vertices } => vertices
                .vertices()
                .iter()
                .map(|v| v.x.abs())
                .fold(0.0, f64::max),
            Footprint::Disk { radius } => *radius,
        }
    }
}
