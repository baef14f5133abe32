//! Narrow-phase contact between the robot footprint and the pushed object.
//!
//! Polygon pairs use the separating-axis test followed by reference/incident
//! face clipping, so face-on-face contact produces the two ends of the overlap
//! segment. Normals always point from the robot into the object.

use serde::{Deserialize, Serialize};

use super::shape::{ConvexPolygon, Footprint};
use crate::geometry::{Pose2D, Vec2};

/// Separation slack used when choosing the reference face, in meters.
const REFERENCE_FACE_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ContactPoint {
    /// World position of the deepest point of the penetrating feature.
    pub position: Vec2,
    /// Unit normal in the world frame, robot → object.
    pub normal: Vec2,
    /// Penetration depth, >= 0.
    pub penetration: f64,
}

/// Zero to two contact points.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ContactManifold {
    points: [ContactPoint; 2],
    len: usize,
}

impl ContactManifold {
    pub fn empty() -> Self {
        Self::default()
    }

    fn push(&mut self, p: ContactPoint) {
        debug_assert!(self.len < 2);
        self.points[self.len] = p;
        self.len += 1;
    }

    pub fn points(&self) -> &[ContactPoint] {
        &self.points[..self.len]
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn max_penetration(&self) -> f64 {
        self.points().iter().map(|p| p.penetration).fold(0.0, f64::max)
    }
}

/// World-frame copy of a polygon.
struct PlacedPolygon {
    vertices: Vec<Vec2>,
    normals: Vec<Vec2>,
}

impl PlacedPolygon {
    fn new(poly: &ConvexPolygon, pose: &Pose2D) -> Self {
        Self {
            vertices: poly.vertices().iter().map(|v| pose.transform_point(*v)).collect(),
            normals: poly.normals().iter().map(|n| pose.transform_vector(*n)).collect(),
        }
    }

    fn len(&self) -> usize {
        self.vertices.len()
    }

    fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.vertices.len()]
    }

    fn support_min(&self, dir: Vec2) -> f64 {
        self.vertices.iter().map(|v| v.dot(dir)).fold(f64::INFINITY, f64::min)
    }

    /// Edge of `self` whose separation from `other` is largest.
    fn max_separation(&self, other: &PlacedPolygon) -> (usize, f64) {
        let mut best = (0, f64::NEG_INFINITY);
        for i in 0..self.len() {
            let n = self.normals[i];
            let sep = other.support_min(n) - n.dot(self.vertices[i]);
            if sep > best.1 {
                best = (i, sep);
            }
        }
        best
    }
}

pub fn detect_contact(
    robot_pose: &Pose2D,
    robot_shape: &ConvexPolygon,
    object_pose: &Pose2D,
    object_shape: &Footprint,
) -> ContactManifold {
    match object_shape {
        Footprint::Polygon { vertices } => polygon_polygon(robot_pose, robot_shape, object_pose, vertices),
        Footprint::Disk { radius } => polygon_disk(robot_pose, robot_shape, object_pose.position(), *radius),
    }
}

fn polygon_polygon(
    robot_pose: &Pose2D,
    robot_shape: &ConvexPolygon,
    object_pose: &Pose2D,
    object_shape: &ConvexPolygon,
) -> ContactManifold {
    let mut manifold = ContactManifold::empty();
    let robot = PlacedPolygon::new(robot_shape, robot_pose);
    let object = PlacedPolygon::new(object_shape, object_pose);

    let (edge_r, sep_r) = robot.max_separation(&object);
    if sep_r > 0.0 {
        return manifold;
    }
    let (edge_o, sep_o) = object.max_separation(&robot);
    if sep_o > 0.0 {
        return manifold;
    }

    // Prefer the robot face so flush contact reports the object's face ends.
    let (reference, incident, ref_edge, flip) = if sep_o > sep_r + REFERENCE_FACE_SLACK {
        (&object, &robot, edge_o, true)
    } else {
        (&robot, &object, edge_r, false)
    };

    let ref_normal = reference.normals[ref_edge];
    let inc_edge = (0..incident.len())
        .min_by(|&a, &b| {
            let da = incident.normals[a].dot(ref_normal);
            let db = incident.normals[b].dot(ref_normal);
            da.total_cmp(&db)
        })
        .unwrap_or(0);
    let mut segment = [incident.vertex(inc_edge), incident.vertex(inc_edge + 1)];

    let v1 = reference.vertex(ref_edge);
    let v2 = reference.vertex(ref_edge + 1);
    let Some(tangent) = (v2 - v1).normalized() else {
        return manifold;
    };

    // Clip to the side planes of the reference face.
    if !clip(&mut segment, -tangent, -tangent.dot(v1)) || !clip(&mut segment, tangent, tangent.dot(v2)) {
        return manifold;
    }

    let normal = if flip { -ref_normal } else { ref_normal };
    for p in segment {
        let separation = ref_normal.dot(p - v1);
        if separation <= 0.0 {
            manifold.push(ContactPoint {
                position: p,
                normal,
                penetration: -separation,
            });
        }
    }
    manifold
}

/// Keeps the part of `segment` with `normal · p <= offset`.
fn clip(segment: &mut [Vec2; 2], normal: Vec2, offset: f64) -> bool {
    let d0 = normal.dot(segment[0]) - offset;
    let d1 = normal.dot(segment[1]) - offset;
    match (d0 <= 0.0, d1 <= 0.0) {
        (true, true) => true,
        (false, false) => false,
        (in0, _) => {
            let t = d0 / (d0 - d1);
            let cut = segment[0] + (segment[1] - segment[0]) * t;
            if in0 {
                segment[1] = cut;
            } else {
                segment[0] = cut;
            }
            true
        }
    }
}

fn polygon_disk(robot_pose: &Pose2D, robot_shape: &ConvexPolygon, center: Vec2, radius: f64) -> ContactManifold {
    let mut manifold = ContactManifold::empty();
    let local = robot_pose.inverse_transform_point(center);

    let (best_edge, separation) = robot_shape
        .vertices()
        .iter()
        .zip(robot_shape.normals())
        .map(|(v, n)| n.dot(local - *v))
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, s)| if s > best.1 { (i, s) } else { best });
    if separation > radius {
        return manifold;
    }

    let (normal_local, penetration) = if separation <= 0.0 {
        // centre inside the robot footprint
        (robot_shape.normals()[best_edge], radius - separation)
    } else {
        let closest = (0..robot_shape.vertices().len())
            .map(|i| {
                let (a, b) = robot_shape.edge(i);
                let ab = b - a;
                let t = ((local - a).dot(ab) / ab.norm_squared()).clamp(0.0, 1.0);
                a + ab * t
            })
            .min_by(|a, b| (local - *a).norm_squared().total_cmp(&(local - *b).norm_squared()))
            .unwrap_or(local);
        let offset = local - closest;
        let dist = offset.norm();
        if dist > radius {
            return manifold;
        }
        let n = offset.normalized().unwrap_or(robot_shape.normals()[best_edge]);
        (n, radius - dist)
    };

    let normal = robot_pose.transform_vector(normal_local);
    manifold.push(ContactPoint {
        position: center - normal * radius,
        normal,
        penetration,
    });
    manifold
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_4;

    use approx::assert_abs_diff_eq;

    use super::*;

    fn robot() -> ConvexPolygon {
        ConvexPolygon::rectangle(0.75, 0.58).unwrap()
    }

    fn square(side: f64) -> Footprint {
        Footprint::Polygon {
            vertices: ConvexPolygon::rectangle(side, side).unwrap(),
        }
    }

    #[test]
    fn separated_shapes_have_no_contact() {
        let m = detect_contact(
            &Pose2D::default(),
            &robot(),
            &Pose2D::new(0.375 + 0.1 + 0.2, 0.0, 0.0),
            &square(0.4),
        );
        assert!(m.is_empty());
        let m = detect_contact(&Pose2D::default(), &robot(), &Pose2D::new(0.375 + 0.35, 0.0, 0.0), &Footprint::disk(0.25).unwrap());
        assert!(m.is_empty());
    }

    #[test]
    fn corner_penetration_gives_one_point() {
        let half_diag = 0.2 * 2f64.sqrt();
        let pose = Pose2D::new(0.375 + half_diag - 0.001, 0.05, FRAC_PI_4);
        let m = detect_contact(&Pose2D::default(), &robot(), &pose, &square(0.4));
        assert_eq!(m.len(), 1);
        let p = m.points()[0];
        assert_abs_diff_eq!(p.penetration, 0.001, epsilon = 1e-9);
        assert_abs_diff_eq!(p.normal.x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.normal.y, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.position.y, 0.05, epsilon = 1e-9);
    }

    #[test]
    fn flush_face_gives_overlap_ends() {
        // Overlap of the object's rear face [-0.15, 0.15] with the robot front edge [-0.29, 0.29].
        let (lo, hi) = (f64::max(-0.15, -0.29), f64::min(0.15, 0.29));
        let m = detect_contact(&Pose2D::default(), &robot(), &Pose2D::new(0.375 + 0.15, 0.0, 0.0), &square(0.3));
        assert_eq!(m.len(), 2);
        let mut ys: Vec<f64> = m.points().iter().map(|p| p.position.y).collect();
        ys.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(ys[0], lo, epsilon = 1e-12);
        assert_abs_diff_eq!(ys[1], hi, epsilon = 1e-12);
        for p in m.points() {
            assert_abs_diff_eq!(p.penetration, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn wide_face_is_clipped_to_robot_edge() {
        let m = detect_contact(&Pose2D::default(), &robot(), &Pose2D::new(0.375 + 0.3 - 0.002, 0.1, 0.0), &square(0.6));
        assert_eq!(m.len(), 2);
        let mut ys: Vec<f64> = m.points().iter().map(|p| p.position.y).collect();
        ys.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(ys[0], -0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(ys[1], 0.29, epsilon = 1e-12);
        assert_abs_diff_eq!(m.max_penetration(), 0.002, epsilon = 1e-12);
    }

    #[test]
    fn disk_against_front_edge() {
        let m = detect_contact(
            &Pose2D::default(),
            &robot(),
            &Pose2D::new(0.375 + 0.25 - 0.003, 0.1, 0.0),
            &Footprint::disk(0.25).unwrap(),
        );
        assert_eq!(m.len(), 1);
        let p = m.points()[0];
        assert_abs_diff_eq!(p.penetration, 0.003, epsilon = 1e-12);
        assert_abs_diff_eq!(p.normal.x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.position.y, 0.1, epsilon = 1e-12);
    }

    #[test]
    fn rotated_robot_normal_follows_heading() {
        let robot_pose = Pose2D::new(1.0, 1.0, std::f64::consts::FRAC_PI_2);
        let object_pose = Pose2D::new(1.0, 1.0 + 0.375 + 0.2 - 0.001, 0.0);
        let m = detect_contact(&robot_pose, &robot(), &object_pose, &square(0.4));
        assert_eq!(m.len(), 2);
        for p in m.points() {
            assert_abs_diff_eq!(p.normal.y, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(p.penetration, 0.001, epsilon = 1e-9);
        }
    }
}
