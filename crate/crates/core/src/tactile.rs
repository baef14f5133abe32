//! Virtual taxel strip on the front, left and right edges of the base, and
//! contact localization from the set of active taxels.
//!
//! A single active taxel is a point contact located at that taxel. Two or more
//! active taxels form a line contact, located halfway between the two extreme
//! active taxels. Extremes are taken along the strip's arc length, which runs
//! from the rear of the right edge, across the front, to the rear of the left
//! edge. On the front edge this orders taxels by y, on a side edge by x.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Pose2D, Vec2};
use crate::sim::{Footprint, RobotFootprint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Front,
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Taxel {
    /// Robot-frame position on the footprint boundary.
    pub position: Vec2,
    pub side: Side,
    /// Arc-length coordinate along the strip, used to order extremes.
    pub arc: f64,
}

/// How many taxels go on each edge, and the activation band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TaxelLayout {
    pub front: usize,
    /// Taxels on each of the left and right edges.
    pub side: usize,
    /// A taxel fires when the object surface is within this distance of it (or past it), meters.
    pub threshold: f64,
}

impl Default for TaxelLayout {
    fn default() -> Self {
        Self {
            front: 24,
            side: 9,
            threshold: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaxelArray {
    taxels: Vec<Taxel>,
    threshold: f64,
}

impl TaxelArray {
    /// Evenly spaced, cell-centred taxels along each covered edge.
    pub fn from_layout(layout: &TaxelLayout, robot: &RobotFootprint) -> Result<Self> {
        robot.validate()?;
        if layout.front == 0 {
            return Err(Error::Geometry("the front edge needs at least one taxel".into()));
        }
        let hw = robot.half_width;
        let front_x = robot.front_x();
        let rear_x = -front_x;
        let mut taxels = Vec::with_capacity(layout.front + 2 * layout.side);

        // right edge, rear → front
        let side_pitch = robot.length / layout.side.max(1) as f64;
        for i in 0..layout.side {
            let along = (i as f64 + 0.5) * side_pitch;
            taxels.push(Taxel {
                position: Vec2::new(rear_x + along, -hw),
                side: Side::Right,
                arc: along,
            });
        }
        // front edge, right → left
        let front_pitch = 2.0 * hw / layout.front as f64;
        for i in 0..layout.front {
            let along = (i as f64 + 0.5) * front_pitch;
            taxels.push(Taxel {
                position: Vec2::new(front_x, -hw + along),
                side: Side::Front,
                arc: robot.length + along,
            });
        }
        // left edge, front → rear
        for i in 0..layout.side {
            let along = (i as f64 + 0.5) * side_pitch;
            taxels.push(Taxel {
                position: Vec2::new(front_x - along, hw),
                side: Side::Left,
                arc: robot.length + 2.0 * hw + along,
            });
        }
        Self::new(taxels, layout.threshold)
    }

    pub fn new(taxels: Vec<Taxel>, threshold: f64) -> Result<Self> {
        if taxels.iter().any(|t| !(t.position.is_finite() && t.arc.is_finite())) {
            return Err(Error::Geometry("non-finite taxel position".into()));
        }
        if !(threshold.is_finite() && threshold >= 0.0) {
            return Err(Error::Geometry(format!("taxel threshold must be non-negative, got {threshold}")));
        }
        Ok(Self { taxels, threshold })
    }

    pub fn taxels(&self) -> &[Taxel] {
        &self.taxels
    }

    pub fn len(&self) -> usize {
        self.taxels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taxels.is_empty()
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// Indices of the taxels the object currently presses.
    pub fn sample(&self, robot: &Pose2D, object_shape: &Footprint, object_pose: &Pose2D) -> Vec<usize> {
        self.taxels
            .iter()
            .enumerate()
            .filter(|(_, t)| {
                let world = robot.transform_point(t.position);
                object_shape.signed_distance(object_pose.inverse_transform_point(world)) <= self.threshold
            })
            .map(|(i, _)| i)
            .collect()
    }

    pub fn localize(&self, activations: &[usize]) -> Result<ContactReport> {
        localize_contact(activations, self)
    }
}

/// See [`TaxelArray::sample`].
pub fn sample_taxels(array: &TaxelArray, robot: &Pose2D, object_shape: &Footprint, object_pose: &Pose2D) -> Vec<usize> {
    array.sample(robot, object_shape, object_pose)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactKind {
    #[default]
    None,
    Point,
    Line,
}

impl ContactKind {
    /// 0 = none, 1 = point, 2 = line.
    pub fn code(self) -> u8 {
        match self {
            ContactKind::None => 0,
            ContactKind::Point => 1,
            ContactKind::Line => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ContactReport {
    pub kind: ContactKind,
    /// Contact location in the robot frame.
    pub position: Vec2,
    /// Lateral offset from the robot centreline (`position.y`).
    pub l: f64,
    pub active: Vec<usize>,
}

impl ContactReport {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn exists(&self) -> bool {
        self.kind != ContactKind::None
    }

    /// A contact report at an arbitrary robot-frame location, for driving the controller directly.
    pub fn at(kind: ContactKind, position: Vec2) -> Self {
        Self {
            kind,
            position,
            l: position.y,
            active: Vec::new(),
        }
    }
}

pub fn localize_contact(activations: &[usize], array: &TaxelArray) -> Result<ContactReport> {
    let mut active = activations.to_vec();
    if let Some(&index) = active.iter().find(|&&i| i >= array.len()) {
        return Err(Error::TaxelIndex { index, len: array.len() });
    }
    active.sort_unstable();
    active.dedup();

    let taxels = array.taxels();
    let (kind, position) = match active.as_slice() {
        [] => (ContactKind::None, Vec2::ZERO),
        [only] => (ContactKind::Point, taxels[*only].position),
        many => {
            let by_arc = |a: &&usize, b: &&usize| taxels[**a].arc.total_cmp(&taxels[**b].arc);
            let first = many.iter().min_by(by_arc).copied().unwrap_or(many[0]);
            let last = many.iter().max_by(by_arc).copied().unwrap_or(many[0]);
            (ContactKind::Line, (taxels[first].position + taxels[last].position) * 0.5)
        }
    };
    Ok(ContactReport {
        kind,
        position,
        l: position.y,
        active,
    })
}

#[cfg(test)]
mod tests {
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    use super::*;
    use crate::sim::ConvexPolygon;

    fn default_array() -> TaxelArray {
        TaxelArray::from_layout(&TaxelLayout::default(), &RobotFootprint::default()).unwrap()
    }

    fn front_strip(ys: &[f64]) -> TaxelArray {
        let taxels = ys
            .iter()
            .map(|&y| Taxel {
                position: Vec2::new(0.35, y),
                side: Side::Front,
                arc: y,
            })
            .collect();
        TaxelArray::new(taxels, 1e-3).unwrap()
    }

    #[test]
    fn default_layout_has_42_taxels_on_the_boundary() {
        let array = default_array();
        assert_eq!(array.len(), 42);
        let robot = RobotFootprint::default();
        let shape = Footprint::Polygon {
            vertices: robot.polygon().unwrap(),
        };
        for t in array.taxels() {
            assert_abs_diff_eq!(shape.signed_distance(t.position), 0.0, epsilon = 1e-12);
        }
        let fronts = array.taxels().iter().filter(|t| t.side == Side::Front).count();
        assert_eq!(fronts, 24);
    }

    #[test]
    fn single_taxel_is_a_point_contact() {
        let array = front_strip(&[-0.1, 0.0, 0.10]);
        let r = localize_contact(&[2], &array).unwrap();
        assert_eq!(r.kind, ContactKind::Point);
        assert_eq!(r.position, Vec2::new(0.35, 0.10));
        assert_eq!(r.l, 0.10);
    }

    #[test]
    fn symmetric_line_contact_is_centred() {
        let ys: Vec<f64> = (0..=8).map(|i| -0.10 + 0.025 * i as f64).collect();
        let array = front_strip(&ys);
        let all: Vec<usize> = (0..ys.len()).collect();
        let r = localize_contact(&all, &array).unwrap();
        assert_eq!(r.kind, ContactKind::Line);
        assert_abs_diff_eq!(r.l, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn split_contact_uses_extremes() {
        let array = front_strip(&[0.05, 0.10, 0.15, 0.20]);
        let r = localize_contact(&[0, 3], &array).unwrap();
        assert_eq!(r.kind, ContactKind::Line);
        assert_abs_diff_eq!(r.l, 0.125, epsilon = 1e-15);
    }

    #[test]
    fn empty_and_out_of_range() {
        let array = default_array();
        let r = localize_contact(&[], &array).unwrap();
        assert!(!r.exists());
        assert!(matches!(localize_contact(&[42], &array), Err(Error::TaxelIndex { index: 42, len: 42 })));
    }

    #[test]
    fn corner_contact_spans_front_and_side() {
        let array = default_array();
        let right_side = array.taxels().iter().position(|t| t.side == Side::Right).unwrap() + 8;
        let first_front = array.taxels().iter().position(|t| t.side == Side::Front).unwrap();
        let r = localize_contact(&[first_front, right_side], &array).unwrap();
        assert_eq!(r.kind, ContactKind::Line);
        let mid = (array.taxels()[first_front].position + array.taxels()[right_side].position) * 0.5;
        assert_eq!(r.position, mid);
    }

    fn robot_pose() -> Pose2D {
        Pose2D::default()
    }

    #[test]
    fn far_object_activates_nothing() {
        let array = default_array();
        let shape = Footprint::Polygon {
            vertices: ConvexPolygon::rectangle(0.4, 0.4).unwrap(),
        };
        let pose = Pose2D::new(0.375 + 1.0 + 0.2, 0.0, 0.0);
        assert!(array.sample(&robot_pose(), &shape, &pose).is_empty());
    }

    #[test]
    fn corner_over_one_taxel() {
        let array = default_array();
        let shape = Footprint::Polygon {
            vertices: ConvexPolygon::rectangle(0.4, 0.4).unwrap(),
        };
        let target = array.taxels().iter().position(|t| t.side == Side::Front).unwrap() + 15;
        let y = array.taxels()[target].position.y;
        let half_diag = 0.2 * 2f64.sqrt();
        let pose = Pose2D::new(0.375 + half_diag - 0.002, y, std::f64::consts::FRAC_PI_4);
        assert_eq!(array.sample(&robot_pose(), &shape, &pose), vec![target]);
    }

    #[test]
    fn flush_face_activates_overlap_span() {
        let array = default_array();
        let shape = Footprint::Polygon {
            vertices: ConvexPolygon::rectangle(0.4, 0.3).unwrap(),
        };
        let pose = Pose2D::new(0.375 + 0.2, 0.05, 0.0);
        let active = array.sample(&robot_pose(), &shape, &pose);
        // interval-overlap oracle: front taxels whose y lies within [-0.10, 0.20]
        let expected: Vec<usize> = array
            .taxels()
            .iter()
            .enumerate()
            .filter(|(_, t)| t.side == Side::Front && (-0.10..=0.20).contains(&t.position.y))
            .map(|(i, _)| i)
            .collect();
        assert!(!expected.is_empty());
        assert_eq!(active, expected);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn localization_invariants(mut set in proptest::collection::vec(0usize..42, 1..12), seed in any::<u64>()) {
            let array = default_array();
            let base = localize_contact(&set, &array).unwrap();

            // permutation invariance
            let k = (seed as usize) % set.len();
            set.rotate_left(k);
            set.reverse();
            let permuted = localize_contact(&set, &array).unwrap();
            prop_assert_eq!(&base, &permuted);

            // inside the bounding box of the active taxels
            let pts: Vec<Vec2> = base.active.iter().map(|&i| array.taxels()[i].position).collect();
            let (lo_x, hi_x) = pts.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.x), b.max(p.x)));
            let (lo_y, hi_y) = pts.iter().fold((f64::MAX, f64::MIN), |(a, b), p| (a.min(p.y), b.max(p.y)));
            prop_assert!(base.position.x >= lo_x - 1e-12 && base.position.x <= hi_x + 1e-12);
            prop_assert!(base.position.y >= lo_y - 1e-12 && base.position.y <= hi_y + 1e-12);

            // interior additions leave the location unchanged
            if base.active.len() >= 2 {
                let arcs: Vec<f64> = base.active.iter().map(|&i| array.taxels()[i].arc).collect();
                let (lo, hi) = arcs.iter().fold((f64::MAX, f64::MIN), |(a, b), &x| (a.min(x), b.max(x)));
                let interior: Vec<usize> = (0..array.len())
                    .filter(|&i| array.taxels()[i].arc > lo && array.taxels()[i].arc < hi)
                    .collect();
                if let Some(&extra) = interior.get((seed as usize) % interior.len().max(1)) {
                    let mut grown = base.active.clone();
                    grown.push(extra);
                    let r = localize_contact(&grown, &array).unwrap();
                    prop_assert_eq!(r.position, base.position);
                }
            }
        }
    }
}
