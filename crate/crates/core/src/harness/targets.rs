use std::f64::consts::TAU;

use crate::geometry::Vec2;

/// The 24 grid targets: every `(x, y)` with `x, y ∈ {-2, -1, 0, 1, 2}` except the origin.
pub fn generate_grid_targets() -> Vec<Vec2> {
    let mut targets = Vec::with_capacity(24);
    for x in -2..=2 {
        for y in -2..=2 {
            if (x, y) != (0, 0) {
                targets.push(Vec2::new(x as f64, y as f64));
            }
        }
    }
    targets
}

pub const RING_RADIUS: f64 = 2.1;

/// Eight targets at 2.1 m, spaced 45° apart starting on the +x axis.
pub fn generate_ring_targets() -> Vec<Vec2> {
    (0..8)
        .map(|k| {
            let phi = TAU * k as f64 / 8.0;
            Vec2::new(RING_RADIUS * phi.cos(), RING_RADIUS * phi.sin())
        })
        .collect()
}
