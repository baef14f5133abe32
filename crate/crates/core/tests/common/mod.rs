#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tactile_push::geometry::{Pose2D, Twist2D};
use tactile_push::sim::{make_object, FrictionSet, ObjectKind, SimConfig, StepReport, World};

/// World with `kind` sitting `gap` ahead of the robot's front edge.
pub fn world_with(kind: ObjectKind, friction: FrictionSet, gap: f64) -> World {
    let cfg = SimConfig::default();
    let model = make_object(kind, friction);
    let x = cfg.robot.front_x() + gap + model.footprint.half_depth_x();
    World::new(cfg, model, Pose2D::default(), Pose2D::new(x, 0.0, 0.0)).unwrap()
}

/// Random command held for `hold` steps, biased forward so the robot keeps
/// running into the object.
pub fn random_command(rng: &mut ChaCha8Rng) -> Twist2D {
    if rng.random_bool(0.15) {
        return Twist2D::ZERO;
    }
    Twist2D::new(
        rng.random_range(-0.01..=0.05),
        rng.random_range(-0.03..=0.03),
        rng.random_range(-0.15..=0.15),
    )
}

/// Drives `world` with seeded random commands for `seconds`, calling `check`
/// after every physics step.
pub fn fuzz(world: &mut World, seed: u64, seconds: f64, mut check: impl FnMut(&World, Twist2D, &StepReport)) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = (seconds / world.config().dt).round() as usize;
    let hold = 200;
    let mut command = Twist2D::ZERO;
    for i in 0..steps {
        if i % hold == 0 {
            command = random_command(&mut rng);
        }
        let report = world.step(command).unwrap();
        check(world, command, &report);
    }
}
