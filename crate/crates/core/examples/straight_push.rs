//! A flush straight push of the uniform box at 5 cm/s, and what happens after
//! the robot stops.

use tactile_push::geometry::{Pose2D, Twist2D};
use tactile_push::sim::{make_object, FrictionSet, ObjectKind, SimConfig, World};

fn main() -> tactile_push::Result<()> {
    let config = SimConfig::default();
    let model = make_object(ObjectKind::UniformBox, FrictionSet::S1);
    let start = Pose2D::new(config.robot.front_x() + model.footprint.half_depth_x(), 0.0, 0.0);
    let mut world = World::new(config, model, Pose2D::default(), start)?;

    let push = Twist2D::new(0.05, 0.0, 0.0);
    for second in 1..=10 {
        let mut penetration: f64 = 0.0;
        for _ in 0..1000 {
            let report = world.step(push)?;
            penetration = penetration.max(report.manifold.max_penetration());
        }
        let s = world.state();
        println!(
            "t = {second:>2} s  object x = {:.4}  speed = {:.5} m/s  max penetration = {:.3} mm",
            s.object.x,
            s.object_velocity.speed(),
            1e3 * penetration
        );
    }

    for _ in 0..500 {
        world.step(Twist2D::ZERO)?;
    }
    println!("0.5 s after stopping: speed = {:.2e} m/s", world.state().object_velocity.speed());
    Ok(())
}
