//! Sampling the taxel skin against an object and localizing the contact.

use tactile_push::geometry::{Pose2D, Vec2};
use tactile_push::sim::{make_object, FrictionSet, ObjectKind, RobotFootprint};
use tactile_push::tactile::{TaxelArray, TaxelLayout};

fn main() -> tactile_push::Result<()> {
    let robot = RobotFootprint::default();
    let skin = TaxelArray::from_layout(&TaxelLayout::default(), &robot)?;
    println!("{} taxels, activation threshold {} m", skin.len(), skin.threshold());

    let model = make_object(ObjectKind::UniformBox, FrictionSet::S1);
    let half = model.footprint.half_depth_x();
    // aim a 45° corner at one front taxel, 2 mm deep
    let aim = skin.taxels()[17].position;
    let cases = [
        ("far away", Pose2D::new(2.0, 0.0, 0.0)),
        ("flush, centred", Pose2D::new(robot.front_x() + half, 0.0, 0.0)),
        ("flush, offset left", Pose2D::new(robot.front_x() + half, 0.15, 0.0)),
        ("rotated corner", Pose2D::new(aim.x + half * 2f64.sqrt() - 0.002, aim.y, std::f64::consts::FRAC_PI_4)),
    ];
    for (name, object) in cases {
        let active = skin.sample(&Pose2D::default(), &model.footprint, &object);
        let report = skin.localize(&active)?;
        let Vec2 { x, y } = report.position;
        println!("{name:>20}: {:?} via {:?} at ({x:.3}, {y:.3}), l = {:+.3}", report.kind, active, report.l);
    }
    Ok(())
}
