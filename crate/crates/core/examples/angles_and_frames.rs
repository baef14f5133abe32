//! Angle wrapping and robot-frame transforms.

use std::f64::consts::{FRAC_PI_2, PI};

use tactile_push::geometry::{angle_diff, rotate, wrap_angle, Pose2D, Vec2};

fn main() -> tactile_push::Result<()> {
    for theta in [0.0, PI, 1.5 * PI, -7.0] {
        println!("wrap({theta:+.4}) = {:+.4}", wrap_angle(theta)?);
    }
    println!("angle_diff(-3, 3) = {:+.5}", angle_diff(-3.0, 3.0)?);

    let p = rotate(FRAC_PI_2, Vec2::new(1.0, 0.0))?;
    println!("rotate(pi/2, (1, 0)) = ({:.3}, {:.3})", p.x, p.y);

    // A contact at the robot's front edge, seen from a robot turned to face +y.
    let robot = Pose2D::new(1.0, 0.5, FRAC_PI_2);
    let contact = Vec2::new(0.375, 0.1);
    let world = robot.transform_point(contact);
    println!("contact in world frame: ({:.3}, {:.3})", world.x, world.y);
    let back = robot.inverse_transform_point(world);
    println!("and back in robot frame: ({:.3}, {:.3})", back.x, back.y);
    Ok(())
}
