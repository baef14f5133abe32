//! Driving the controller by hand: normal pushing, entering realignment, and
//! the hysteresis that keeps it there.

use tactile_push::controller::{Controller, ControllerInput, ControllerParams, Mode};
use tactile_push::geometry::{Pose2D, Vec2};
use tactile_push::tactile::{ContactKind, ContactReport};

fn main() -> tactile_push::Result<()> {
    for mode in [Mode::Rps, Mode::Nps] {
        let mut controller = Controller::new(ControllerParams::with_mode(mode))?;
        println!("{mode:?}");
        for l in [0.0, 0.10, 0.25, 0.10, 0.04, 0.10] {
            let out = controller.step(&ControllerInput {
                robot: Pose2D::default(),
                target: Vec2::new(2.0, 1.0),
                contact: ContactReport::at(ContactKind::Point, Vec2::new(0.375, l)),
                time: 0.0,
            });
            println!(
                "  l = {l:+.2}  {:<10}  a_r = {:+6.3}  twist = ({:+.4}, {:+.4}, {:+.4})  l_th = {:.2}",
                format!("{:?}", out.status),
                out.debug.a_r,
                out.twist.vx,
                out.twist.vy,
                out.twist.omega,
                out.state.l_th
            );
        }
    }
    Ok(())
}
