//! Eight targets on a 2.1 m ring, one trial each with the uniform box.

use tactile_push::controller::Mode;
use tactile_push::harness::{generate_ring_targets, run_trial, ScenarioConfig};
use tactile_push::sim::{FrictionSet, ObjectKind};

fn main() -> tactile_push::Result<()> {
    println!("{:>16}  {:>8}  {:>8}  {:>7}  {:>7}", "target", "outcome", "time s", "D m", "realign");
    for target in generate_ring_targets() {
        let cfg = ScenarioConfig::new(ObjectKind::UniformBox, FrictionSet::S1, target, Mode::Rps);
        let r = run_trial(&cfg)?;
        println!(
            "({:+.3}, {:+.3})  {:>8}  {:>8.1}  {:>7.3}  {:>7}",
            target.x,
            target.y,
            r.outcome.name(),
            r.completion_time,
            r.deviation.unwrap_or(f64::NAN),
            r.realignment_activations
        );
    }
    Ok(())
}
