//! Pushing the uniform box to a target behind the robot, with and without
//! realignment, and replaying the trace as CSV.

use tactile_push::controller::Mode;
use tactile_push::geometry::Vec2;
use tactile_push::harness::{read_trace, replay_to_csv, run_trial, ScenarioConfig};
use tactile_push::sim::{FrictionSet, ObjectKind};

fn main() -> tactile_push::Result<()> {
    let dir = std::env::temp_dir().join("tactile-push-rear-target");
    for mode in [Mode::Rps, Mode::Nps] {
        let mut cfg = ScenarioConfig::new(ObjectKind::UniformBox, FrictionSet::S1, Vec2::new(-2.0, 0.0), mode);
        let trace = dir.join(format!("{}.jsonl", mode.name()));
        cfg.trace_path = Some(trace.clone());
        let r = run_trial(&cfg)?;
        println!(
            "{:?}: {} after {:.1} s, min distance {:.3} m, D = {}, {} realignments, {} point/line transitions",
            mode,
            r.outcome.name(),
            r.completion_time,
            r.min_distance,
            r.deviation.map_or("n/a".to_string(), |d| format!("{d:.3} m")),
            r.realignment_activations,
            r.contact_type_transitions,
        );

        let csv_path = trace.with_extension("csv");
        let records = read_trace(&trace)?;
        let file = std::fs::File::create(&csv_path).map_err(|e| tactile_push::Error::io(&csv_path, e))?;
        replay_to_csv(&records, file)?;
        println!("  {} trace rows written to {}", records.len(), csv_path.display());
    }
    Ok(())
}
