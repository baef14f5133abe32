//! The 24-target grid campaign. Runs one object and friction set by default;
//! pass `--full` for all 144 trials per mode.

use std::time::Instant;

use tactile_push::controller::Mode;
use tactile_push::harness::{export_results, generate_grid_targets, run_campaign, CampaignSpec};
use tactile_push::sim::{FrictionSet, ObjectKind};

fn main() -> tactile_push::Result<()> {
    let full = std::env::args().any(|a| a == "--full");
    let out = std::env::temp_dir().join("tactile-push-grid");
    for mode in [Mode::Rps, Mode::Nps] {
        let mut spec = CampaignSpec::new(mode, generate_grid_targets());
        if !full {
            spec.objects = vec![ObjectKind::UniformBox];
            spec.frictions = vec![FrictionSet::S1];
        }
        let start = Instant::now();
        let summary = run_campaign(&spec)?;
        let dir = out.join(mode.name());
        export_results(&summary, &dir)?;
        println!(
            "{mode:?}: {}/{} succeeded ({:.1}%, reference {:.2}%) in {:.1?}, exported to {}",
            summary.successes,
            summary.trials,
            100.0 * summary.success_rate,
            100.0 * summary.reference_success_rate,
            start.elapsed(),
            dir.display()
        );
        for (outcome, n) in &summary.outcomes {
            println!("  {outcome:<18} {n}");
        }
    }
    Ok(())
}
