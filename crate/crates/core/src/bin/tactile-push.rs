use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tactile_push::controller::Mode;
use tactile_push::harness::{
    export_results, generate_grid_targets, generate_ring_targets, read_trace, replay_to_csv, run_campaign, run_trial,
    CampaignSpec, ScenarioConfig,
};
use tactile_push::sim::{FrictionSet, ObjectKind};
use tactile_push::Result;

#[derive(Parser)]
#[command(version, about = "Tactile pushing simulator and experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetSet {
    Grid,
    Ring,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run every object × friction × target combination and export the results.
    Campaign {
        #[arg(long, default_value = "rps")]
        mode: Mode,
        #[arg(long, value_delimiter = ',', default_value = "uniform_box,cylinder,nonuniform_box")]
        objects: Vec<ObjectKind>,
        #[arg(long, value_delimiter = ',', default_value = "s1,s2")]
        frictions: Vec<FrictionSet>,
        #[arg(long, value_enum, default_value = "grid")]
        targets: TargetSet,
        #[arg(long)]
        out: PathBuf,
        /// Base scenario file applied to every trial.
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Also write one JSON-lines trace per trial under OUT/traces.
        #[arg(long)]
        traces: bool,
    },
    /// Run a single scenario file and print the result as JSON.
    Run {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Convert a JSON-lines trace for plotting.
    Replay {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        emit: Emit,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Campaign {
            mode,
            objects,
            frictions,
            targets,
            out,
            scenario,
            traces,
        } => {
            let targets = match targets {
                TargetSet::Grid => generate_grid_targets(),
                TargetSet::Ring => generate_ring_targets(),
            };
            let mut spec = CampaignSpec::new(mode, targets);
            spec.objects = objects;
            spec.frictions = frictions;
            if let Some(path) = scenario {
                spec.base = ScenarioConfig::load(&path)?;
            }
            if traces {
                spec.trace_dir = Some(out.join("traces"));
            }
            let summary = run_campaign(&spec)?;
            export_results(&summary, &out)?;
            println!(
                "{} trials, {} successes ({:.2}%), reference {:.2}%; results in {}",
                summary.trials,
                summary.successes,
                100.0 * summary.success_rate,
                100.0 * summary.reference_success_rate,
                out.display()
            );
        }
        Command::Run { scenario } => {
            let cfg = ScenarioConfig::load(&scenario)?;
            let result = run_trial(&cfg)?;
            println!("{}", serde_json::to_string_pretty(&result)?);
        }
        Command::Replay { trace, emit, out } => {
            let records = read_trace(&trace)?;
            match (emit, out) {
                (Emit::Csv, Some(path)) => {
                    let file = std::fs::File::create(&path).map_err(|e| tactile_push::Error::io(&path, e))?;
                    replay_to_csv(&records, file)?;
                }
                (Emit::Csv, None) => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    replay_to_csv(&records, &mut lock)?;
                    let _ = lock.flush();
                }
            }
        }
    }
    Ok(())
}
