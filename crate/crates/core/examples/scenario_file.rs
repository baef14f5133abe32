//! Loading a scenario from TOML, overriding a few fields, and running it.
//!
//! Usage: `cargo run --example scenario_file [-- path/to/scenario.toml]`

use std::path::PathBuf;

use tactile_push::harness::{run_trial, ScenarioConfig};

const DEFAULT: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenarios/nonuniform_box_offset.toml");

fn main() -> tactile_push::Result<()> {
    let path = std::env::args().nth(1).map_or_else(|| PathBuf::from(DEFAULT), PathBuf::from);
    let cfg = ScenarioConfig::load(&path)?;
    println!("loaded {}:\n{}", path.display(), cfg.to_toml_string());
    let result = run_trial(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&result)?);
    Ok(())
}
