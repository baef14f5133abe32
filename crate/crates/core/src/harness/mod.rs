//! Scenarios, trial execution, campaigns and result export.

pub mod campaign;
pub mod config;
pub mod export;
pub mod metrics;
pub mod targets;
pub mod trace;
pub mod trial;

pub use campaign::{run_campaign, CampaignSpec, CampaignSummary, REFERENCE_NPS_SUCCESS, REFERENCE_RPS_SUCCESS};
pub use config::{ContactLossRule, Placement, ScenarioConfig};
pub use export::export_results;
pub use metrics::{deviation_metric, Outcome, TrialMonitor};
pub use targets::{generate_grid_targets, generate_ring_targets};
pub use trace::{read_trace, replay_to_csv, TraceRecord};
pub use trial::{run_trial, TrialResult};
