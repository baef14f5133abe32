use std::path::Path;
use std::process::Command;

use tactile_push::controller::Mode;
use tactile_push::geometry::Vec2;
use tactile_push::harness::export::TRIAL_COLUMNS;
use tactile_push::harness::{
    export_results, read_trace, replay_to_csv, run_campaign, run_trial, CampaignSpec, CampaignSummary, Outcome,
    ScenarioConfig,
};
use tactile_push::sim::{FrictionSet, ObjectKind};

fn scenarios_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenarios"))
}

fn small_spec() -> CampaignSpec {
    let mut spec = CampaignSpec::new(Mode::Rps, vec![Vec2::new(1.0, 0.0), Vec2::new(0.0, -1.0)]);
    spec.objects = vec![ObjectKind::UniformBox];
    spec.frictions = vec![FrictionSet::S2];
    spec
}

#[test]
fn shipped_scenarios_load() {
    let mut found = 0;
    for entry in std::fs::read_dir(scenarios_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "toml") {
            let cfg = ScenarioConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let again = ScenarioConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
            assert_eq!(cfg, again);
            found += 1;
        }
    }
    assert!(found >= 2);
}

#[test]
fn missing_scenario_file_is_an_io_error() {
    let err = ScenarioConfig::load(Path::new("/nonexistent/scenario.toml")).unwrap_err();
    assert!(matches!(err, tactile_push::Error::Io { .. }));
}

#[test]
fn trace_file_matches_in_memory_trace() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = ScenarioConfig::new(ObjectKind::Cylinder, FrictionSet::S1, Vec2::new(1.0, 1.0), Mode::Rps);
    cfg.record_trace = true;
    cfg.trace_path = Some(dir.path().join("nested/trace.jsonl"));
    let result = run_trial(&cfg).unwrap();
    assert_eq!(result.outcome, Outcome::Success);
    assert!(result.min_distance < 0.05);

    let records = read_trace(cfg.trace_path.as_ref().unwrap()).unwrap();
    assert_eq!(records, result.trace);
    assert!((records.last().unwrap().time - result.completion_time).abs() < 1e-9);

    let mut csv = Vec::new();
    replay_to_csv(&records, &mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert_eq!(text.lines().count(), records.len() + 1);
    assert!(text.starts_with("time,robot_x,robot_y,robot_theta,"));
}

#[test]
fn exports_round_trip() {
    let summary = run_campaign(&small_spec()).unwrap();
    assert_eq!(summary.trials, 2);
    let dir = tempfile::tempdir().unwrap();
    export_results(&summary, dir.path()).unwrap();

    let json = std::fs::read_to_string(dir.path().join("summary.json")).unwrap();
    let back: CampaignSummary = serde_json::from_str(&json).unwrap();
    assert_eq!(back, summary);

    let mut reader = csv::Reader::from_path(dir.path().join("trials.csv")).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, TRIAL_COLUMNS);
    assert_eq!(reader.records().count(), 2);

    let grid = std::fs::read_to_string(dir.path().join("targets_grid.csv")).unwrap();
    assert_eq!(grid.lines().count(), 6);
}

#[test]
fn nps_and_rps_start_from_the_same_world() {
    let spec = small_spec();
    let mut nps = spec.clone();
    nps.mode = Mode::Nps;
    for (a, b) in spec.scenarios().iter().zip(nps.scenarios()) {
        let (ma, mb) = (a.object_model(), b.object_model());
        assert_eq!(ma, mb);
        assert_eq!(a.initial_object_pose(&ma), b.initial_object_pose(&mb));
        assert_eq!(a.robot_start, b.robot_start);
        assert_eq!(a.sim, b.sim);
    }
}

#[test]
fn cli_campaign_run_and_replay() {
    let bin = env!("CARGO_BIN_EXE_tactile-push");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ring");

    let status = Command::new(bin)
        .args(["campaign", "--mode", "nps", "--objects", "cylinder", "--frictions", "s1", "--targets", "ring"])
        .arg("--out")
        .arg(&out)
        .arg("--traces")
        .status()
        .unwrap();
    assert!(status.success());
    let summary: CampaignSummary =
        serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary.trials, 8);
    assert_eq!(summary.mode, Mode::Nps);

    let trace = std::fs::read_dir(out.join("traces")).unwrap().next().unwrap().unwrap().path();
    let replay = Command::new(bin)
        .args(["replay", "--emit", "csv", "--trace"])
        .arg(&trace)
        .output()
        .unwrap();
    assert!(replay.status.success());
    assert!(String::from_utf8(replay.stdout).unwrap().starts_with("time,"));

    let scenario = dir.path().join("s.toml");
    std::fs::write(&scenario, "object = \"uniform_box\"\ntarget = { x = 1.0, y = 0.0 }\n").unwrap();
    let run = Command::new(bin).arg("run").arg("--scenario").arg(&scenario).output().unwrap();
    assert!(run.status.success());
    assert!(String::from_utf8(run.stdout).unwrap().contains("\"outcome\": \"success\""));

    let bad = Command::new(bin).args(["run", "--scenario", "/nonexistent.toml"]).output().unwrap();
    assert!(!bad.status.success());
}
