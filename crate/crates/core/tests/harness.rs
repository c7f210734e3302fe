use std::path::PathBuf;
use std::process::Command;

use epr_verifier::harness::{
    emit_report, run_experiment, write_report, ExperimentConfig, ExperimentKind, ExperimentReport, ReportFormat, RunMode,
    StrategyConfig,
};
use epr_verifier::Error;

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_epr-verifier"))
}

#[test]
fn shipped_configs_load_and_pass() {
    for name in ["completeness", "soundness", "lemmas", "swap-bench"] {
        let cfg = ExperimentConfig::load(&configs_dir().join(format!("{name}.json"))).unwrap();
        assert_eq!(cfg.experiment.name(), name);
        let report = run_experiment(&cfg).unwrap();
        assert!(report.validation.passed, "{name}: {:?}", report.validation.failures);
    }
}

#[test]
fn exact_completeness_report_has_branches() {
    let report = run_experiment(&ExperimentConfig::canonical(ExperimentKind::Completeness)).unwrap();
    assert!((report.accept_probability.unwrap() - 1.0).abs() < 1e-9);
    let json: serde_json::Value = serde_json::from_slice(&emit_report(&report, ReportFormat::Json).unwrap()).unwrap();
    assert!(json.is_object());
    for key in ["b0_postsel_fail", "b0_all_zero_reject", "b0_measured_accept", "b1_swap_accept", "b1_swap_reject"] {
        assert!(json["branches"][key].is_number(), "{key}");
    }
    assert!(json.get("wall_time_ms").is_none());
    let back: ExperimentReport = serde_json::from_value(json).unwrap();
    assert_eq!(back, report);
}

#[test]
fn exact_mode_ignores_trials() {
    let mut a = ExperimentConfig::canonical(ExperimentKind::Soundness);
    let mut b = a.clone();
    a.trials = 3;
    b.trials = 3000;
    let (ra, rb) = (run_experiment(&a).unwrap(), run_experiment(&b).unwrap());
    assert_eq!(ra.branches, rb.branches);
    assert!(ra.sampled.is_none());
}

#[test]
fn sampled_csv_has_one_row_per_trial() {
    let mut cfg = ExperimentConfig::canonical(ExperimentKind::Soundness);
    cfg.mode = RunMode::Sampled;
    cfg.trials = 1000;
    let report = run_experiment(&cfg).unwrap();
    let csv = String::from_utf8(emit_report(&report, ReportFormat::Csv).unwrap()).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("trial,b,pair_i,pair_j,postsel,verdict"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 1000);
    for (t, row) in rows.iter().enumerate() {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f.len(), 6);
        assert_eq!(f[0].parse::<usize>().unwrap(), t);
        assert!(f[1] == "0" || f[1] == "1");
        assert_ne!(f[2], f[3]);
        assert!(f[5] == "accept" || f[5] == "reject");
        assert_eq!(f[4].is_empty(), f[1] == "1");
    }
}

#[test]
fn reports_are_byte_identical_and_thread_independent() {
    let mut cfg = ExperimentConfig::canonical(ExperimentKind::Soundness);
    cfg.mode = RunMode::Sampled;
    cfg.trials = 2000;
    cfg.strategy.kind = StrategyConfig::LocalUnitaries { seed: 3 };
    let bytes = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let r = run_experiment(&cfg).unwrap();
            (emit_report(&r, ReportFormat::Json).unwrap(), emit_report(&r, ReportFormat::Csv).unwrap())
        })
    };
    let one = bytes(1);
    assert_eq!(one, bytes(4));
    assert_eq!(one, bytes(1));
}

#[test]
fn lemma_report_counts_checks() {
    let mut cfg = ExperimentConfig::canonical(ExperimentKind::Lemmas);
    cfg.samples = 50;
    let r = run_experiment(&cfg).unwrap();
    assert_eq!(r.lemma_margins.len(), 10);
    assert!(r.lemma_margins.iter().all(|m| m.checks == 50 && m.worst_margin >= -1e-9));
}

#[test]
fn invalid_config_is_a_structured_error() {
    let mut cfg = ExperimentConfig::canonical(ExperimentKind::Soundness);
    cfg.l = 1;
    assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));
    let mut cfg = ExperimentConfig::canonical(ExperimentKind::Completeness);
    cfg.strategy.kind = StrategyConfig::IdleEpr;
    assert!(matches!(run_experiment(&cfg), Err(Error::Config(_))));
}

#[test]
fn write_errors_carry_the_path() {
    let report = run_experiment(&ExperimentConfig::canonical(ExperimentKind::Completeness)).unwrap();
    let path = PathBuf::from("/nonexistent-dir/report.json");
    match write_report(&report, ReportFormat::Json, &path) {
        Err(Error::Io { path: p, .. }) => assert_eq!(p, path),
        other => panic!("{other:?}"),
    }
}

#[test]
fn cli_exit_codes_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = bin()
        .args(["soundness", "--config"])
        .arg(configs_dir().join("soundness.json"))
        .args(["--seed", "5", "--trials", "300", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(json["config"]["seed"], 5);
    assert_eq!(json["sampled"]["trials"], 300);

    // environment seed applies when the flag is absent, the flag wins otherwise
    let run = |extra: &[&str]| {
        let o = bin()
            .args(["soundness", "--mode", "sampled", "--trials", "10"])
            .args(extra)
            .env("EPR_VERIFIER_SEED", "77")
            .output()
            .unwrap();
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["config"]["seed"].clone()
    };
    assert_eq!(run(&[]), 77);
    assert_eq!(run(&["--seed", "4"]), 4);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"experiment": "soundness", "verifier": {"p": 2.0}}"#).unwrap();
    assert_eq!(bin().arg("soundness").arg("--config").arg(&bad).output().unwrap().status.code(), Some(1));
    assert_eq!(bin().args(["lemmas", "--config", "/missing.json"]).output().unwrap().status.code(), Some(1));

    // a tolerance no sampled run can meet is a validation failure
    let strict = dir.path().join("strict.json");
    std::fs::write(
        &strict,
        r#"{"experiment": "soundness", "verifier": {"p": 0.001}, "strategy": {"kind": "idle_epr"}, "mode": "sampled", "trials": 50, "tolerances": {"sigmas": 0.0, "probability": 0.0}}"#,
    )
    .unwrap();
    assert_eq!(bin().arg("soundness").arg("--config").arg(&strict).output().unwrap().status.code(), Some(2));

    let csv = bin().args(["completeness", "--format", "csv"]).output().unwrap();
    assert_eq!(csv.status.code(), Some(0));
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("metric,value\n"));
}
