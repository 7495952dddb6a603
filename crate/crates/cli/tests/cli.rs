use bcsurf_cli::anchors::is_registered;
use bcsurf_cli::config::{Format, RunConfig, Settings};
use bcsurf_cli::report::{Report, Status};
use bcsurf_cli::{execute, main_with_args, Command};

fn config(mode: &str, max_degree: usize) -> RunConfig {
    let s = Settings { mode: Some(mode.into()), max_degree: Some(max_degree), ..Default::default() };
    RunConfig::from_settings(s).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    let out = std::env::temp_dir().join(format!("bcsurf-cli-test-{}.json", std::process::id()));
    let mut full = vec!["bcsurf", "--out", out.to_str().unwrap()];
    full.extend_from_slice(args);
    let code = main_with_args(full);
    let _ = std::fs::remove_file(out);
    code
}

#[test]
fn json_round_trip() {
    let report = execute(Command::Dims, &config("generic", 3), false).unwrap();
    let text = report.render(Format::Json).unwrap();
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
    assert!(text.ends_with('\n'));
}

#[test]
fn csv_has_one_row_per_check() {
    let report = execute(Command::Relations, &config("generic", 3), false).unwrap();
    let text = report.render(Format::Csv).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.records().count(), report.checks.len());
}

#[test]
fn auxiliary_relations_are_informational() {
    let report = execute(Command::Relations, &config("generic", 3), false).unwrap();
    assert!(report.passed());
    let failing: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| c.status == Status::Info && c.computed != c.expected)
        .map(|c| c.name.as_str())
        .collect();
    assert_eq!(failing, ["relations.auxiliary[11]", "relations.auxiliary[12]"]);
}

#[test]
fn every_anchor_is_registered() {
    let report = execute(Command::Suite, &config("tau-one", 4), false).unwrap();
    for c in &report.checks {
        assert!(is_registered(&c.anchor), "{} uses {}", c.name, c.anchor);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(exit_code(&["dims", "--mode", "generic", "--max-degree", "3"]), 0);
    assert_eq!(exit_code(&["dims", "--mode", "specialized", "--rho", "2", "--theta=-1"]), 2);
    assert_eq!(exit_code(&["dims", "--mode", "specialized", "--rho", "2"]), 2);
    assert_eq!(exit_code(&["dims", "--mode", "nonsense"]), 2);
}

#[test]
fn degree_bound_is_enforced() {
    assert!(execute(Command::Dims, &config("generic", 50), false).is_err());
}
