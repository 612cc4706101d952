use dualpolar_cli::config::{Format, What};
use dualpolar_cli::sweep::parse_instances;
use dualpolar_cli::{emit, sweep, verify, CliError, Instance, RunConfig, Stage, Status};
use dualpolar::family::FamilyTag;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualpolar")).args(args).env_clear().output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_concrete_instance() {
    let o = run(&["verify", "--family", "C", "--q", "2", "--D", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["status"], "pass");
    assert_eq!(v["report"]["instance"], "C(2,3)");
    assert!(v["run"]["timing_ms"]["bridge"].is_number());
    let checks = v["report"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["anchor"].is_string() && c["status"] == "pass"));
}

#[test]
fn verify_formal_instance() {
    let r = verify(&RunConfig::formal(FamilyTag::TwoAOdd, 3).unwrap()).unwrap();
    assert!(r.passed());
    assert!(r.checks.iter().all(|c| c.stage != Stage::Geometry));
    assert!(r.choice.is_none());
}

#[test]
fn hermitian_family_needs_square_q() {
    let o = run(&["verify", "--family", "2A-odd", "--q", "3", "--D", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Hermitian family requires square q"));
    assert!(matches!(RunConfig::concrete(FamilyTag::TwoAEven, 2, 3), Err(CliError::Usage(_))));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["verify", "--family", "E", "--D", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--family", "C", "--q", "6", "--D", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--family", "C", "--q", "2", "--D", "2"]).status.code(), Some(2));
    assert_eq!(run(&["emit", "--what", "graph", "--family", "C", "--D", "3"]).status.code(), Some(2));
    assert_eq!(run(&["emit", "--what", "graph", "--family", "C", "--q", "2", "--D", "3", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--instances", ""]).status.code(), Some(2));
    let o = run(&["emit", "--what", "ell-polys", "--family", "C", "--D", "3", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--family", "C", "--q", "3", "--D", "4", "--max-vertices", "100"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("instance too large"));
}

#[test]
fn environment_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_dualpolar"))
        .args(["emit", "--what", "graph"])
        .env_clear()
        .env("DUALPOLAR_FAMILY", "D")
        .env("DUALPOLAR_Q", "2")
        .env("DUALPOLAR_D", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# D 2 3 30\n"));
}

#[test]
fn ell_polynomial_table() {
    let out = emit(&RunConfig::formal(FamilyTag::C, 3).unwrap(), What::EllPolys, Some(Format::Csv)).unwrap();
    let lines: Vec<&str> = out.text.lines().collect();
    assert_eq!(lines.len(), 1 + 8);
    assert_eq!(lines[0], "polynomial,eta^-4,eta^-3,eta^-2,eta^-1,eta^0,eta^1,eta^2,eta^3");
    assert_eq!(lines[1], "ell-_0,0,0,0,0,1,0,0,0");
    assert!(lines[7].starts_with("ell-_3,") && lines[8].starts_with("ell+_3,"));
}

#[test]
fn graph_edge_list() {
    let o = run(&["emit", "--what", "graph", "--family", "D", "--q", "2", "--D", "3", "--format", "edge-list"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# D 2 3 30"));
    assert_eq!(lines.count(), 30 * 7 / 2);
    assert_eq!(text, stdout(&run(&["export-graph", "--family", "D", "--q", "2", "--D", "3"])));
}

#[test]
fn parameter_arrays_of_four_systems() {
    let out = emit(&RunConfig::formal(FamilyTag::B, 4).unwrap(), What::ParamArrays, None).unwrap();
    let systems: std::collections::BTreeSet<&str> = out.text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(systems.len(), 4);
    assert!(out.text.contains("\nPhi-perp,d,,2\n"));
    assert!(out.text.contains("\nPhi-tilde,d,,3\n"));
    // f_0 = 1 and f_i(theta_0) = 1
    assert!(out.text.contains("\nPhi,f,0:4,1\n"));
    assert!(out.text.contains("\nPhi,f,4:0,1\n"));
    assert_eq!(out.text.lines().filter(|l| l.starts_with("Phi-perp,f,")).count(), 9);
}

#[test]
fn sweeps_keep_order_and_note_skips() {
    let list = parse_instances("D@2:3, C:3, 2A-odd@4:3").unwrap();
    let summary = sweep(&list, 10_000).unwrap();
    let names: Vec<&str> = summary.rows.iter().map(|r| r.instance.as_str()).collect();
    assert_eq!(names, ["D(2,3)", "C(q,3)", "2A-odd(4,3)"]);
    assert_eq!(summary.exit_code(), 0);

    let capped = sweep(&parse_instances("C@3:4,D@2:3").unwrap(), 1000).unwrap();
    assert_eq!(capped.rows[0].status, Status::Skipped);
    assert_eq!(capped.rows[1].status, Status::Pass);
    assert_eq!(capped.exit_code(), 0);

    assert!(sweep(&[], 10).is_err());
    assert!("C@2".parse::<Instance>().is_err());
    assert!("2A-even@3:3".parse::<Instance>().is_err());
}

#[test]
fn canonical_report_excludes_run_data() {
    let cfg = RunConfig::concrete(FamilyTag::D, 2, 3).unwrap();
    let a = verify(&cfg).unwrap();
    let b = verify(&cfg).unwrap();
    assert_eq!(a.canonical_json(), b.canonical_json());
    assert!(!a.canonical_json().contains("timing"));
    assert!(a.full_json().contains("timing_ms"));
    let v: serde_json::Value = serde_json::from_str(&a.canonical_json()).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
