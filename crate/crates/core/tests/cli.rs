use std::process::{Command, Output};

use clap::Parser;
use fieldlhv::chsh::ChshModel;
use fieldlhv::cli::{self, RunConfig};
use fieldlhv::qubit::SignedDistribution;
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fieldlhv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check named {name}"))
}

fn without_elapsed(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn chsh_achieve_passes() {
    let out = bin(&["chsh-achieve"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    assert_eq!(r["command"], "chsh-achieve");
    let bell = check(&r, "bell_expression");
    assert!((bell["actual"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() <= 1e-9);
    assert_eq!(bell["pass"], true);
    for key in ["command", "version", "config", "checks", "elapsed_ms"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn qubit_dist_reports_negative_weight() {
    let out = bin(&["qubit-dist", "--bloch", "0.57735,0.57735,0.57735"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    let p8 = check(&r, "p(8)")["actual"].as_f64().unwrap();
    assert!((p8 + 0.0915064).abs() < 1e-6, "{p8}");
    assert_eq!(check(&r, "has_negative_weight")["actual"], true);
}

#[test]
fn negative_bloch_components_parse() {
    let out = bin(&["qubit-expect", "--bloch", "-0.6,0,-0.8", "--dir", "0,0,-1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    assert!((check(&r, "dir_hidden_variable")["actual"].as_f64().unwrap() - 0.8).abs() < 1e-12);
}

#[test]
fn ghz_verify_exits_one_on_the_intersection_size() {
    let out = bin(&["ghz-verify"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report_of(&out);
    let size = check(&r, "intersection_size");
    assert_eq!(size["expected"], 32);
    assert_eq!(size["actual"], 64);
    assert_eq!(size["pass"], false);
    assert_eq!(check(&r, "xxx_product_constant")["actual"], "-i");
    assert_eq!(check(&r, "classical_product_constant")["pass"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL intersection_size"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["chsh-verify"]).status.code(), Some(2), "missing --seed");
    assert_eq!(bin(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(bin(&["qubit-dist", "--bloch", "1,1,0"]).status.code(), Some(2));
    assert_eq!(bin(&["chsh-optimize", "--seed", "1", "--grid", "3"]).status.code(), Some(2));
    for bad in ["(1 2", "(1 1)", "(0 3)", "(1 9)", "((1 2))", "1 2"] {
        let out = bin(&["qubit-evolve", "--bloch", "0,0,1", "--perm", bad]);
        assert_eq!(out.status.code(), Some(2), "perm {bad:?}");
    }
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn strict_and_permissive_evolution() {
    let args = ["qubit-evolve", "--bloch", "0.3,0.4,0.5", "--perm", "(1 2 3)"];
    let strict = bin(&args);
    assert_eq!(strict.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&strict.stderr).contains("error"));

    let mut permissive = args.to_vec();
    permissive.push("--permissive");
    let out = bin(&permissive);
    assert_eq!(out.status.code(), Some(0));
    let r = report_of(&out);
    assert_eq!(r["config"]["mode"], "permissive");
    assert_eq!(check(&r, "commutes_with_antipode")["actual"], false);
}

#[test]
fn x_flip_evolution_through_the_cli() {
    let out = bin(&["qubit-evolve", "--bloch", "0.3,-0.4,0.5", "--perm", "(1 5)(2 6)(3 7)(4 8)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(check(&report_of(&out), "matches_x_flipped_state")["pass"], true);
}

#[test]
fn same_seed_same_report() {
    let args = ["chsh-verify", "--seed", "11", "--samples", "500"];
    let a = without_elapsed(report_of(&bin(&args)));
    let b = without_elapsed(report_of(&bin(&args)));
    assert_eq!(a, b);
    assert_eq!(a["config"]["seed"], 11);
    assert_eq!(a["config"]["samples"], 500);

    let opt = ["chsh-optimize", "--seed", "5", "--grid", "9"];
    assert_eq!(
        without_elapsed(report_of(&bin(&opt))),
        without_elapsed(report_of(&bin(&opt)))
    );
}

#[test]
fn csv_format() {
    let out = bin(&["chsh-achieve", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rows.headers().unwrap().iter().collect::<Vec<_>>(),
        ["name", "expected", "actual", "tolerance", "pass"]
    );
    let records: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    let bell = records.iter().find(|r| &r[0] == "bell_expression").unwrap();
    assert!(bell[2].starts_with("2.828427124746"));
    assert_eq!(&bell[4], "true");
}

#[test]
fn out_and_export_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let model = dir.path().join("model.json");
    let out = bin(&[
        "chsh-achieve",
        "--out",
        report.to_str().unwrap(),
        "--export",
        model.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["command"], "chsh-achieve");

    let exported: ChshModel = serde_json::from_str(&std::fs::read_to_string(&model).unwrap()).unwrap();
    let v = fieldlhv::chsh::bell_expression(&exported).unwrap();
    assert!((v - 2.0 * 2f64.sqrt()).abs() <= 1e-9);

    let dist_path = dir.path().join("dist.json");
    let out = bin(&["qubit-dist", "--bloch", "0,0,1", "--export", dist_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dist: SignedDistribution =
        serde_json::from_str(&std::fs::read_to_string(&dist_path).unwrap()).unwrap();
    assert_eq!(dist.weights(), [0.25, 0.0, 0.25, 0.0, 0.25, 0.0, 0.25, 0.0]);

    let inter_path = dir.path().join("intersection.json");
    bin(&["ghz-verify", "--export", inter_path.to_str().unwrap()]);
    let inter: Value = serde_json::from_str(&std::fs::read_to_string(&inter_path).unwrap()).unwrap();
    assert_eq!(inter.as_array().unwrap().len(), 64);
    assert_eq!(inter[0].as_array().unwrap().len(), 3);
}

#[test]
fn unwritable_out_path_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("r.json");
    let out = bin(&["ghz-enumerate", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn library_entry_points() {
    let config = RunConfig::try_parse_from(["fieldlhv", "oracle-check", "--seed", "3", "--samples", "50"]).unwrap();
    let output = cli::run(&config).unwrap();
    assert_eq!(output.exit_code(), 0);
    assert!(output.report.check("tsirelson_optimal_settings").unwrap().pass);

    assert_eq!(cli::main_with_args(["fieldlhv", "qubit-search-sign", "--dir", "0,-1,0", "--out", "/dev/null"]), 0);
    assert_eq!(cli::main_with_args(["fieldlhv", "qubit-search-sign"]), 2);
}
