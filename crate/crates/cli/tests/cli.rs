use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_circlecolor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn circlecolor")
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    );
    String::from_utf8(out.stdout).unwrap()
}

fn gen(dir: &Path, model: &str, n: usize, seed: u64, name: &str) -> String {
    let path = dir.join(name);
    run_ok(&[
        "gen",
        "--model",
        model,
        "--n",
        &n.to_string(),
        "--seed",
        &seed.to_string(),
        "-o",
        path.to_str().unwrap(),
    ]);
    path.to_str().unwrap().to_string()
}

#[test]
fn triangle_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let sys = gen(dir.path(), "crossing_clique", 3, 0, "tri.json");
    let col = dir.path().join("tri_col.json");

    let summary = run_ok(&["color", "-i", &sys, "-o", col.to_str().unwrap()]);
    let summary: Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(summary["omega"], 3);
    assert_eq!(summary["num_classes"], 1);
    assert_eq!(summary["num_final_colors"], 3);

    let report = run_ok(&["verify", "-i", &sys, "-c", col.to_str().unwrap()]);
    let report: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn tampered_final_color_fails_verify_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let sys = gen(dir.path(), "crossing_clique", 3, 0, "tri.json");
    let col = dir.path().join("tri_col.json");
    run_ok(&["color", "-i", &sys, "-o", col.to_str().unwrap()]);

    // Force two crossing chords onto one color, keeping the summary
    // consistent so the failure surfaces in the properness check itself.
    let mut file: Value = serde_json::from_str(&fs::read_to_string(&col).unwrap()).unwrap();
    let keep = file["intervals"][0]["final_color"].clone();
    file["intervals"][1]["final_color"] = keep;
    file["summary"]["num_final_colors"] = json!(2);
    fs::write(&col, serde_json::to_string_pretty(&file).unwrap()).unwrap();

    let out = run(&["verify", "-i", &sys, "-c", col.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], false);
    let witness = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "proper")
        .and_then(|c| c["witness"].as_str())
        .unwrap()
        .to_string();
    assert!(witness.contains("share final color"), "witness was: {witness}");
}

#[test]
fn inconsistent_summary_fails_verify_at_load() {
    let dir = tempfile::tempdir().unwrap();
    let sys = gen(dir.path(), "crossing_clique", 3, 0, "tri.json");
    let col = dir.path().join("tri_col.json");
    run_ok(&["color", "-i", &sys, "-o", col.to_str().unwrap()]);

    let mut file: Value = serde_json::from_str(&fs::read_to_string(&col).unwrap()).unwrap();
    file["summary"]["num_final_colors"] = json!(99);
    fs::write(&col, serde_json::to_string_pretty(&file).unwrap()).unwrap();

    let out = run(&["verify", "-i", &sys, "-c", col.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], false);
    assert_eq!(report["checks"][0]["name"], "load_coloring");
    assert!(report["checks"][0]["witness"].is_string());
}

#[test]
fn gen_is_deterministic_in_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = gen(dir.path(), "uniform_matching", 12, 41, "a.json");
    let b = gen(dir.path(), "uniform_matching", 12, 41, "b.json");
    let c = gen(dir.path(), "uniform_matching", 12, 42, "c.json");
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn empty_system_colors_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let sys = gen(dir.path(), "uniform_matching", 0, 0, "empty.json");
    let col = dir.path().join("empty_col.json");

    let summary = run_ok(&["color", "-i", &sys, "-o", col.to_str().unwrap()]);
    let summary: Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(summary["n"], 0);
    assert_eq!(summary["num_final_colors"], 0);

    let report = run_ok(&["verify", "-i", &sys, "-c", col.to_str().unwrap()]);
    let report: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn stats_reports_graph_facts() {
    let dir = tempfile::tempdir().unwrap();
    let sys = gen(dir.path(), "crossing_clique", 4, 0, "k4.json");
    let stats: Value = serde_json::from_str(&run_ok(&["stats", "-i", &sys])).unwrap();
    assert_eq!(stats["n"], 4);
    assert_eq!(stats["omega"], 4);
    assert_eq!(stats["edges"], 6);
    assert_eq!(stats["components"], 1);
}

#[test]
fn oracle_values_on_fixed_families() {
    let dir = tempfile::tempdir().unwrap();
    let chain = gen(dir.path(), "nested_chain", 5, 0, "chain.json");
    let clique: Value =
        serde_json::from_str(&run_ok(&["oracle", "clique", "-i", &chain])).unwrap();
    assert_eq!(clique["clique_number"], 1);
    let chrom: Value =
        serde_json::from_str(&run_ok(&["oracle", "chromatic", "-i", &chain])).unwrap();
    assert_eq!(chrom["chromatic_number"], 1);

    let tri = gen(dir.path(), "crossing_clique", 3, 0, "tri.json");
    let pd: Value = serde_json::from_str(&run_ok(&[
        "oracle", "pdegree", "-i", &tri, "--pillars", "3/14,9/14", "--p1", "3/14", "--p2",
        "9/14",
    ]))
    .unwrap();
    assert_eq!(pd["p_degree"], 2);
    assert_eq!(pd["oracle"], 2);
}

#[test]
fn svg_export_draws_all_chords_and_pillars() {
    let dir = tempfile::tempdir().unwrap();
    let sys = gen(dir.path(), "crossing_clique", 3, 0, "tri.json");
    let col = dir.path().join("tri_col.json");
    run_ok(&["color", "-i", &sys, "-o", col.to_str().unwrap()]);
    let pic = dir.path().join("tri.svg");

    run_ok(&["export", "--svg", "-i", &sys, "-c", col.to_str().unwrap(), "-o",
        pic.to_str().unwrap()]);
    let svg = fs::read_to_string(&pic).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("stroke-width=\"2\"").count(), 3);
    assert_eq!(svg.matches("stroke=\"#555\"").count(), 1);
}

#[test]
fn corpus_batch_verifies_everything() {
    let out = run_ok(&["corpus", "--count", "30", "--nmax", "12", "--seed", "3"]);
    let summary: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(summary["count"], 30);
    assert_eq!(summary["failures"], 0);
    assert_eq!(summary["verified"], 30);
    assert!(summary["max_omega"].as_u64().unwrap() >= 2);
}

#[test]
fn color_trace_emits_step_records() {
    let dir = tempfile::tempdir().unwrap();
    let sys = gen(dir.path(), "uniform_matching", 15, 9, "m.json");
    let col = dir.path().join("m_col.json");
    let out = run(&["color", "-i", &sys, "-o", col.to_str().unwrap(), "--trace"]);
    assert!(out.status.success());
    let traces: Value = serde_json::from_slice(&out.stderr).unwrap();
    let traces = traces.as_array().unwrap();
    assert!(!traces.is_empty());
    assert!(traces[0]["step"].is_u64());
    assert!(traces[0]["covered_after"].is_u64());
}

#[test]
fn custom_profile_and_assignment_output() {
    let dir = tempfile::tempdir().unwrap();
    let sys = gen(dir.path(), "crossing_clique", 4, 0, "k4.json");
    let col = dir.path().join("k4_col.json");
    let asg = dir.path().join("k4_asg.json");
    run_ok(&[
        "color", "-i", &sys, "-o", col.to_str().unwrap(), "--profile", "custom", "--quota",
        "12", "--budget", "16", "--palette", "20", "--assignment", asg.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&asg).unwrap();
    assert!(text.contains("pillar-assignment/v1"));
    let report = run_ok(&["verify", "-i", &sys, "-c", col.to_str().unwrap()]);
    let report: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(report["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["color"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["color", "-i", "/nonexistent/system.json"]);
    assert_eq!(out.status.code(), Some(2));

    // omega2 profile on a clique number 3 instance is a configuration error.
    let dir = tempfile::tempdir().unwrap();
    let sys = gen(dir.path(), "crossing_clique", 3, 0, "tri.json");
    let out = run(&["color", "-i", &sys, "--profile", "omega2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_without_output_prints_system() {
    let out = run_ok(&["gen", "--model", "nested_chain", "--n", "2"]);
    let sys: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(sys["format"], "interval-system/v1");
    assert_eq!(sys["intervals"].as_array().unwrap().len(), 2);
}
