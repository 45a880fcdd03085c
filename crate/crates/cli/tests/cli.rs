//! End-to-end tests of the `polybern` binary: exit codes, output formats,
//! and the enumerate -> map -> validate round trip.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polybern"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
}

#[test]
fn compute_prints_coefficient_arrays() {
    let out = run(&["compute", "--model", "formula", "--n", "2", "--k", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "[4,3]");

    let out = run(&["compute", "--model", "exc.lr", "--n", "2", "--k", "1"]);
    assert_eq!(stdout(&out).trim(), "[4,3]");

    let out = run(&["compute", "--model", "formula", "--n", "0", "--k", "9"]);
    assert_eq!(stdout(&out).trim(), "[1]");

    let out = run(&["compute", "--model", "tree.ch", "--n", "2", "--k", "2", "--format", "text"]);
    assert_eq!(stdout(&out).trim(), "2x^2 + 15x + 14");
}

#[test]
fn compute_rejects_unknown_model() {
    let out = run(&["compute", "--model", "nonsense", "--n", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_is_exit_2() {
    let out = run(&["compute", "--model", "formula", "--n", "x", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_streams_json_lines() {
    let out = run(&["enumerate", "--model", "exc", "--n", "2", "--k", "1"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(lines.len(), 7);
    let first: serde_json::Value = serde_json::from_str(&lines[0]).unwrap();
    assert_eq!(first["object"]["perm"], serde_json::json!([2, 3, 1, 4]));
    assert_eq!(first["weights"]["lr"], serde_json::json!(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("count: 7"));

    let out = run(&["enumerate", "--model", "callan", "--n", "0", "--k", "0"]);
    assert_eq!(stdout(&out).lines().count(), 1);

    let out = run(&["enumerate", "--model", "tableau", "--n", "1", "--k", "1"]);
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn enumerate_rejects_formula() {
    let out = run(&["enumerate", "--model", "formula", "--n", "1", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn map_psi_on_small_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("perm.json");
    std::fs::write(&input, r#"{"perm":[2,1,3]}"#).unwrap();
    let out = run(&["map", "--id", "psi", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(lines[0], r#"{"n":1,"k":0,"perm":[2,1]}"#);
    assert_eq!(lines[1], r#"{"weightIn":0,"weightOut":0}"#);
}

#[test]
fn map_reproduces_worked_correspondences() {
    // tree -> the Callan strings of the worked example
    let out = run(&["map", "--id", "tree_to_callan", "--input", fixture("tree_76.json").to_str().unwrap()]);
    assert!(out.status.success());
    let lines = stdout(&out);
    let mut lines = lines.lines();
    let image: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    let expected: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(fixture("callan_76_tree_side.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(image, expected);
    assert_eq!(lines.next().unwrap(), r#"{"weightIn":2,"weightOut":2}"#);

    // tableau -> its packed form
    let out = run(&["map", "--id", "pad", "--input", fixture("tableau_76.json").to_str().unwrap()]);
    let lines = stdout(&out);
    let image: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    let expected: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("packed_76.json")).unwrap()).unwrap();
    assert_eq!(image, expected);
}

#[test]
fn map_rejects_invalid_objects() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    // excedance set {2} is not an initial segment
    std::fs::write(&input, r#"{"perm":[1,3,2]}"#).unwrap();
    let out = run(&["map", "--id", "psi", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(&input, r#"{"n":1,"k":0,"s1":["r1"],"s2":[]}"#).unwrap();
    let out = run(&["map", "--id", "phi", "--input", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("s1 must start blue"));
}

#[test]
fn render_diagrams() {
    let out = run(&["render", "--model", "tableau", "--input", fixture("tableau_76.json").to_str().unwrap()]);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], ".....<");
    assert_eq!(lines[3], ".v.v..");

    let out = run(&["render", "--model", "exc", "--input", fixture("exc_24_weight2.json").to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.contains('#') && text.contains('R'));
    assert_eq!(text.lines().count(), 7);

    let out = run(&["render", "--model", "tree", "--input", fixture("tree_76.json").to_str().unwrap()]);
    assert!(stdout(&out).starts_with("r0\n"));

    // the empty pair renders as an empty diagram
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.json");
    std::fs::write(&input, r#"{"n":0,"k":0,"s1":[],"s2":[]}"#).unwrap();
    let out = run(&["render", "--model", "callan", "--input", input.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "s1: \ns2: \n");
}

#[test]
fn verify_small_grid_passes() {
    let out = run(&["verify", "--max-n", "0", "--max-k", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("overall: pass"));
}

#[test]
fn verify_default_bounds_pass() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("verify: pass (25 cells, 0 failures)"), "{text}");
    assert!(text.contains("egf(6,6): pass"));
}

#[test]
fn verify_output_is_deterministic() {
    let a = run(&["verify", "--max-n", "1", "--max-k", "1"]);
    let b = run(&["verify", "--max-n", "1", "--max-k", "1"]);
    assert_eq!(stdout(&a), stdout(&b));
    let a = run(&["verify", "--max-n", "1", "--max-k", "1", "--format", "json"]);
    let b = run(&["verify", "--max-n", "1", "--max-k", "1", "--format", "json"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn verify_json_reports_grid() {
    let out = run(&["verify", "--max-n", "1", "--max-k", "1", "--format", "json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["grid"].as_array().unwrap().len(), 4);
    assert_eq!(report["pass"], serde_json::json!(true));
    assert_eq!(report["grid"][3]["models"]["callan.lr"], serde_json::json!([2, 1]));
    assert_eq!(report["grid"][3]["maps"]["pad"], serde_json::json!("pass"));
}

#[test]
fn verify_cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let cache_str = cache.to_str().unwrap();

    let out = run(&["verify", "--max-n", "1", "--max-k", "1", "--cache-dir", cache_str]);
    assert_eq!(out.status.code(), Some(0));
    assert!(cache.join("report.json").exists());
    assert!(cache.join("exc.lr_1_1.json").exists());

    // a second run against the same cache still passes
    let out = run(&["verify", "--max-n", "1", "--max-k", "1", "--cache-dir", cache_str]);
    assert_eq!(out.status.code(), Some(0));

    // corrupting one entry turns the run into a verification failure (exit 1)
    std::fs::write(cache.join("exc.lr_1_1.json"), r#"{"coeffs":[9,9]}"#).unwrap();
    let out = run(&["verify", "--max-n", "1", "--max-k", "1", "--cache-dir", cache_str]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("cache failure"));
    assert!(stdout(&out).contains("exc.lr_1_1"));
}

#[test]
fn verify_env_var_overrides_cache_dir() {
    let dir = tempfile::tempdir().unwrap();
    let via_env = dir.path().join("via_env");
    let out = bin()
        .args(["verify", "--max-n", "0", "--max-k", "0"])
        .env("POLYBERN_CACHE", &via_env)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(via_env.join("report.json").exists());
}

/// enumerate -> map -> parse (parsing validates) for a sample of maps.
#[test]
fn round_trip_enumerate_map_validate() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("object.json");
    for (family, map_id) in [
        ("callan", "callan_to_tableau"),
        ("callan", "callan_to_exc"),
        ("callan", "phi"),
        ("tableau", "pad"),
        ("packed", "dual_involution"),
        ("packed", "transpose"),
        ("tree", "tree_to_callan"),
        ("exc", "psi"),
    ] {
        let out = run(&["enumerate", "--model", family, "--n", "2", "--k", "2"]);
        assert!(out.status.success());
        for line in stdout(&out).lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            std::fs::write(&input, v["object"].to_string()).unwrap();
            let mapped = run(&["map", "--id", map_id, "--input", input.to_str().unwrap()]);
            assert!(
                mapped.status.success(),
                "{map_id} on {line}: {}",
                String::from_utf8_lossy(&mapped.stderr)
            );
            // the image line must itself parse as JSON
            let image = stdout(&mapped);
            let _: serde_json::Value = serde_json::from_str(image.lines().next().unwrap()).unwrap();
        }
    }
}
