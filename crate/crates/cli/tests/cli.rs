use std::path::PathBuf;
use wallcross_cli::{run, validate_output};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["wallcross"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wallcross-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn every_command_round_trips() {
    let cases: [(&str, &[&str]); 8] = [
        ("lattice", &["lattice", "--name", "affine-D4"]),
        ("lattice", &["lattice", "--surface", "elliptic-i3"]),
        ("quiver-walls", &["quiver-walls", "--quiver", "affine-A2", "--v", "2delta"]),
        ("k3-walls", &["k3-walls", "--n", "3", "--d", "1,0"]),
        ("corner-solve", &["corner-solve", "--s", "-1"]),
        ("chambers-match", &["chambers-match", "--n", "2"]),
        ("voa-verify", &["voa-verify", "--lattice", "A1", "--degree", "2"]),
        ("ext-quiver", &["ext-quiver", "--quiver", "affine-A1", "--v", "1,1", "--decomp", "0,1,1:1", "--beta-inf", "1,0,0"]),
    ];
    for (cmd, args) in cases {
        let (code, out, err) = call(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        validate_output(cmd, &out).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn lattice_signature_and_parity() {
    let (_, out, _) = call(&["lattice", "--name", "U"]);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["signature"], serde_json::json!([1, 1, 0]));
    assert_eq!(j["even"], true);
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(call(&["lattice", "--name", "E9"]).0, 2);
    assert_eq!(call(&["lattice"]).0, 2);
    assert_eq!(call(&["quiver-walls", "--quiver", "affine-A1", "--v", "1,2,3"]).0, 2);
    assert_eq!(call(&["plot", "--quiver", "affine-A2", "--v", "1,2,0"]).0, 2);
    assert_eq!(call(&["voa-verify", "--lattice", "A1", "--degree", "2", "--families", "bogus"]).0, 2);
    assert_eq!(call(&["k3-walls", "--surface", "/nonexistent.json", "--n", "2"]).0, 2);
    assert_eq!(call(&["no-such-command"]).0, 2);
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("walls.json");
    let (code, out, _) = call(&["quiver-walls", "--quiver", "affine-A1", "--v", "2,2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    validate_output("quiver-walls", &text).unwrap();
    assert!(text.contains("\"excluded\""));
}

#[test]
fn rationals_are_exact_strings() {
    let (_, out, _) = call(&["corner-solve", "--s", "0"]);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    for x in j["point"]["omega"].as_array().unwrap() {
        let s = x.as_str().unwrap();
        assert!(wallcross_core::rational::parse_q(s).is_some(), "{s}");
    }
}

#[test]
fn report_runs_every_entry() {
    let cfg = scratch("run.json");
    std::fs::write(
        &cfg,
        r#"{"runs": [
            {"command": "quiver-walls", "quiver": "affine-A1", "v": "2,2"},
            {"command": "chambers-match", "n": 3},
            {"command": "lattice", "name": "nope"}
        ]}"#,
    )
    .unwrap();
    let (code, out, _) = call(&["report", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    validate_output("report", &out).unwrap();
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    let codes: Vec<i64> = j["runs"].as_array().unwrap().iter().map(|r| r["exit_code"].as_i64().unwrap()).collect();
    assert_eq!(codes, vec![0, 0, 2]);
    assert_eq!(j["runs"][1]["output"]["witness"]["matches"], true);
}

#[test]
fn report_rejects_unknown_fields() {
    let cfg = scratch("bad.json");
    std::fs::write(&cfg, r#"{"runs": [{"command": "lattice", "name": "A2", "colour": "red"}]}"#).unwrap();
    assert_eq!(call(&["report", "--config", cfg.to_str().unwrap()]).0, 2);
}

#[test]
fn validator_rejects_tampered_output() {
    let (_, out, _) = call(&["lattice", "--name", "A2"]);
    assert!(validate_output("lattice", &out.replace("\"even\"", "\"odd\"")).is_err());
    assert!(validate_output("lattice", &out.replace('\n', " ")).is_err());
}

#[test]
fn voa_csv_dump() {
    let dir = scratch("csv");
    let (code, _, err) = call(&["voa-verify", "--lattice", "A2", "--degree", "1", "--csv-dir", dir.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let e0 = std::fs::read_to_string(dir.join("e0_mode0_deg1.csv")).unwrap();
    assert!(e0.starts_with("target,"));
}

#[test]
fn plot_tsv_lists_segments() {
    let (code, out, _) = call(&["plot", "--quiver", "affine-A2", "--v", "2delta", "--format", "tsv"]);
    assert_eq!(code, 0);
    validate_output("plot", &out).unwrap();
    // (mδ ± α)⊥ with |m| < 2 for three positive roots
    assert_eq!(out.lines().count() - 1, 9);
}
