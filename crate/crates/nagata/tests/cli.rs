use std::process::{Command, Output};

use serde_json::Value;

fn nagata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nagata")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = nagata(&all);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("nagata-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn analyze_grid() {
    let (v, code) = report(&["analyze", "grid_f5"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["exit_status"], 0);
    let r = &v["results"];
    assert_eq!((r["a"].as_u64(), r["b"].as_u64(), r["rho"].as_u64()), (Some(8), Some(2), Some(2)));
    assert_eq!(r["status"], "infinite_generation");
    assert_eq!(r["certificate"]["reducible_members"].as_array().unwrap().len(), 4);
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
    assert!(!v["citations"].as_array().unwrap().is_empty());
}

#[test]
fn digest_is_deterministic() {
    let (a, _) = report(&["rho", "cube_f5"]);
    let (b, _) = report(&["rho", "cube_f5"]);
    let (c, _) = report(&["rho", "grid_f5"]);
    assert_eq!(a["inputs_digest"], b["inputs_digest"]);
    assert_ne!(a["inputs_digest"], c["inputs_digest"]);
    assert_eq!(a["results"]["rho"], 1);
}

#[test]
fn text_output() {
    let out = nagata(&["analyze", "cube_f5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rho = 7 - 12/2 = 1"), "{text}");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_1() {
    let dir = tmp("bad");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"field\": {\"type\": \"prime\", \"p\": 5}, \"r\": 3, \"points\": [[1,").unwrap();
    let out = nagata(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid configuration JSON"));

    let wrong = dir.join("wrong.json");
    std::fs::write(&wrong, r#"{"field": {"type": "prime", "p": 6}, "r": 3, "points": [[1,0,0]]}"#).unwrap();
    assert_eq!(nagata(&["analyze", wrong.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(nagata(&["analyze", "no_such_dataset"]).status.code(), Some(1));
}

#[test]
fn rank_from_counts() {
    let (v, code) = report(&["rho", "--a", "3", "--b", "1"]);
    assert_eq!((v["results"]["rho"].as_u64(), code), (Some(6), 0));
    let (v, _) = report(&["rho", "--a", "4", "--quadric"]);
    assert_eq!(v["results"]["rho"], 5);
    assert_eq!(nagata(&["rho", "--a", "3", "--quadric"]).status.code(), Some(1));
}

#[test]
fn orbit_of_eight_points() {
    let (v, code) = report(&["orbit", "--r", "3", "--n", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["count"], 240);
    assert_eq!(v["results"]["closed"], true);
    let (v, _) = report(&["orbit", "--r", "3", "--n", "7", "--list"]);
    assert_eq!(v["results"]["classes"].as_array().unwrap().len(), 56);
}

#[test]
fn orbit_limit_is_an_error() {
    let out = nagata(&["--max-classes", "100", "orbit", "--r", "3", "--n", "9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn h0_and_completion() {
    let (v, _) = report(&["h0", "grid_f5", "--a", "3", "--b", "1,1,1,1,1,1,1,1,1"]);
    assert_eq!(v["results"]["h0"], 2);
    let (v, _) = report(&["ninth-point", "grid_f5"]);
    assert_eq!(v["results"]["point"], serde_json::json!(["1", "1", "1"]));
    let (v, _) = report(&["eighth-point", "cube_f5"]);
    assert_eq!(v["results"]["point"], serde_json::json!(["1", "1", "1", "1"]));
}

#[test]
fn pencil_irreducibility_and_base_points() {
    let (v, code) = report(&["irreducible", "cuspidal_pencil", "--p", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["all_irreducible"], true);
    assert_eq!(v["results"]["members"], 6);
    let (v, code) = report(&["base-locus", "cuspidal_pencil", "--p", "5", "--max-ext", "8"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["total"], 9);
    assert_eq!(nagata(&["irreducible", "cuspidal_pencil", "--p", "4"]).status.code(), Some(1));
}

#[test]
fn dualize_round_trips() {
    let out = nagata(&["dualize", "matrix_3x9"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tmp("dual");
    let path = dir.join("dual.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let (v, _) = report(&["dualize", path.to_str().unwrap()]);
    assert_eq!(v["results"]["r"], 3);
    assert_eq!(v["results"]["points"].as_array().unwrap().len(), 9);
}

#[test]
fn cremona_commands() {
    let (v, code) = report(&["cremona", "apply", "matrix_3x9", "--subset", "1,2,3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["config"]["points"][0], serde_json::json!(["1", "0", "0"]));
    let out = nagata(&["cremona", "apply", "grid_f5", "--subset", "1,5,9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[1, 5, 9]"));

    let (v, code) = report(&["cremona", "walk", "grid_f5", "--depth", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["survived"], true);
    assert_eq!(v["results"]["rho"], 2);

    let walk = |seed: &str| report(&["--seed", seed, "cremona", "walk", "matrix_3x9", "--depth", "3", "--mode", "random"]).0;
    assert_eq!(walk("7")["results"]["log"], walk("7")["results"]["log"]);
    assert_eq!(walk("7")["results"]["seed"], 7);
}

#[test]
fn representation_commands() {
    let (v, code) = report(&["rep", "build", "--config", "grid_f5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["generators"].as_array().unwrap().len(), 6);

    let (v, code) = report(&["rep", "twist", "--config", "f4_cubic", "--base", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["conjugate_to_diagonal"], true);
    assert_eq!(v["results"]["blocks"], serde_json::json!([1, 2, 2, 2, 2]));

    let (v, _) = report(&["rep", "check", "--poly", "x1"]);
    assert_eq!(v["results"]["invariant"], true);
    let (v, _) = report(&["rep", "check", "--poly", "y1"]);
    assert_eq!(v["results"]["invariant"], false);

    let (v, code) = report(&["rep", "dims", "--c", "2,2,2,2,2,2,2,2,2", "--a", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["invariant_dim"], 2);

    let (v, code) = report(&["rep", "crosscheck", "--config", "cube_f5", "--amax", "2", "--cmax", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["mismatches"], 0);
}

#[test]
fn verify_filter() {
    let out = nagata(&["verify-paper", "--filter", "rho"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2, "{text}");
    assert!(text.lines().all(|l| l.contains("PASS")));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tampered_data_fails_verification() {
    let dir = tmp("tamper");
    let grid: Value = serde_json::from_str(nagata::datasets::bundled("grid_f5").unwrap()).unwrap();
    let mut bad = grid.clone();
    bad["points"].as_array_mut().unwrap().pop();
    std::fs::write(dir.join("grid_f5.json"), serde_json::to_string(&bad).unwrap()).unwrap();
    let out = nagata(&["verify-paper", "--filter", "1", "--data-dir", dir.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rho-cubic-pencils") && text.contains("FAIL"), "{text}");
    assert_eq!(out.status.code(), Some(3));
}
