//! End-to-end tests that spawn the `gdesign` binary and check its output,
//! exit codes, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn gdesign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gdesign"))
        .args(args)
        .output()
        .expect("failed to spawn gdesign")
}

fn stdout_of(args: &[&str]) -> String {
    let out = gdesign(args);
    assert!(
        out.status.success(),
        "gdesign {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout is not UTF-8")
}

fn exit_code(args: &[&str]) -> i32 {
    gdesign(args).status.code().expect("process was killed")
}

fn stderr_of(args: &[&str]) -> String {
    String::from_utf8(gdesign(args).stderr).expect("stderr is not UTF-8")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("gdesign-cli-test-{name}"));
    std::fs::write(&path, contents).expect("failed to write temp file");
    path
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

#[test]
fn spectrum_cube_three_is_byte_exact() {
    let expected = "\
spectrum: cube n=3 distance=1 [exact]
#  eigenvalue  random-walk  dimension  tie-group  weight-classes
0  0           1            1          0          0
1  -2          -1           1          0          3
2  -2/3        1/3          3          1          1
3  -4/3        -1/3         3          1          2
";
    assert_eq!(stdout_of(&["spectrum", "--cube", "3"]), expected);
}

#[test]
fn spectrum_distance_two_cube_merges_weight_classes() {
    let expected = "\
spectrum: cube n=3 distance=2 [exact]
#  eigenvalue  random-walk  dimension  tie-group  weight-classes
0  0           1            1          0          0
1  -4/3        -1/3         3          1          2
2  -1          0            4          2          1,3
";
    assert_eq!(
        stdout_of(&["spectrum", "--cube", "3", "--dist", "2"]),
        expected
    );
}

#[test]
fn spectrum_fixture_uses_floating_arithmetic() {
    let expected = "\
spectrum: fixture complete:5 [floating]
#  eigenvalue      random-walk      dimension  tie-group
0  0               1.00000000000    1          0
1  -1.25000000000  -0.250000000000  4          1
";
    assert_eq!(
        stdout_of(&["spectrum", "--fixture", "complete:5"]),
        expected
    );
}

#[test]
fn spectrum_reads_graph_files() {
    let path = temp_file(
        "square.json",
        r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}"#,
    );
    let out = stdout_of(&["spectrum", "--graph", path.to_str().unwrap()]);
    assert!(out.contains("[floating]"), "{out}");
    assert!(out.contains("-2.00000000000"), "{out}");
    assert!(out.lines().count() == 5, "{out}");
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[test]
fn verify_hamming_code_on_seven_cube() {
    let out = stdout_of(&["verify", "--cube", "7", "--code", "hamming:3"]);
    assert!(
        out.starts_with("verify: cube n=7 distance=1 [exact]\n"),
        "{out}"
    );
    assert!(out.contains("design (16 of 128 vertices): 0, 7, "), "{out}");
    assert!(out.contains("k-design rank: 7"), "{out}");
    assert!(out.contains("integrated dimension: 93"), "{out}");
    assert!(out.contains("efficacy: 16/93"), "{out}");
    assert!(out.contains("extremal: yes"), "{out}");
    assert!(out.contains("stable: yes"), "{out}");
    // Exactly one eigenspace fails: the weight-4 class.
    let failing: Vec<&str> = out.lines().filter(|l| l.ends_with(" no")).collect();
    assert_eq!(failing.len(), 1, "{out}");
    assert!(failing[0].contains("4"), "{out}");
}

#[test]
fn verify_lifted_code_is_extremal_but_not_stable() {
    let out = stdout_of(&["verify", "--cube", "4", "--code", "lift:hamming:2"]);
    assert!(
        out.contains("design (4 of 16 vertices): 0, 7, 8, 15"),
        "{out}"
    );
    assert!(out.contains("k-design rank: 4"), "{out}");
    assert!(out.contains("efficacy: 2/5"), "{out}");
    assert!(out.contains("extremal: yes"), "{out}");
    assert!(out.contains("stable: no"), "{out}");
}

#[test]
fn verify_accepts_vertex_lists_and_binary_words() {
    let by_index = stdout_of(&["verify", "--cube", "3", "--design", "0,7"]);
    let by_word = stdout_of(&["verify", "--cube", "3", "--design", "000,111"]);
    assert_eq!(by_index, by_word);
    assert!(by_index.contains("efficacy: 2/5"), "{by_index}");
}

#[test]
fn verify_reads_designs_from_files() {
    let path = temp_file("design.txt", "0\n7\n");
    let from_file = stdout_of(&["verify", "--cube", "3", "--design", path.to_str().unwrap()]);
    let inline = stdout_of(&["verify", "--cube", "3", "--design", "0,7"]);
    assert_eq!(from_file, inline);
}

#[test]
fn verify_single_vertex_on_complete_graph() {
    let out = stdout_of(&["verify", "--fixture", "complete:5", "--design", "0"]);
    assert!(out.contains("k-design rank: 1"), "{out}");
    assert!(out.contains("integrated dimension: 1"), "{out}");
    assert!(out.contains("efficacy: 1"), "{out}");
    assert!(out.contains("extremal: yes"), "{out}");
    assert!(out.contains("stable: yes"), "{out}");
}

#[test]
fn verify_tolerance_applies_to_floating_graphs() {
    let out = stdout_of(&[
        "verify",
        "--fixture",
        "petersen",
        "--design",
        "0,1",
        "--tolerance",
        "1e-6",
    ]);
    assert!(out.contains("design (2 of 10 vertices)"), "{out}");
}

// ---------------------------------------------------------------------------
// search
// ---------------------------------------------------------------------------

#[test]
fn search_three_cube_is_byte_exact() {
    let expected = "\
search: cube n=3 distance=1 [exact]
max subset size: 8
subsets examined: 254 (every nonempty proper subset)
best efficacy: 2/5
witnesses (4):
  3, 4
  2, 5
  1, 6
  0, 7
";
    assert_eq!(
        stdout_of(&["search", "--cube", "3", "--max-size", "8"]),
        expected
    );
}

#[test]
fn search_four_cube_finds_sixteen_witnesses() {
    let out = stdout_of(&["search", "--cube", "4", "--max-size", "4"]);
    assert!(out.contains("subsets examined: 2516 (partial)"), "{out}");
    assert!(out.contains("best efficacy: 2/5"), "{out}");
    assert!(out.contains("witnesses (16):"), "{out}");
    assert!(out.contains("  0, 7, 8, 15\n"), "{out}");
}

#[test]
fn search_singletons_on_complete_graph() {
    let out = stdout_of(&["search", "--fixture", "complete:5", "--max-size", "1"]);
    assert!(out.contains("subsets examined: 5 (partial)"), "{out}");
    assert!(out.contains("best efficacy: 1"), "{out}");
    assert!(out.contains("witnesses (5):"), "{out}");
}

#[test]
fn search_output_is_deterministic() {
    let first = stdout_of(&["search", "--cube", "4", "--max-size", "4"]);
    let second = stdout_of(&["search", "--cube", "4", "--max-size", "4"]);
    assert_eq!(first, second);
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

#[test]
fn reproduce_targets_all_pass() {
    for target in ["table1", "table2", "table3", "efficacies"] {
        let out = gdesign(&["reproduce", target]);
        assert_eq!(out.status.code(), Some(0), "target {target}");
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(
            text.trim_end().ends_with("result: pass"),
            "target {target}: {text}"
        );
        assert!(!text.contains("MISMATCH"), "target {target}: {text}");
    }
}

#[test]
fn reproduce_rejects_unknown_targets() {
    assert_eq!(exit_code(&["reproduce", "nonsense"]), 2);
    let err = stderr_of(&["reproduce", "nonsense"]);
    assert!(err.contains("unknown reproduction target"), "{err}");
}

// ---------------------------------------------------------------------------
// exit codes and usage errors
// ---------------------------------------------------------------------------

#[test]
fn oversized_searches_exit_four() {
    let out = gdesign(&["search", "--cube", "12", "--max-size", "2048"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exceeds limit"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    // No graph source.
    assert_eq!(exit_code(&["spectrum"]), 2);
    // Conflicting graph sources.
    assert_eq!(
        exit_code(&["spectrum", "--cube", "3", "--fixture", "petersen"]),
        2
    );
    // --dist requires --cube.
    assert_eq!(
        exit_code(&["spectrum", "--fixture", "petersen", "--dist", "2"]),
        2
    );
    // --tolerance is rejected on the exact path.
    assert_eq!(
        exit_code(&[
            "verify",
            "--cube",
            "3",
            "--design",
            "0,7",
            "--tolerance",
            "1e-9"
        ]),
        2
    );
    // --code requires a cube.
    assert_eq!(
        exit_code(&["verify", "--fixture", "petersen", "--code", "hamming:3"]),
        2
    );
    // Code length must match the cube dimension.
    assert_eq!(
        exit_code(&["verify", "--cube", "5", "--code", "hamming:3"]),
        2
    );
    // Exactly one of --code / --design.
    assert_eq!(exit_code(&["verify", "--cube", "3"]), 2);
    assert_eq!(
        exit_code(&[
            "verify",
            "--cube",
            "7",
            "--code",
            "hamming:3",
            "--design",
            "0"
        ]),
        2
    );
    // Out-of-range vertices.
    assert_eq!(exit_code(&["verify", "--cube", "3", "--design", "9"]), 2);
}

// ---------------------------------------------------------------------------
// structured output
// ---------------------------------------------------------------------------

#[test]
fn structured_verify_is_valid_json() {
    let text = stdout_of(&[
        "verify",
        "--cube",
        "3",
        "--design",
        "000,111",
        "--format",
        "structured",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("invalid JSON");
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["arithmetic"], "exact");
    assert_eq!(doc["vertex_count"], 8);
    assert_eq!(doc["design"], serde_json::json!([0, 7]));
    assert_eq!(doc["k"], 3);
    assert_eq!(doc["integrated_dimension"], 5);
    assert_eq!(doc["efficacy"], "2/5");
    assert_eq!(doc["extremal"], true);
    assert_eq!(doc["stable"], true);
    let spaces = doc["eigenspaces"].as_array().expect("eigenspaces array");
    assert_eq!(spaces.len(), 4);
    assert_eq!(spaces[3]["eigenvalue"], "-4/3");
    assert_eq!(spaces[3]["integrated"], false);
}

#[test]
fn structured_search_lists_witnesses() {
    let text = stdout_of(&[
        "search",
        "--cube",
        "3",
        "--max-size",
        "8",
        "--format",
        "structured",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("invalid JSON");
    assert_eq!(doc["command"], "search");
    assert_eq!(doc["subsets_examined"], 254);
    assert_eq!(doc["exhaustive"], true);
    assert_eq!(doc["best_efficacy"], "2/5");
    let witnesses = doc["witnesses"].as_array().expect("witnesses array");
    assert_eq!(witnesses.len(), 4);
    assert_eq!(witnesses[3], serde_json::json!([0, 7]));
}

#[test]
fn structured_reproduce_reports_rows() {
    let text = stdout_of(&["reproduce", "efficacies", "--format", "structured"]);
    let doc: serde_json::Value = serde_json::from_str(&text).expect("invalid JSON");
    assert_eq!(doc["command"], "reproduce");
    assert_eq!(doc["passed"], true);
    let rows = doc["rows"].as_array().expect("rows array");
    assert!(rows.iter().all(|r| r["matched"] == true), "{text}");
}

// ---------------------------------------------------------------------------
// code specifications
// ---------------------------------------------------------------------------

#[test]
fn code_files_match_builtin_codes() {
    let path = temp_file("hamming2.txt", "101\n011\n");
    let from_file = stdout_of(&[
        "verify",
        "--cube",
        "3",
        "--code",
        &format!("file:{}", path.display()),
    ]);
    let builtin = stdout_of(&["verify", "--cube", "3", "--code", "hamming:2"]);
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.starts_with("code:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&from_file), strip(&builtin));
}

#[test]
fn dual_and_projection_specs_compose() {
    let out = stdout_of(&["verify", "--cube", "6", "--code", "project:hamming:3"]);
    assert!(out.contains("efficacy: 8/29"), "{out}");
    assert!(out.contains("k-design rank: 5"), "{out}");
    let dual = stdout_of(&["verify", "--cube", "7", "--code", "dual:hamming:3"]);
    assert!(dual.contains("design (8 of 128 vertices)"), "{dual}");
}
