use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ftd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftd"))
        .args(args)
        .output()
        .expect("failed to launch the ftd binary")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is not utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is not utf-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process was killed by a signal")
}

fn json_stdout(out: &Output) -> Value {
    serde_json::from_str(&stdout_of(out)).expect("stdout is not a single JSON document")
}

#[test]
fn construct_writes_a_design_file_that_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fano.json");
    let out = ftd(&["construct", "pg", "--n", "3", "--q", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("2-(7, 3, 1)"));

    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(file["schema"], 1);
    assert_eq!(file["v"], 7);
    assert_eq!(file["blocks"].as_array().unwrap().len(), 7);
    assert_eq!(file["meta"]["group"], "PSL3(2)");

    let out = ftd(&["verify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_of(&out));
    let params = json_stdout(&out);
    assert_eq!(params["v"], 7);
    assert_eq!(params["b"], 7);
    assert_eq!(params["r"], 3);
    assert_eq!(params["k"], 3);
    assert_eq!(params["lambda"], 1);
    assert_eq!(params["symmetric"], true);
}

#[test]
fn construct_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = ftd(&["construct", "hermitian", "--q", "3", "--out", path.to_str().unwrap()]);
        assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_of(&out));
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b, "two runs wrote different files");
}

#[test]
fn verify_checks_flag_transitivity_when_asked() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("suzuki8.json");
    let out = ftd(&["construct", "suzuki", "--q", "8", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_of(&out));

    let out = ftd(&["verify", path.to_str().unwrap(), "--group", "sz8"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).contains("flag-transitive under sz8: true"));
}

#[test]
fn verify_rejects_a_tampered_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fano.json");
    let out = ftd(&["construct", "pg", "--n", "3", "--q", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);

    let mut file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let first = file["blocks"][0].as_array().unwrap().clone();
    file["blocks"][0] = Value::from(first[..2].to_vec());
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();

    let out = ftd(&["verify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr_of(&out).contains("block sizes differ"));
}

#[test]
fn line_geometry_rejects_parameters_with_a_common_factor() {
    let out = ftd(&["construct", "pg-lines", "--n", "3", "--q", "3"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr_of(&out).contains("gcd"));
}

#[test]
fn excluded_families_are_a_usage_error() {
    for family in ["ree", "ree-unital"] {
        let out = ftd(&["construct", family, "--q", "3"]);
        assert_eq!(exit_code(&out), 2, "family {family}");
        assert!(stderr_of(&out).contains("not included"), "family {family}");
    }
}

#[test]
fn missing_arguments_are_a_usage_error() {
    let out = ftd(&["construct", "pg"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("--n"));

    let out = ftd(&["sieve"]);
    assert_eq!(exit_code(&out), 2);

    let out = ftd(&["verify", "/no/such/file.json"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn sieve_scan_lists_candidates_and_coprime_survivors() {
    let out = ftd(&["sieve", "--v", "45", "--divisors", "24", "--lambda-max", "17"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_of(&out));
    let scan = json_stdout(&out);
    let tuples: Vec<[u64; 5]> = scan["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            [
                c["v"].as_u64().unwrap(),
                c["b"].as_u64().unwrap(),
                c["r"].as_u64().unwrap(),
                c["k"].as_u64().unwrap(),
                c["lambda"].as_u64().unwrap(),
            ]
        })
        .collect();
    assert!(tuples.contains(&[45, 90, 24, 12, 6]));
    assert_eq!(scan["coprime_survivors"].as_array().unwrap().len(), 0);
}

#[test]
fn sieve_scan_finds_the_point_hyperplane_parameters() {
    let out = ftd(&["sieve", "--v", "7", "--divisors", "6"]);
    assert_eq!(exit_code(&out), 0);
    let scan = json_stdout(&out);
    let survivors = scan["coprime_survivors"].as_array().unwrap();
    assert_eq!(survivors.len(), 1);
    assert_eq!(survivors[0]["b"], 7);
    assert_eq!(survivors[0]["r"], 3);
    assert_eq!(survivors[0]["k"], 3);
    assert_eq!(survivors[0]["lambda"], 1);
}

#[test]
fn every_shipped_catalog_case_is_eliminated() {
    let out = ftd(&["sieve", "--catalog", "all"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("83 eliminated, 0 unresolved"));
    let reports = json_stdout(&out);
    for report in reports.as_array().unwrap() {
        assert_eq!(report["verdict"], "eliminated", "case: {}", report["case"]["description"]);
    }
}

#[test]
fn sieve_accepts_a_user_case_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cases.json");
    std::fs::write(
        &path,
        r#"{"cases":[{"description":"toy","l_v":"512","u_r":2}]}"#,
    )
    .unwrap();
    let out = ftd(&["sieve", "--case-file", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_of(&out));
    let reports = json_stdout(&out);
    assert_eq!(reports[0]["verdict"], "eliminated");
}

#[test]
fn reproduce_table1_passes() {
    let out = ftd(&["reproduce", "--table1"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("13/13 passed"), "output: {text}");
    assert!(!text.contains("FAIL"), "output: {text}");
}

#[test]
fn catalog_line_construction_matches_its_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("line7.json");
    let out = ftd(&["construct", "table1", "--line", "7", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr_of(&out));

    let out = ftd(&["verify", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let params = json_stdout(&out);
    assert_eq!(params["v"], 12);
    assert_eq!(params["b"], 22);
    assert_eq!(params["r"], 11);
    assert_eq!(params["k"], 6);
    assert_eq!(params["lambda"], 5);
}

fn read_design(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn witt_style_designs_have_unit_lambda() {
    let dir = tempfile::tempdir().unwrap();
    for (q, v, k) in [(8u32, 28u64, 4u64), (16, 120, 8)] {
        let path = dir.path().join(format!("wbs{q}.json"));
        let out = ftd(&["construct", "wbs", "--q", &q.to_string(), "--out", path.to_str().unwrap()]);
        assert_eq!(exit_code(&out), 0, "q = {q}, stderr: {}", stderr_of(&out));
        let file = read_design(&path);
        assert_eq!(file["v"].as_u64().unwrap(), v, "q = {q}");
        assert_eq!(file["meta"]["params"]["k"].as_u64().unwrap(), k, "q = {q}");
        assert_eq!(file["meta"]["params"]["lambda"], 1, "q = {q}");
    }
}
