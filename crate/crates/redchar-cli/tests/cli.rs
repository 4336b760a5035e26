use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redchar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn chartab_verify_succeeds() {
    let out = run(&["chartab", "--q", "3", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn packet_scan_lists_two_stable_pairs() {
    let out = run(&["stability", "--q", "3", "--packet", "2x2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["stable_count"], 2);
    let stable: Vec<(i64, i64)> = v["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["stable"] == true)
        .map(|c| (c["s_princ"].as_i64().unwrap(), c["s_cusp"].as_i64().unwrap()))
        .collect();
    assert_eq!(stable, vec![(1, -1), (-1, 1)]);
}

#[test]
fn sl3_needs_q_one_mod_three() {
    let out = run(&["sl3", "--q", "5", "--triple-scan"]);
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert!(err["error"].as_str().unwrap().contains("1 mod 3"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["classes", "--q", "4"]).status.code(), Some(2));
    assert_eq!(run(&["chartab", "--q", "7", "--oracle"]).status.code(), Some(2));
    assert_eq!(run(&["green", "--q", "3", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn verify_all_is_byte_identical_across_runs() {
    let a = run(&["verify-all", "--q", "3", "--seed", "7"]);
    let b = run(&["verify-all", "--q", "3", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
    assert_eq!(json(&a)["passed"], true);
}

#[test]
fn chartab_csv_has_header_and_sizes() {
    let out = run(&["chartab", "--q", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("character,c1(1)xc1(1),"));
    assert!(lines[1].starts_with("class_size,1,"));
    assert_eq!(lines.len(), 2 + 20);
    for group in ["gl2", "sl2"] {
        let out = run(&["chartab", "--q", "3", "--group", group, "--format", "csv"]);
        assert_eq!(out.status.code(), Some(0), "{group}");
    }
}

#[test]
fn decompose_against_oracle() {
    let out = run(&["decompose", "--q", "3", "--rep", "pi_eta2_beta", "--against", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["against"], "oracle");
    let d = &v["decomposition"];
    assert_eq!(d["nonnegative_integral"], true);
    assert_eq!(d["constituents"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_dl_character() {
    let out = run(&["decompose", "--q", "3", "--dl", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = v["decomposition"]["constituents"].as_array().unwrap();
    assert_eq!(c.len(), 4);
    assert!(c.iter().all(|x| x[1] == 1));
}
