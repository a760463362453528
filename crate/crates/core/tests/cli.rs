use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mdm-active"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn compact_format_listing() {
    let (code, out, _) = run(&[
        "construct",
        "--p",
        "2",
        "--a",
        "3",
        "--eps",
        "1e-3",
        "--format",
        "paper",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim(),
        "∅,[...{11}],[...{1,9}],{2,3},{2,4},{1,2,3},{1,2,4}"
    );
    let members = mdm_active_sets::parse_notation(out.trim()).unwrap();
    assert_eq!(members.len(), 24);
}

#[test]
fn json_for_p1_threshold() {
    let (code, out, _) = run(&[
        "construct",
        "--p",
        "1",
        "--a",
        "4",
        "--eps",
        "0.01",
        "--method",
        "pw",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["size"], 6);
    assert_eq!(v["d"], 2);
    assert_eq!(v["method"], "pw");
}

#[test]
fn large_eps_keeps_only_the_empty_set() {
    let (code, out, _) = run(&[
        "construct",
        "--p",
        "2",
        "--a",
        "2",
        "--eps",
        "10",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["size"], 1);
    assert_eq!(v["d"], 0);
    assert_eq!(v["members"], serde_json::json!([[]]));
}

#[test]
fn json_is_reproducible() {
    let args = [
        "construct",
        "--p",
        "inf",
        "--a",
        "3",
        "--c",
        "1/2",
        "--eps",
        "1e-2",
        "--method",
        "qopt",
        "--format",
        "json",
    ];
    let (_, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert!(!first.is_empty());
    assert_eq!(first, second);
}

#[test]
fn normalized_flag_reports_norm() {
    let (code, out, _) = run(&[
        "construct",
        "--p",
        "2",
        "--a",
        "2",
        "--c",
        "2",
        "--eps",
        "0.01",
        "--normalized",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["norm"].as_f64().unwrap() >= 1.0);
    assert!(v["size"].as_u64().unwrap() <= 122);
}

#[test]
fn sweep_csv() {
    let (code, out, _) = run(&["sweep", "--p", "2", "--eps", "0.01"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "c,a,size,d");
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"1,2,30,3"));
    assert!(lines.contains(&"2,2,122,4"));
}

#[test]
fn bad_arguments() {
    let (code, _, _) = run(&["construct", "--p", "2", "--a", "2"]);
    assert_eq!(code, 2);
    let (code, _, err) = run(&["construct", "--p", "2", "--a", "0.5", "--eps", "0.1"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
    let (code, _, _) = run(&[
        "construct",
        "--p",
        "1",
        "--a",
        "2",
        "--eps",
        "0.1",
        "--method",
        "oracle",
    ]);
    assert_eq!(code, 1);
}
