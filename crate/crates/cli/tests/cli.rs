use std::process::{Command, Output};

use serde_json::Value;

fn permstack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permstack"))
        .args(args)
        .env_remove("PERMSTACK_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = permstack(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut with = args.to_vec();
    with.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&with)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    permstack(args).status.code().unwrap()
}

#[test]
fn sort_examples() {
    assert_eq!(stdout(&["sort", "--patterns", "21", "--perm", "132"]), "123\n");
    assert_eq!(stdout(&["sort", "--patterns", "123,132", "--perm", "52413"]), "42315\n");
    assert_eq!(stdout(&["sort", "--patterns", "123,132", "--perm", "5,2,4,1,3"]), "42315\n");
}

#[test]
fn trace_is_one_json_object_per_step() {
    let out = stdout(&["sort", "--patterns", "123,132", "--perm", "52413", "--trace"]);
    let events: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(events.len(), 10);
    assert_eq!(events.last().unwrap()["output"], serde_json::json!([4, 2, 3, 1, 5]));
    let steps: String = events.iter().map(|e| e["step"].as_str().unwrap()).collect();
    let v = json(&["sort", "--patterns", "123,132", "--perm", "52413"]);
    assert_eq!(v["movement_sequence"].as_str().unwrap(), steps);
}

#[test]
fn table_csv_rows() {
    let out = stdout(&["table", "--max-n", "4", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "sigma,tau,n1,n2,n3,n4,catalan");
    assert_eq!(lines.len(), 16);
    assert!(lines.iter().any(|l| l.starts_with("132,312,1,2,5,14,")));
    assert!(lines.iter().any(|l| l.starts_with("123,321,1,2,4,7,")));
    assert_eq!(lines.iter().filter(|l| l.ends_with(",true")).count(), 4);
}

#[test]
fn table_reports_conflicts() {
    let out = permstack(&["table", "--max-n", "4", "--format", "csv"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(213,231)"), "{err}");
    let text = stdout(&["table", "--max-n", "4"]);
    assert!(text.lines().any(|l| l.contains("(213,231)") && l.contains("conflicting")));
    let v = json(&["table", "--max-n", "4"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 15);
}

#[test]
fn preimages_of_identity_under_stack_sort() {
    let text = stdout(&["preimages", "--patterns", "21", "--perm", "1,2,3,4"]);
    assert_eq!(text.lines().count(), 14);
    let v = json(&["preimages", "--patterns", "21", "--perm", "1,2,3,4"]);
    assert_eq!(v["count"], 14);
    let listed: Vec<String> = v["preimages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p.as_array().unwrap().iter().map(|x| x.to_string()).collect())
        .collect();
    assert_eq!(listed, text.lines().collect::<Vec<_>>());
}

#[test]
fn orbit_image_and_inverse() {
    let text = stdout(&["orbit", "--patterns", "123,132", "--perm", "2,1,3"]);
    assert!(text.contains("cycle length: 2"), "{text}");
    assert_eq!(json(&["orbit", "--patterns", "123,132", "--perm", "2,1,3"])["cycle_length"], 2);
    assert_eq!(stdout(&["image", "--patterns", "123", "--n", "3"]), "5\n");
    assert_eq!(json(&["image", "--patterns", "123", "--n", "3"])["image_size"], 5);
    assert_eq!(stdout(&["inverse", "--patterns", "132,312", "--perm", "42315"]), "51342\n");
}

#[test]
fn clump_segments() {
    assert_eq!(stdout(&["clump", "--patterns", "321,231", "--perm", "731426"]), "73|1|4|26\n");
    assert_eq!(stdout(&["clump", "--patterns", "123,132", "--perm", "731426"]), "|7|3|1426\n");
    assert_eq!(stdout(&["clump", "--patterns", "21", "--perm", "321"]), "none\n");
}

#[test]
fn fertility_and_periodic() {
    let v = json(&["fertility", "--patterns", "213", "--n", "5"]);
    assert_eq!(v["max_count"], 14);
    assert_eq!(v["bound"], 14);
    let v = json(&["periodic", "--patterns", "123,132", "--n", "5"]);
    assert_eq!(v["periodic_points"], 6);
    assert_eq!(v["cycles"].as_array().unwrap().len(), 2);
    let text = stdout(&["periodic", "--patterns", "123,132", "--n", "5"]);
    assert!(text.starts_with("6 periodic points in 2 cycles"));
}

#[test]
fn verify_suites() {
    let out = stdout(&["verify", "--suite", "recursion", "--max-n", "6"]);
    assert!(out.starts_with("PASS recursion"));
    let out = stdout(&["verify", "--suite", "all", "--max-n", "3"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 8);
    let v = json(&["verify", "--suite", "periodic,bound", "--max-n", "5"]);
    assert!(v.as_array().unwrap().iter().all(|r| r["passed"] == true));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["sort", "--patterns", "21", "--perm", "1x2"]), 2);
    assert_eq!(code(&["sort", "--patterns", "21", "--perm", "0,1"]), 2);
    assert_eq!(code(&["sort", "--patterns", "21"]), 2);
    assert_eq!(code(&["sort", "--patterns", "1", "--perm", "12"]), 3);
    assert_eq!(code(&["sort", "--patterns", "", "--perm", "12"]), 3);
    assert_eq!(code(&["table", "--max-n", "9"]), 4);
    assert_eq!(code(&["image", "--patterns", "12", "--n", "13"]), 4);
    assert_eq!(code(&["inverse", "--patterns", "123", "--perm", "123"]), 3);
    assert_eq!(code(&["verify", "--suite", "nope"]), 2);
    assert_eq!(code(&["image", "--patterns", "12", "--n", "3", "--format", "csv"]), 2);
}

#[test]
fn size_cap_override() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_permstack"))
            .args(["image", "--patterns", "132,312", "--n", "9"])
            .env("PERMSTACK_MAX_N", cap)
            .output()
            .unwrap()
    };
    let ok = run("9");
    assert!(ok.status.success());
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "362880\n");
    assert_eq!(run("13").status.code(), Some(2));
    assert_eq!(run("7").status.code(), Some(4));
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let commands: [&[&str]; 4] = [
        &["table", "--max-n", "6", "--format", "csv"],
        &["fertility", "--patterns", "213,231", "--n", "6", "--format", "json"],
        &["periodic", "--patterns", "123,132", "--n", "7"],
        &["verify", "--suite", "bijectivity,bound", "--max-n", "5", "--format", "json"],
    ];
    for args in commands {
        let base = permstack(&[args, &["--parallel", "1"]].concat()).stdout;
        for workers in ["2", "4", "0"] {
            assert_eq!(permstack(&[args, &["--parallel", workers]].concat()).stdout, base, "{args:?}");
        }
    }
}
