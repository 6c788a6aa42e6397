use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ispab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ispab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn path_in(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

#[test]
fn complete_graph_is_a_member() {
    let dir = TempDir::new().unwrap();
    let k5 = write(&dir, "k5.g6", "D~{\n");
    let out = ispab(&["detect", "--input", &k5]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "detect");
    assert_eq!(v["result"]["member"], true);
    assert!(v["result"].get("witness").is_none());
}

#[test]
fn pattern_is_rejected_with_a_witness() {
    let dir = TempDir::new().unwrap();
    let p = path_in(&dir, "p.g6");
    assert_eq!(
        ispab(&["gen", "pattern", "2", "2", "--output", &p])
            .status
            .code(),
        Some(0)
    );
    for command in ["detect", "decompose"] {
        let out = ispab(&[command, "--input", &p, "--a", "2"]);
        assert_eq!(out.status.code(), Some(1), "{command}");
        let v = json(&out);
        assert_eq!(v["result"]["member"], false);
        assert_eq!(
            v["result"]["witness"]["branch_map"]
                .as_array()
                .unwrap()
                .len(),
            7
        );
    }
}

#[test]
fn malformed_input_exits_two_with_context() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.g6", "garbage!!\n");
    let out = ispab(&["detect", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.g6") && err.contains("graph6"), "{err}");

    let edges = write(&dir, "g.txt", "0 1\n1 x\n");
    let out = ispab(&["detect", "--input", &edges]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("edgelist") && err.contains("line 2"), "{err}");

    let missing = path_in(&dir, "missing.g6");
    assert_eq!(
        ispab(&["detect", "--input", &missing]).status.code(),
        Some(2)
    );
    assert_eq!(ispab(&["gen", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        ispab(&["detect", "--input", &edges, "--guard-override", "bogus=1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn format_flag_overrides_the_extension() {
    let dir = TempDir::new().unwrap();
    let dimacs = write(&dir, "graph.txt", "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
    let out = ispab(&["detect", "--input", &dimacs, "--format", "dimacs"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["edge_count"], 3);
}

#[test]
fn decompose_reports_a_member() {
    let dir = TempDir::new().unwrap();
    let k5 = write(&dir, "k5.g6", "D~{\n");
    let out = ispab(&["decompose", "--input", &k5, "--tau-mode", "oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "decompose");
    assert_eq!(v["result"]["omega"], 5);
    assert_eq!(v["result"]["chi"], 5);
}

#[test]
fn campaigns_are_deterministic_and_replayable() {
    let dir = TempDir::new().unwrap();
    let first = path_in(&dir, "first.json");
    let second = path_in(&dir, "second.json");
    let args = [
        "verify",
        "--suite",
        "violations",
        "--instances",
        "30",
        "--seed",
        "11",
    ];
    for out_path in [&first, &second] {
        let mut a = args.to_vec();
        a.extend(["--json-out", out_path.as_str()]);
        let out = ispab(&a);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(fs::read(&first).unwrap(), fs::read(&second).unwrap());
    let summary: Value = serde_json::from_slice(&fs::read(&first).unwrap()).unwrap();
    assert_eq!(summary["result"]["passed"], 30);

    let replay = |index: &str| {
        let mut a = args.to_vec();
        a.extend(["--replay", index]);
        ispab(&a)
    };
    let once = replay("7");
    assert_eq!(once.status.code(), Some(0));
    assert_eq!(once.stdout, replay("7").stdout);
    let report = json(&once);
    assert_eq!(report["result"]["index"], 7);
    assert_eq!(report["result"]["status"], "pass");
    assert!(!report["result"]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn campaign_config_file_is_read() {
    let dir = TempDir::new().unwrap();
    let config = write(
        &dir,
        "c.json",
        r#"{"suite": "chi", "seed": 5, "instances": 12}"#,
    );
    let out = ispab(&["verify", "--config", &config]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["config"]["suite"], "chi");
    assert_eq!(
        v["result"]["passed"].as_u64().unwrap() + v["result"]["skipped"].as_u64().unwrap(),
        12
    );
}

#[test]
fn bounds_sheet() {
    let out = ispab(&[
        "bounds",
        "--a",
        "2",
        "--omega",
        "3",
        "--tau",
        "2",
        "--d-constant",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "bounds");
    assert_eq!(v["result"]["f"], 10);
    assert_eq!(v["result"]["d"], "7");
    let bad_c = ispab(&[
        "bounds",
        "--a",
        "2",
        "--omega",
        "3",
        "--tau",
        "2",
        "--c-const",
        "1/0",
    ]);
    assert_eq!(bad_c.status.code(), Some(2));
}

#[test]
fn generated_graphs_round_trip() {
    let dir = TempDir::new().unwrap();
    let cases: [&[&str]; 7] = [
        &["pattern", "2", "1"],
        &["multipartite", "2,3,1"],
        &["complete", "6"],
        &["path", "5"],
        &["cycle", "7"],
        &["petersen"],
        &["random", "12", "0.4"],
    ];
    for case in cases {
        let mut seen = None;
        for ext in ["g6", "col", "txt"] {
            let file = path_in(&dir, &format!("{}.{ext}", case[0]));
            let mut a = vec!["gen"];
            a.extend_from_slice(case);
            a.extend(["--seed", "4", "--output", &file]);
            assert_eq!(ispab(&a).status.code(), Some(0), "{case:?}");
            // read through detect to confirm every format parses to the same graph
            let report = json(&ispab(&["detect", "--input", &file, "--a", "1"]));
            let key = (
                report["result"]["vertex_count"].clone(),
                report["result"]["edge_count"].clone(),
            );
            assert_eq!(*seen.get_or_insert(key.clone()), key, "{case:?} {ext}");
        }
    }
    let out = ispab(&["gen", "petersen"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "IheA@GUAo");
}
