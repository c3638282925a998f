use std::process::{Command, Output};

use serde_json::Value;

fn weakid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakid"))
        .args(args)
        .env_remove("WEAKID_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let o = weakid(&full);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn strip_wall_time(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_time");
            m.values_mut().for_each(strip_wall_time);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_wall_time),
        _ => {}
    }
}

#[test]
fn check_commutator_on_s3() {
    let o = weakid(&[
        "check", "--group", "sym:3", "--word", "[g1,g2]", "--height", "2",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("HOLDS"));

    let v = json(&["check", "-g", "sym:3", "-w", "g1^2", "-n", "5"]);
    assert_eq!(v["status"], "FAILS");
    assert_eq!(v["height"], 5);
    let witness = v["witness"].as_array().unwrap();
    assert_eq!(witness.len(), 5);
    assert!(witness.iter().all(|c| c["assignment"]["g1"] == "(1 2 3)"));
    assert!(v["stats"]["nodes"].as_u64().unwrap() > 0);
}

#[test]
fn height_of_commutator() {
    let o = weakid(&["height", "--group", "sym:3", "--word", "[g1,g2]"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("least height 2"));
    let v = json(&["height", "-g", "q8", "-w", "[g1,g2]"]);
    assert_eq!(v["height"], 2);
}

#[test]
fn disc_reports_certificate() {
    let v = json(&["disc", "--group", "cyclic:2"]);
    assert_eq!(v["status"], "NOT_DISCRIMINATING");
    assert_eq!(v["certificate"].as_array().unwrap().len(), 3);
    let v = json(&["disc", "--group", "trivial"]);
    assert_eq!(v["status"], "DISCRIMINATING");
}

#[test]
fn modulo_verbal_quotient_and_chain() {
    let v = json(&[
        "check-mod",
        "-g",
        "alt:5",
        "-w",
        "g1",
        "-m",
        "[g1,g2]",
        "-n",
        "1",
    ]);
    assert_eq!(v["status"], "HOLDS");
    assert_eq!(v["verbal_order"], 60);
    assert_eq!(v["quotient_order"], 1);

    let v = json(&["verbal", "-g", "sym:3", "-w", "[g1,g2]"]);
    assert_eq!(v["order"], 3);
    let v = json(&["quotient", "-g", "sym:3", "-w", "[g1,g2]"]);
    assert_eq!(v["quotient_order"], 2);

    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("a5_chain.json");
    std::fs::write(
        &path,
        r#"{"chain": [["g1"], ["[g1,g2]"], ["1"]], "heights": [1, 6]}"#,
    )
    .unwrap();
    let v = json(&["chain", "-g", "alt:5", "-f", path.to_str().unwrap()]);
    assert_eq!(v["status"], "HOLDS");
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
}

#[test]
fn centralizer_chain_abelian_and_sampling() {
    let v = json(&["centralizer-chain", "-g", "sym:3"]);
    assert_eq!(v["length"], 2);
    assert_eq!(v["chain"][0]["centralizer_order"], 6);

    let v = json(&["abelian", "-w", "g1^3*g2^-3*[g1,g2]"]);
    assert_eq!(v["is_identity"], false);
    assert_eq!(v["witness"]["g1"], serde_json::json!([1, 0]));

    let a = json(&["sample-tsub", "-w", "[g1,g2]", "--seed", "3"]);
    let b = json(&["sample-tsub", "-w", "[g1,g2]", "--seed", "3"]);
    assert_eq!(a, b);
    assert_eq!(a["samples"].as_array().unwrap().len(), 8);
}

#[test]
fn repro_scenarios_pass() {
    let o = weakid(&["repro", "all"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    for name in [
        "free-example-on-S3",
        "finite-wid",
        "bcs-bound",
        "nontransitivity-A5",
        "abelian-disc",
    ] {
        assert!(text.contains(&format!("{name}: PASS")), "{name}");
    }
    let v = json(&["repro", "nontransitivity-A5"]);
    assert_eq!(v["pass"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(
        weakid(&["check", "-g", "sym:3", "-w", "g1*x", "-n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        weakid(&["check", "-g", "nope:3", "-w", "g1", "-n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(weakid(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(weakid(&["repro", "unknown"]).status.code(), Some(2));
    let capped = weakid(&[
        "check",
        "-g",
        "alt:5",
        "-w",
        "[g1,g2]",
        "-n",
        "2",
        "--node-cap",
        "10",
    ]);
    assert_eq!(capped.status.code(), Some(3));
    assert!(weakid(&["about"]).status.success());
}

#[test]
fn json_is_identical_across_thread_counts() {
    let runs = [
        vec!["check", "-g", "sl:2:3", "-w", "[g1,g2]", "-n", "2"],
        vec![
            "check", "-g", "gl:2:3", "-w", "g1^3", "-w", "[g1,g2]", "-n", "3",
        ],
        vec!["height", "-g", "alt:4", "-w", "[g1,g2]*g1^2"],
        vec!["repro", "all"],
    ];
    for args in runs {
        let mut out = Vec::new();
        for threads in ["1", "8"] {
            let mut full = args.clone();
            full.extend(["--threads", threads]);
            let mut v = json(&full);
            strip_wall_time(&mut v);
            out.push(serde_json::to_string(&v).unwrap());
        }
        assert_eq!(out[0], out[1], "{args:?}");
    }
}

#[test]
fn threads_env_fallback() {
    let o = Command::new(env!("CARGO_BIN_EXE_weakid"))
        .args(["check", "-g", "q8", "-w", "[g1,g2]", "-n", "2"])
        .env("WEAKID_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
}
