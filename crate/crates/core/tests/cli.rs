use std::process::{Command, Output};

fn levelstir(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_levelstir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn stirling_value() {
    let out = levelstir(&["stirling", "--kind", "2", "--level", "2", "--n", "5", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "30\n");
    let out = levelstir(&["stirling", "--kind", "1", "--level", "2", "--n", "3", "--k", "1"]);
    assert_eq!(stdout(&out), "4\n");
}

#[test]
fn bernoulli_and_negative_k() {
    assert_eq!(stdout(&levelstir(&["bernoulli2", "--n", "12"])), "29167388522/1365\n");
    assert_eq!(stdout(&levelstir(&["pb2", "--n", "4", "--k", "-2"])), "582\n");
    assert_eq!(stdout(&levelstir(&["pc2", "--n", "4", "--k", "1"])), "-17/15\n");
}

#[test]
fn odd_subscript_is_usage_error() {
    let out = levelstir(&["pb2", "--n", "5", "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd"));
}

#[test]
fn unknown_command_and_flag() {
    assert_eq!(levelstir(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(levelstir(&["vsc", "--n", "3", "--bogus"]).status.code(), Some(1));
    assert_eq!(levelstir(&["--help"]).status.code(), Some(0));
}

#[test]
fn vsc_report() {
    let out = levelstir(&["vsc", "--n", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim_end().ends_with("defect = 1"));
    assert!(stdout(&levelstir(&["vsc", "--n", "8"])).trim_end().ends_with("defect = 0"));
}

#[test]
fn frac_table_csv() {
    let out = stdout(&levelstir(&["table", "frac", "--max", "20", "--format", "csv"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "2n,B_2n,frac");
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[7], "12,29167388522/1365,272/1365");
    assert_eq!(lines[11], "20,7637588708954836042/165,37/165");
}

#[test]
fn congruence_tables() {
    let out = stdout(&levelstir(&["table", "cong", "--mod", "7", "--format", "csv"]));
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], "0,6,6,0,1,1,0");
    assert_eq!(rows[5], "5,6,5,6,1,2,1");
    assert_eq!(stdout(&levelstir(&["congruence", "--mod", "5", "--n", "1", "--k", "1"])), "1\n");
}

#[test]
fn json_schema() {
    let out = stdout(&levelstir(&["pb2", "--n", "2", "--k", "-3", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "pb2");
    assert_eq!(v["params"]["k"], "-3");
    assert_eq!(v["result"], "54");

    let out = stdout(&levelstir(&["table", "stirling2", "--level", "3", "--n", "4", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let row4: Vec<&str> = rows[4].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(row4, ["4", "0", "1", "73", "36", "1"]);
}

#[test]
fn verify_exit_codes() {
    let out = levelstir(&["verify", "--nmax", "3", "--kmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().all(|l| !l.starts_with("[FAIL]")));
    let out = levelstir(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = levelstir(&["verify", "--nmax", "5", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("[FAIL] stirling explicit formulas"));
}
