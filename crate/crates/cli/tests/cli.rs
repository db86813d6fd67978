use std::process::{Command, Output};

fn heckoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heckoid")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn relator_text() {
    let out = heckoid(&["relator", "2/5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("u_r = abaBAbabAB"));
    assert!(text.contains("S = [3,2,3,2]"));

    let text = stdout(&heckoid(&["relator", "1/3"]));
    assert!(text.contains("u_r = abaBAB") && text.contains("S = [3,3]"));
    assert!(stdout(&heckoid(&["relator", "3/10"])).contains("CS = ((4,3,3,4,3,3))"));
}

#[test]
fn reduce_examples() {
    let first_line = |args: &[&str]| stdout(&heckoid(args)).lines().next().unwrap().to_string();
    assert_eq!(first_line(&["reduce", "7/23", "--r", "3/10", "--n", "2"]), "5/17");
    assert_eq!(first_line(&["reduce", "inf", "--r", "3/10", "--n", "2"]), "inf");
    assert_eq!(first_line(&["reduce", "41/100", "--r", "2/5", "--n", "2"]), "inf");
}

#[test]
fn decide_emits_the_report_schema() {
    let out = heckoid(&["decide", "7/23", "--r", "3/10", "--n", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["r"], "3/10");
    assert_eq!(v["n"], 2);
    assert_eq!(v["s"], "7/23");
    assert_eq!(v["verdict"], false);
    assert_eq!(v["canonical"], "5/17");
    assert_eq!(v["witness"], "P(-1)");
    assert_eq!(v["method"], "Both");
    assert_eq!(v["consistent"], true);

    let v: serde_json::Value = serde_json::from_slice(&heckoid(&["decide", "41/100", "--r", "2/5"]).stdout).unwrap();
    assert_eq!(v["verdict"], true);
    let v: serde_json::Value = serde_json::from_slice(&heckoid(&["decide", "-59/100", "--r", "2/5"]).stdout).unwrap();
    assert_eq!(v["verdict"], false);
    assert_eq!(v["epimorphism"]["via"], "s_plus_one");
    let v: serde_json::Value = serde_json::from_slice(&heckoid(&["decide", "inf", "--r", "2/5"]).stdout).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["method"], "FareyReduction");
}

#[test]
fn output_is_deterministic() {
    let args = ["epis", "--r", "2/5", "--n", "2", "--max-denom", "60", "--format", "json"];
    let one = heckoid(&[&args[..], &["--jobs", "1"]].concat());
    let four = heckoid(&[&args[..], &["--jobs", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(heckoid(&["verify", "patterns", "--r", "3/10", "--n", "2", "--max-denom", "50"]).status.code(), Some(0));
    assert_eq!(heckoid(&["verify", "prop51", "--r", "2/5", "--max-denom", "20"]).status.code(), Some(0));
    assert_eq!(heckoid(&["verify", "smallcancel", "--max-p", "7", "--n", "2,3"]).status.code(), Some(0));
    assert_eq!(heckoid(&["verify", "lemmas", "--max-p", "60"]).status.code(), Some(0));
    let out = heckoid(&["verify", "crosscheck", "--r", "1/3", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("1/3 (Interval)"));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(heckoid(&["reduce", "x", "--r", "1/3"]).status.code(), Some(2));
    assert_eq!(heckoid(&["decide", "1/2", "--r", "1"]).status.code(), Some(2));
    assert_eq!(heckoid(&["decide", "1/2", "--r", "1/3", "--n", "1"]).status.code(), Some(2));
    assert_eq!(heckoid(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(heckoid(&["seq", "abx"]).status.code(), Some(2));
}
