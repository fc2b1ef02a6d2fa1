use std::process::{Command, Output};

fn hypersq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypersq")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_json() {
    let o = hypersq(&["analyze", "Y^2 = -(X^2+1)*(X^2+t1^2)", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["m"], 2);
    assert_eq!(v["order_G"], "2^2");
    assert_eq!(v["order_G_int"], 4);
    assert_eq!(v["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn json_is_deterministic() {
    let args = ["analyze", "Y^2 = -(X^2+1)*(X^2+t2^2)", "-n", "2", "--json", "--trace"];
    assert_eq!(stdout(&hypersq(&args)), stdout(&hypersq(&args)));
}

#[test]
fn trace_marks_counted_nodes() {
    let o = hypersq(&["analyze", "Y^2 = (t1*X-1)*(X^2+1)", "--trace"]);
    let out = stdout(&o);
    assert!(out.contains("m = 1"));
    assert_eq!(out.lines().filter(|l| l.ends_with(" *")).count(), 1);
}

#[test]
fn membership_verdicts() {
    let c = "Y^2 = -(X^2+1)";
    let out = stdout(&hypersq(&["membership", c, "-e", "1 + X^2"]));
    assert!(out.starts_with("sum of 2 squares"));
    let out = stdout(&hypersq(&["membership", c, "-e", "t1*(X^2+1)"]));
    assert!(out.starts_with("not a sum of 2 squares"));
    let out = stdout(&hypersq(&["membership", "Y^2 = X^2+1", "-e", "-1"]));
    assert!(out.starts_with("not a sum of squares"));
}

#[test]
fn membership_sqrt_part_needs_flag() {
    let c = "Y^2 = -(X^2+1)";
    assert_eq!(hypersq(&["membership", c, "-e", "2 + s"]).status.code(), Some(2));
    assert!(hypersq(&["membership", c, "-e", "2 + s", "--assume-sum-of-squares"]).status.success());
}

#[test]
fn generators_and_oracle() {
    let out = stdout(&hypersq(&["generators", "Y^2 = -(X^2+1)", "-n", "2"]));
    assert!(out.contains("phi = [1, 0]") && out.contains("phi = [0, 1]"));
    assert_eq!(stdout(&hypersq(&["oracle", "<1, 1, -t1>"])), "anisotropic\n");
    assert_eq!(stdout(&hypersq(&["oracle", "<1, t1, -t1>"])), "isotropic\n");
    assert_eq!(stdout(&hypersq(&["oracle", "1 + t1^2", "--squares", "2"])), "sum of 2 squares\n");
}

#[test]
fn bad_input_exit_code() {
    assert_eq!(hypersq(&["analyze", "Y^2 = X^3 + 1"]).status.code(), Some(2));
    assert_eq!(hypersq(&["analyze", "Y^2 = (X-"]).status.code(), Some(2));
    assert_eq!(hypersq(&["analyze", "Y^2 = t3*X"]).status.code(), Some(2));
}
