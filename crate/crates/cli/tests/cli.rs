use std::process::{Command, Output};

use lineal::commclass::commuting_gf;
use lineal::exactalg::{ratfun_eq, Poly, RatFun};
use lineal::grouper::named::symmetric;
use num_bigint::BigInt;
use serde_json::Value;

fn lineal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lineal"))
        .args(args)
        .env_remove("LINEAL_WORK_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("one JSON object per line")).collect()
}

fn ints(v: &Value) -> Vec<BigInt> {
    v.as_array().unwrap().iter().map(|c| c.as_str().expect("string coefficient").parse().unwrap()).collect()
}

#[test]
fn s3_commuting_headline() {
    let o = lineal(&["group", "--name", "S3", "--kind", "commuting"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "(1 - 3*t + t^2)/((1 - t)*(1 - 2*t)*(1 - 3*t))");
}

#[test]
fn point_configs_m0_is_one() {
    let o = lineal(&["configs", "--kind", "point", "--m", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "1");
}

#[test]
fn structured_round_trip() {
    let o = lineal(&["--format", "structured", "group", "--name", "S4", "--terms", "6", "--matrix"]);
    assert!(o.status.success());
    let recs = records(&o);
    assert_eq!(recs[0]["record"], "gf");
    let f = RatFun::new(Poly::new(ints(&recs[0]["num"])), Poly::new(ints(&recs[0]["den"]))).unwrap();
    assert!(ratfun_eq(&f, &commuting_gf(&symmetric(4).unwrap()).unwrap()));
    assert_eq!(recs[1]["record"], "series");
    assert_eq!(ints(&recs[1]["coefficients"]), f.series(5).unwrap());
    assert_eq!(recs[2]["record"], "matrix");
    assert_eq!(recs[2]["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn vector_configs_list_types() {
    let o = lineal(&["--format", "structured", "configs", "--kind", "vector", "--q", "2", "--m", "2", "--terms", "5"]);
    assert!(o.status.success());
    let recs = records(&o);
    assert_eq!(recs[0]["record"], "gf");
    let classes: Vec<_> = recs.iter().filter(|r| r["record"] == "class").collect();
    assert_eq!(classes.len(), 3);
    // t^2 column is the Gaussian binomial [n, 2]_2
    assert_eq!(ints(&classes[2]["coefficients"]), [0, 0, 1, 7, 35].map(BigInt::from));
}

#[test]
fn matrix_algebra_headline() {
    let o = lineal(&["matrix-alg", "--q", "2", "--m", "2", "--terms", "4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "1/((1 - 2*t)*(1 - 4*t))");
    assert_eq!(lines.next().unwrap(), "series: 1, 6, 28, 120");
}

#[test]
fn expand_rational_and_integer() {
    let o = lineal(&["expand", "--num", "1", "--den", "1,-1,-1", "--terms", "8"]);
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "series: 1, 1, 2, 3, 5, 8, 13, 21");
    let o = lineal(&["expand", "--num", "1", "--den", "2-t", "--terms", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "series: 1/2, 1/4, 1/8");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lineal(&["group"]).status.code(), Some(2));
    assert_eq!(lineal(&["nonsense"]).status.code(), Some(2));
    assert_eq!(lineal(&["group", "--name", "Q8"]).status.code(), Some(2));
    assert_eq!(lineal(&["matrix-alg", "--q", "6", "--m", "1"]).status.code(), Some(2));
    assert_eq!(lineal(&["configs", "--kind", "vector", "--m", "2"]).status.code(), Some(2));
    assert_eq!(lineal(&["expand", "--num", "1", "--den", "0,1"]).status.code(), Some(2));
}

#[test]
fn limit_errors_exit_3() {
    for args in [
        &["group", "--name", "S7"][..],
        &["matrix-alg", "--q", "3", "--m", "3"],
        &["matrix-alg", "--q", "2", "--m", "3"],
        &["verify", "--suite", "oracles", "--budget", "10"],
    ] {
        let o = lineal(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains("limit exceeded") && err.chars().any(|c| c.is_ascii_digit()), "{err}");
    }
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_lineal"))
        .args(["verify", "--suite", "oracles"])
        .env("LINEAL_WORK_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_suites_pass() {
    let o = lineal(&["--format", "structured", "verify", "--suite", "paper-tables"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let recs = records(&o);
    let summary = recs.last().unwrap();
    assert_eq!(summary["record"], "summary");
    assert_eq!(summary["failed"], 0);
    assert!(summary["note"].as_str().unwrap().contains("1 - q^2 t"));
    assert!(recs.iter().any(|r| r["status"] == "INFO"));

    let o = lineal(&["verify", "--suite", "oracles"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!stdout(&o).contains("FAIL"));
}
