use std::process::{Command, Output};

use wilson_core::catalog::make_s;
use wilson_core::wreath::{parse_points, render_points};
use wilson_core::Engine;

fn wilson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wilson"))
        .args(args)
        .env_remove("WILSON_STATE_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn body(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn act_matches_library() {
    let out = wilson(&["act", "--genset", "S:1", "--word", "a b a", "--string", "1234567"]);
    assert!(out.status.success());
    let mut engine = Engine::new();
    let s1 = make_s(&mut engine, 1).unwrap();
    let w = s1.parse_word("a b a").unwrap();
    let image = engine.act(&s1.evaluate(&engine, &w), &parse_points("1234567").unwrap());
    assert_eq!(body(&stdout(&out)), vec![render_points(&image).as_str()]);
}

#[test]
fn lambda_rows_decrease() {
    let out = wilson(&["lambda", "--steps", "10", "--tol", "1e-12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = body(&text);
    assert_eq!(rows[0], "n,lambda_n,eta_n,residual");
    let lambdas: Vec<f64> = rows[1..]
        .iter()
        .map(|r| r.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(lambdas.len(), 10);
    assert_eq!(lambdas[0], 2.0);
    assert!(lambdas.windows(2).all(|w| w[1] < w[0] && w[1] > 1.0));
}

#[test]
fn radius_zero_ball_is_one_row() {
    let out = wilson(&["ball", "--radius", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# wilson "));
    assert_eq!(body(&text), vec!["index,length,geodesic", "0,0,ε"]);
}

#[test]
fn dot_export_is_stable() {
    let a = wilson(&["ball", "--radius", "3", "--format", "dot"]);
    let b = wilson(&["ball", "--radius", "3", "--format", "dot", "--threads", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("// wilson "));
    assert!(text.contains("graph \"S1_R3\""));
}

#[test]
fn json_outputs_lead_with_the_header() {
    let out = wilson(&["local-iso", "--radius", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.trim_start().starts_with("{\n  \"header\""));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["found"], 1);
    assert_eq!(v["header"]["budget"], 1_000_000);
}

#[test]
fn exit_codes() {
    assert_eq!(wilson(&["ball", "--radius", "2", "--genset", "Q"]).status.code(), Some(2));
    assert_eq!(wilson(&["ball", "--radius", "13"]).status.code(), Some(2));
    assert_eq!(wilson(&["ball", "--radius", "13", "--force"]).status.code(), Some(0));
    assert_eq!(wilson(&["lambda", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(wilson(&["bogus"]).status.code(), Some(2));
    let out = wilson(&["ball", "--radius", "8", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn budget_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_wilson"))
        .args(["ball", "--radius", "8"])
        .env("WILSON_STATE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn growth_and_lemma_exports() {
    let out = wilson(&["growth", "--genset", "tilde", "--radius", "4"]);
    let text = stdout(&out);
    let rows = body(&text);
    assert_eq!(rows[0], "radius,ball_size,sphere_size,estimate_root,estimate_ratio");
    assert_eq!(rows.len(), 6);
    let out = wilson(&["lemma30", "--max-n", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(body(&text), vec!["n,count_delta_free", "1,3", "2,6", "3,9", "4,12", "5,15"]);
    let out = wilson(&["curves"]);
    assert_eq!(body(&stdout(&out)).len(), 100);
    let out = wilson(&["delta-stats", "--radius", "6", "--eta", "0.3"]);
    assert!(out.status.success());
    let out = wilson(&["free-monoid", "-L", "3", "--all-pairs"]);
    assert!(out.status.success());
}
