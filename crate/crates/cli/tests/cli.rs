use std::process::{Command, Output};

use nsym::{Basis, BasisExpr};

fn nsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsym")).args(args).env_remove("NSYM_FORMAT").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn straight_expansion_text() {
    let out = nsym(&["expand", "immaculate", "--shape", "3,1,3", "--basis", "H"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "H(3,1,3) - H(3,2,2) + H(4,2,1) - H(4,3) - H(5,1,1) + H(5,2)");
}

#[test]
fn skew_expansion_json() {
    let out = nsym(&["expand", "immaculate", "--shape", "2,5,3", "--skew", "1,3", "--basis", "H", "--format", "json"]);
    assert!(out.status.success());
    let x: BasisExpr = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(x.len(), 4);
    assert_eq!(x, BasisExpr::parse_text("H(1,2,3) - H(3,3) + H(6) - H(4,2)", Basis::H).unwrap());
}

#[test]
fn formats_describe_the_same_expression() {
    let args = ["expand", "immaculate", "--shape", "-1,3,2,2", "--basis", "R"];
    let text = stdout(&nsym(&args));
    let json = stdout(&nsym(&[&args[..], &["--format", "json"]].concat()));
    let latex = stdout(&nsym(&[&args[..], &["--format", "latex"]].concat()));
    let from_text = BasisExpr::parse_text(text.trim(), Basis::R).unwrap();
    let from_json: BasisExpr = serde_json::from_str(&json).unwrap();
    assert_eq!(from_text, from_json);
    assert_eq!(latex.trim(), from_json.to_latex());
}

#[test]
fn format_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_nsym"))
        .args(["expand", "ribbon-product", "--left", "1", "--right", "2"])
        .env("NSYM_FORMAT", "latex")
        .output()
        .unwrap();
    assert_eq!(stdout(&out).trim(), "R_{(1,2)} + R_{(3)}");
}

#[test]
fn output_is_deterministic() {
    let args = ["--jobs", "3", "thc", "list", "--shape", "2,-1,3,1", "--format", "json"];
    let a = nsym(&args);
    let b = nsym(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let list: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(list.as_array().unwrap().len(), 24);
}

#[test]
fn verification_suite_passes() {
    let out = nsym(&["verify", "--suite", "all", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(nsym(&["expand", "immaculate", "--shape", "3,x"]).status.code(), Some(1));
    assert_eq!(nsym(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(nsym(&["--max-k", "13", "expand", "immaculate", "--shape", "1"]).status.code(), Some(1));
    let long = nsym(&["--max-k", "3", "expand", "immaculate", "--shape", "1,1,1,1"]);
    assert_eq!(long.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&long.stderr).contains("error"));
}

#[test]
fn direct_formula_outside_class_is_tagged() {
    let refused = nsym(&["expand", "immaculate", "--shape", "4,4,1", "--basis", "R", "--direct"]);
    assert_eq!(refused.status.code(), Some(1));
    let forced = nsym(&["expand", "immaculate", "--shape", "4,4,1", "--basis", "R", "--direct", "--force"]);
    assert!(forced.status.success());
    assert!(stdout(&forced).starts_with("# UNPROVEN-CLASS"));
    let inside = nsym(&["expand", "immaculate", "--shape", "1,3", "--basis", "R", "--direct"]);
    let via_h = nsym(&["expand", "immaculate", "--shape", "1,3", "--basis", "R"]);
    assert_eq!(inside.stdout, via_h.stdout);
}

#[test]
fn render_with_permutation() {
    let out = nsym(&["thc", "render", "--shape", "3,1,3", "--sigma", "2,3,1"]);
    assert!(out.status.success());
    let s = stdout(&out);
    assert!(s.starts_with("3 |"));
    assert_eq!(s.lines().filter(|l| l.starts_with("hook ")).count(), 3);
    let by_index = nsym(&["thc", "render", "--shape", "3,1,3", "--covering", "0"]);
    assert!(by_index.status.success());
    let latex = stdout(&nsym(&["thc", "render", "--shape", "3,1,3", "--sigma", "2,3,1", "--format", "latex"]));
    assert!(latex.contains("\\begin{document}") && latex.contains("\\end{document}"));
}

#[test]
fn convert_roundtrip_and_straighten() {
    let r = stdout(&nsym(&["convert", "--from", "H", "--to", "R", "--expr", "H(2,1) - H(3)"]));
    assert_eq!(r.trim(), "R(2,1)");
    let h = stdout(&nsym(&["convert", "--from", "R", "--to", "H", "--expr", r.trim()]));
    assert_eq!(h.trim(), "H(2,1) - H(3)");
    let st = stdout(&nsym(&["straighten", "--shape", "2,5,3", "--skew", "1,3"]));
    assert_eq!(st.trim(), "-1 (2,5,3)/(2,2,0)");
}
