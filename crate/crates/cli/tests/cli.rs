use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

use knotperi_core::diagram::{compute_regions, parse_pd};

const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
const GRANNY: &str = "X(1,4,2,5) X(3,12,4,1) X(5,2,6,3) X(7,10,8,11) X(9,6,10,7) X(11,8,12,9)";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotperi")).args(args).env_remove("KNOTPERI_TABLE").output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let o = run(args);
    let v = serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&o.stderr)));
    (v, o.status.code().unwrap())
}

#[test]
fn reduce_free_cancellation() {
    let (v, code) = json(&["reduce", "--knot", "5_2", "--word", "X1 X2^-1 X2 X1^-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["geodesic"], "");
    assert_eq!(v["is_identity"], true);
    assert_eq!(v["schema"], "knotperi/1");
    assert_eq!(v["knot"], "5_2");
}

#[test]
fn reduce_relator_uses_a_chain() {
    let (p, _) = json(&["presentation", "--pd", FIGURE_EIGHT]);
    let r = p["presentation"]["relators"][0]["word"].as_str().unwrap().to_string();
    let (v, code) = json(&["reduce", "--pd", FIGURE_EIGHT, "--word", &r]);
    assert_eq!(code, 0);
    assert_eq!(v["is_identity"], true);
    assert!(v["chain_steps"].as_u64().unwrap() >= 1);
}

#[test]
fn gauss_matches_diagram_walk() {
    let (v, code) = json(&["gauss", "--knot", "4_1"]);
    assert_eq!(code, 0);
    let table = knotperi::table::parse_table(knotperi::table::EMBEDDED).unwrap();
    let pd = &knotperi::table::find(&table, "4_1").unwrap().pd;
    let expected: Vec<i64> = compute_regions(pd, None).unwrap().gauss_code().as_slice().iter().map(|&x| x as i64).collect();
    let got: Vec<i64> = v["gauss_code"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
    assert_eq!(got, expected);
    assert_eq!(v["recovered"], v["gauss_code"]);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["reduce", "--knot", "9_42", "--word", "X1"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "--knot", "4_1", "--word", "X1 Y2"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "--knot", "4_1", "--word", "X99"]).status.code(), Some(2));
    assert_eq!(run(&["reduce", "--word", "X1"]).status.code(), Some(2));
    assert_eq!(run(&["gauss", "--pd", "X(1,2,3"]).status.code(), Some(2));
    assert_eq!(run(&["gauss", "--knot", "4_1", "--pd", FIGURE_EIGHT]).status.code(), Some(2));
    assert_eq!(run(&["gauss", "--knot", "4_1", "--outer", "17"]).status.code(), Some(2));
    let o = run(&["gauss", "--knot", "nope"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown knot"));
}

#[test]
fn invalid_diagrams_fail_checks() {
    let nugatory = "X(1,4,2,5) X(3,8,4,1) X(5,2,6,3) X(6,7,7,8)";
    let (v, code) = json(&["validate", "--pd", nugatory]);
    assert_eq!(code, 1);
    assert_eq!(v["validation"]["reduced"], false);
    let (v, code) = json(&["presentation", "--pd", GRANNY]);
    assert_eq!(code, 1);
    assert_eq!(v["validation"]["prime"], false);
    assert!(!v["small_cancellation"]["c4_violations"].as_array().unwrap().is_empty());
    // Commands that need the complex refuse such input outright.
    assert_eq!(run(&["arcs", "--pd", GRANNY]).status.code(), Some(2));
}

#[test]
fn pd_sources_agree() {
    let (a, _) = json(&["presentation", "--pd", FIGURE_EIGHT]);
    let (b, _) = json(&["presentation", "--pd", "[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]"]);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# figure eight\n{FIGURE_EIGHT}").unwrap();
    let (c, _) = json(&["presentation", "--file", f.path().to_str().unwrap()]);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn table_override() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "eight: {FIGURE_EIGHT}").unwrap();
    let bin = env!("CARGO_BIN_EXE_knotperi");
    let o = Command::new(bin).args(["gauss", "--knot", "eight"]).env("KNOTPERI_TABLE", f.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(bin).args(["gauss", "--knot", "3_1"]).env("KNOTPERI_TABLE", f.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn peripheral_verdicts() {
    let (v, code) = json(&["peripheral", "--pd", FIGURE_EIGHT, "--word", "X1"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["peripheral"], false);
    let (c, _) = json(&["complex", "--pd", FIGURE_EIGHT]);
    let verticals = &c["block"]["verticals"];
    let bottoms = &c["block"]["bottoms"];
    // Meridian: up the left edge of P1, then left along the bottom of the
    // cell at (-1, 1), which carries P1 again.
    let up = verticals[0].as_u64().unwrap();
    let m = format!("X{up} X{}^-1", bottoms[0].as_u64().unwrap());
    let (v, _) = json(&["peripheral", "--pd", FIGURE_EIGHT, "--word", &m]);
    assert_eq!(v["verdict"]["peripheral"], true, "{m}");
    assert_eq!((v["verdict"]["a"].as_i64(), v["verdict"]["b"].as_i64()), (Some(0), Some(1)));
    let (v, _) = json(&["conj-peripheral", "--pd", FIGURE_EIGHT, "--word", &format!("X1 {m} X1^-1")]);
    assert_eq!(v["verdict"]["peripheral"], true);
}

#[test]
fn complex_formats() {
    let o = run(&["complex", "--knot", "5_2", "--rows", "2", "--cols", "3", "--format", "svg"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    assert_eq!(s.matches("marker-end").count(), 2 * 4 + 3 * 3);
    let o = run(&["complex", "--knot", "5_2", "--rows", "2", "--cols", "3", "--format", "text"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 2 * 2 + 2);
    let (v, _) = json(&["complex", "--knot", "5_2", "--rows", "2", "--cols", "3"]);
    assert_eq!(v["cells"].as_array().unwrap().len(), 6);
    assert_eq!(v["period"], 10);
    assert_eq!(run(&["complex", "--knot", "5_2", "--rows", "0"]).status.code(), Some(2));
}

#[test]
fn complex_overlays_a_path() {
    let (c, _) = json(&["complex", "--knot", "4_1"]);
    let w = format!("X{} X{}^-1", c["block"]["bottoms"][0], c["block"]["verticals"][1]);
    let (v, code) = json(&["complex", "--knot", "4_1", "--word", &w]);
    assert_eq!(code, 0);
    assert_eq!(v["path"], serde_json::json!([[0, 0], [1, 0], [1, 1]]));
}

#[test]
fn oracle_check_small_run() {
    let (v, code) = json(&["oracle-check", "--knot", "4_1", "--samples", "40", "--max-len", "4", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["agree"].as_u64().unwrap() + v["inconclusive"].as_u64().unwrap(), 40);
}

#[test]
fn arcs_report_shape() {
    let (v, _) = json(&["arcs", "--knot", "5_2"]);
    for kind in ["wirtinger_arc", "wirtinger_loop", "dehn_arc", "short_arc"] {
        assert!(v["families"][kind]["total"].as_u64().unwrap() > 0, "{kind}");
    }
    assert!(v["informational"].is_array());
}

#[test]
fn verify_all_lists_knots_in_table_order() {
    let (v, code) = json(&["verify-all", "--max-crossings", "6", "--threads", "2"]);
    let names: Vec<&str> = v["knots"].as_array().unwrap().iter().map(|k| k["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["4_1", "5_2", "6_1", "6_2", "6_3"]);
    assert_eq!(code == 0, v["passed"] == true);
    // Only short arcs can fail, and never by being in the peripheral subgroup.
    for k in v["knots"].as_array().unwrap() {
        for f in k["failures"].as_array().unwrap() {
            assert_eq!(f["kind"], "short_arc");
            assert_eq!(f["verdict"]["peripheral"], false);
        }
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["arcs", "--knot", "6_2"]).stdout;
    let b = run(&["arcs", "--knot", "6_2"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn acceptance_single_criterion() {
    let o = run(&["acceptance", "--criterion", "7"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("criterion  7 PASS"), "{s}");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn parse_pd_accepts_table_lines() {
    assert!(parse_pd(FIGURE_EIGHT).is_ok());
}
