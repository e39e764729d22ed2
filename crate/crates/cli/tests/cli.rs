use std::path::{Path, PathBuf};
use std::process::Command;

use tauroot::io::{deserialize, from_dot};
use tauroot::ColoredQuiver;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn tauroot(args: &[&str]) -> Run {
    tauroot_env(args, &[])
}

fn tauroot_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tauroot"));
    cmd.args(args).current_dir(data_dir()).env_remove("TAUROOT_OFFSET_BOUND");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

/// Compares with `tests/golden/<name>`; `TAUROOT_BLESS=1` rewrites the file instead.
fn assert_golden(name: &str, args: &[&str]) {
    let run = tauroot(args);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("TAUROOT_BLESS").is_some() {
        std::fs::write(&path, &run.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(run.stdout, expected, "output differs from {name}");
}

const FIGURES: &[(&str, &[&str])] = &[
    ("mckay_1_5.json", &["mckay", "--n", "5", "--weights", "1,3,3,3"]),
    ("mckay_1_6.json", &["mckay", "--n", "6", "--weights", "1,1,1,4,5"]),
    ("hquiver_1_5_kept_1_2.json", &["hquiver", "--n", "5", "--weights", "1,3,3,3", "--kept", "1,2", "--dim", "3"]),
    ("hquiver_1_6_kept_0.json", &["hquiver", "--n", "6", "--weights", "1,1,1,4,5", "--kept", "0", "--dim", "4"]),
    ("hquiver_1_6_kept_0_3.json", &["hquiver", "--n", "6", "--weights", "1,1,1,4,5", "--kept", "0,3", "--dim", "4"]),
    ("cy_reduce_a5_tilde.json", &["cy-reduce", "--presentation", "diamond.json", "--removed", "3"]),
    (
        "hquiver_1_5_kept_1_2.dot",
        &["hquiver", "--n", "5", "--weights", "1,3,3,3", "--kept", "1,2", "--dim", "3", "--dot"],
    ),
];

#[test]
fn figure_goldens() {
    for (name, args) in FIGURES {
        assert_golden(name, args);
    }
}

#[test]
fn output_is_deterministic() {
    let mut runs: Vec<&[&str]> = FIGURES.iter().map(|(_, a)| *a).collect();
    runs.push(&["root-search", "--quiver", "a4.json", "--l", "2"]);
    runs.push(&["dynkin-survey", "--family", "A2,A4", "--lmax", "2"]);
    runs.push(&["normal-form", "--quiver", "a5_tilde.json", "--l", "2"]);
    for args in runs {
        assert_eq!(tauroot(args).stdout, tauroot(args).stdout, "{args:?}");
    }
}

fn quiver_out(run: &Run) -> ColoredQuiver {
    assert_eq!(run.code, 0, "{}", run.stderr);
    deserialize(&run.stdout).unwrap()
}

#[test]
fn mckay_exit_codes() {
    let r = tauroot(&["mckay", "--n", "5", "--weights", "1,3,3,4"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("sum to 11"), "{}", r.stderr);
    assert_eq!(tauroot(&["mckay", "--n", "5", "--weights", "1,3,x"]).code, 2);
    assert_eq!(tauroot(&["mckay", "--weights", "1,4"]).code, 2);
    assert_eq!(tauroot(&["mckay", "--n", "5", "--weights", "1,4", "--kept", "7"]).code, 1);
    assert_eq!(tauroot(&["no-such-command"]).code, 2);
    assert_eq!(tauroot(&[]).code, 2);
    assert_eq!(tauroot(&["--help"]).code, 0);
}

#[test]
fn mckay_quotient_verdicts() {
    let verdict = |weights: &str, kept: &str| {
        let n = if weights == "1,3,3,3" { "5" } else { "6" };
        let r = tauroot(&["mckay", "--n", n, "--weights", weights, "--kept", kept]);
        assert_eq!(r.code, 0);
        let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
        v["verdict"].as_str().unwrap().to_string()
    };
    assert_eq!(verdict("1,1,1,4,5", "0,3"), "semisimple hereditary");
    // 0 -> 1 and 1 -> 0 carry different colors
    assert_eq!(verdict("1,1,1,4,5", "0,1"), "not hereditary");
    assert_eq!(verdict("1,3,3,3", "1,2"), "hereditary");
    let r = tauroot(&["mckay", "--n", "6", "--weights", "1,1,1,4,5", "--kept", "0,3", "--dot"]);
    assert!(r.stderr.contains("semisimple hereditary"));
    assert_eq!(from_dot(&r.stdout).unwrap().vertex_count(), 6);
}

#[test]
fn hquiver_errors() {
    let r = tauroot(&["hquiver", "--dim", "4", "--kept", "0,1", "--n", "6", "--weights", "1,1,1,4,5"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("not semisimple"));
    let r = tauroot(&["hquiver", "--dim", "3", "--kept", "0,1,2,3,4", "--n", "5", "--weights", "1,3,3,3"]);
    assert_eq!(r.code, 1);
    assert_eq!(tauroot(&["hquiver", "--dim", "5", "--kept", "0", "--n", "6", "--weights", "1,1,1,4,5"]).code, 2);
    assert_eq!(tauroot(&["hquiver", "--dim", "3", "--kept", "0", "--n", "6", "--weights", "1,1,1,4,5"]).code, 1);
}

#[test]
fn ar_angle_at_a_kept_vertex() {
    let r = tauroot(&["ar-angle", "--n", "6", "--weights", "1,1,1,4,5", "--kept", "0", "--vertex", "0"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["terms"], serde_json::json!([{}, {"0": 3}, {"0": 3}, {}]));
    assert_eq!(tauroot(&["ar-angle", "--n", "6", "--weights", "1,1,1,4,5", "--kept", "0", "--vertex", "1"]).code, 1);
}

#[test]
fn root_search_and_bound() {
    let roots = |r: Run| -> Vec<serde_json::Value> {
        assert_eq!(r.code, 0, "{}", r.stderr);
        serde_json::from_str(&r.stdout).unwrap()
    };
    assert!(!roots(tauroot(&["root-search", "--quiver", "a4.json", "--l", "2"])).is_empty());
    assert!(roots(tauroot(&["root-search", "--quiver", "a3.json", "--l", "2"])).is_empty());
    let zero = tauroot_env(&["root-search", "--quiver", "a4.json", "--l", "2"], &[("TAUROOT_OFFSET_BOUND", "0")]);
    assert!(roots(zero).is_empty());
    let flag_wins = tauroot_env(
        &["root-search", "--quiver", "a4.json", "--l", "2", "--offset-bound", "4"],
        &[("TAUROOT_OFFSET_BOUND", "0")],
    );
    assert!(!roots(flag_wins).is_empty());
    assert_eq!(tauroot(&["root-search", "--quiver", "missing.json", "--l", "2"]).code, 2);
    assert_eq!(tauroot(&["root-search", "--quiver", "a4.json", "--l", "0"]).code, 2);
}

#[test]
fn f_section_of_the_upside_down_root() {
    let r = tauroot(&["f-section", "--quiver", "a4.json", "--autom", "a4_upside_down.json", "--l", "2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["t"], serde_json::json!([{"base": "1", "level": 0}, {"base": "2", "level": 0}]));
    assert_eq!(v["is_f_section"], true);
    assert_eq!(v["no_backward_arrows"], true);
    let dot = tauroot(&["f-section", "--quiver", "a4.json", "--autom", "a4_upside_down.json", "--l", "2", "--dot"]);
    assert_eq!(from_dot(&dot.stdout).unwrap().vertex_count(), 4);

    let r = tauroot(&["f-section", "--quiver", "a4.json", "--autom", "a4_tau_inverse.json", "--l", "2"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("not an l-th root"), "{}", r.stderr);
    assert_eq!(tauroot(&["f-section", "--quiver", "a4.json", "--autom", "a4_swap.json", "--l", "2"]).code, 1);
}

#[test]
fn normal_form_of_a5_tilde() {
    let r =
        tauroot(&["normal-form", "--quiver", "a5_tilde.json", "--l", "2", "--partition", "a5_tilde_partition.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["normal_form"], true);
    let delta: Vec<i64> =
        ["1", "2", "4", "1'", "2'", "4'"].iter().map(|x| v["root"]["delta"][x].as_i64().unwrap()).collect();
    assert_eq!(delta, vec![0, 0, 0, 1, 1, 1]);

    let searched = tauroot(&["normal-form", "--quiver", "a5_tilde.json", "--l", "2"]);
    let v: serde_json::Value = serde_json::from_str(&searched.stdout).unwrap();
    assert_eq!(v["normal_form"], true);
    let none = tauroot(&["normal-form", "--quiver", "a3.json", "--l", "2"]);
    assert_eq!(none.code, 0);
    let v: serde_json::Value = serde_json::from_str(&none.stdout).unwrap();
    assert_eq!((v["normal_form"].clone(), v["root"].clone()), (serde_json::json!(false), serde_json::Value::Null));

    let bad = tauroot(&["normal-form", "--quiver", "a5_tilde.json", "--l", "2", "--partition", "bad_partition.json"]);
    assert_eq!(bad.code, 1);
    assert!(bad.stderr.contains("bad partition"));
}

#[test]
fn cy_reduce_warnings_and_dot() {
    let r = tauroot(&["cy-reduce", "--presentation", "diamond.json", "--removed", "3", "--dot"]);
    assert_eq!(from_dot(&r.stdout).unwrap().arrow_count(), 6);
    assert!(r.stderr.is_empty());
    let r = tauroot(&["cy-reduce", "--presentation", "diamond.json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    assert_eq!(tauroot(&["cy-reduce", "--presentation", "diamond.json", "--removed", "9"]).code, 1);
    assert_eq!(tauroot(&["cy-reduce", "--presentation", "a4.json"]).code, 2);
}

#[test]
fn star_shape() {
    let q = quiver_out(&tauroot(&["star", "--n", "2", "--m", "1"]));
    assert_eq!(q.vertex_count(), 5);
    assert_eq!(q.arrows().len(), 5);
    assert!(q.arrows().iter().all(|a| a.mult == 1));
    let q = quiver_out(&tauroot(&["star", "--n", "3", "--m", "2"]));
    assert_eq!(q.arrow_count(), 14);
    assert_eq!(tauroot(&["star", "--n", "0"]).code, 1);
}

#[test]
fn dynkin_survey_table() {
    let r = tauroot(&["dynkin-survey", "--family", "A2,A3,A4,D4", "--lmax", "3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(rows.len(), 8);
    let found: Vec<(String, u64)> = rows
        .iter()
        .filter(|r| r["root_exists"] == true)
        .map(|r| (r["quiver"].as_str().unwrap().to_string(), r["l"].as_u64().unwrap()))
        .collect();
    assert_eq!(found, vec![("A2".to_string(), 2), ("A4".to_string(), 2)]);
    assert_eq!(tauroot(&["dynkin-survey", "--family", "A2,~A3"]).code, 2);
    assert_eq!(tauroot(&["dynkin-survey", "--family", "Q7"]).code, 2);
}

#[test]
fn convert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let dot_path = dir.path().join("q.dot");
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/mckay_1_6.json");
    let original = deserialize(&std::fs::read_to_string(&golden).unwrap()).unwrap();
    for repeat in [false, true] {
        let mut args = vec!["convert", "--input", golden.to_str().unwrap()];
        if repeat {
            args.push("--repeat");
        }
        let dot = tauroot(&args);
        assert_eq!(dot.code, 0, "{}", dot.stderr);
        std::fs::write(&dot_path, &dot.stdout).unwrap();
        let back = quiver_out(&tauroot(&["convert", "--input", dot_path.to_str().unwrap()]));
        assert_eq!(back, original);
    }
    let same = tauroot(&["convert", "--input", golden.to_str().unwrap(), "--to", "json"]);
    assert_eq!(same.stdout, std::fs::read_to_string(&golden).unwrap());
    std::fs::write(&dot_path, "digraph {").unwrap();
    assert_eq!(tauroot(&["convert", "--input", dot_path.to_str().unwrap()]).code, 2);
    std::fs::write(&dot_path, r#"{"vertices":[{"id":"a"}],"arrows":[{"src":"a","dst":"b","color":null,"mult":1}]}"#)
        .unwrap();
    assert_eq!(tauroot(&["convert", "--input", dot_path.to_str().unwrap()]).code, 1);
}

fn golden_quiver(name: &str) -> ColoredQuiver {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    let text = std::fs::read_to_string(path).unwrap();
    match text.trim_start().starts_with('{') {
        true => {
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            let q = if v.get("quiver").is_some() { v["quiver"].to_string() } else { text };
            deserialize(&q).unwrap()
        }
        false => from_dot(&text).unwrap(),
    }
}

/// `(src, dst, mult)` summed over colors, as read off the drawings.
fn bundles(q: &ColoredQuiver) -> Vec<(String, String, u32)> {
    let mut out: Vec<(String, String, u32)> = Vec::new();
    for a in q.arrows() {
        match out.iter_mut().find(|(s, d, _)| *s == a.src && *d == a.dst) {
            Some(b) => b.2 += a.mult,
            None => out.push((a.src.clone(), a.dst.clone(), a.mult)),
        }
    }
    out.sort();
    out
}

fn drawn(arrows: &[(&str, &str, u32)]) -> Vec<(String, String, u32)> {
    let mut out: Vec<_> = arrows.iter().map(|&(s, d, m)| (s.to_string(), d.to_string(), m)).collect();
    out.sort();
    out
}

#[test]
#[rustfmt::skip]
fn goldens_match_the_figures() {
    let pentagon: Vec<(String, String, u32)> = {
        let e = [
            ("0", "1", 1), ("0", "3", 3), ("1", "2", 1), ("1", "4", 3), ("2", "3", 1),
            ("2", "0", 3), ("3", "4", 1), ("3", "1", 3), ("4", "0", 1), ("4", "2", 3),
        ];
        drawn(&e)
    };
    assert_eq!(bundles(&golden_quiver("mckay_1_5.json")), pentagon);
    let hexagon = drawn(&[
        ("0", "1", 3), ("0", "4", 1), ("0", "5", 1), ("1", "2", 3), ("1", "5", 1), ("1", "0", 1),
        ("2", "3", 3), ("2", "0", 1), ("2", "1", 1), ("3", "4", 3), ("3", "1", 1), ("3", "2", 1),
        ("4", "5", 3), ("4", "2", 1), ("4", "3", 1), ("5", "0", 3), ("5", "3", 1), ("5", "4", 1),
    ]);
    assert_eq!(bundles(&golden_quiver("mckay_1_6.json")), hexagon);
    let h5 = drawn(&[("(1,0)", "(2,0)", 1), ("(1,-1)", "(2,-1)", 1), ("(1,0)", "(2,-1)", 3), ("(2,0)", "(1,-1)", 3)]);
    assert_eq!(bundles(&golden_quiver("hquiver_1_5_kept_1_2.json")), h5);
    assert_eq!(bundles(&golden_quiver("hquiver_1_5_kept_1_2.dot")), h5);
    assert_eq!(
        bundles(&golden_quiver("hquiver_1_6_kept_0.json")),
        drawn(&[("(0,0)", "(0,-1)", 3), ("(0,-1)", "(0,-2)", 3), ("(0,0)", "(0,-2)", 3)])
    );
    assert_eq!(
        bundles(&golden_quiver("hquiver_1_6_kept_0_3.json")),
        drawn(&[
            ("(0,0)", "(0,-1)", 3), ("(0,-1)", "(0,-2)", 3), ("(0,0)", "(0,-2)", 3),
            ("(3,0)", "(3,-1)", 3), ("(3,-1)", "(3,-2)", 3), ("(3,0)", "(3,-2)", 3),
            ("(0,0)", "(3,-1)", 1), ("(0,-1)", "(3,-2)", 1), ("(0,0)", "(3,-2)", 1),
            ("(3,0)", "(0,-1)", 1), ("(3,-1)", "(0,-2)", 1), ("(3,0)", "(0,-2)", 1),
        ])
    );
    assert_eq!(
        bundles(&golden_quiver("cy_reduce_a5_tilde.json")),
        drawn(&[("1", "2", 1), ("2", "4", 1), ("1'", "2'", 1), ("2'", "4'", 1), ("1", "4'", 1), ("4", "1'", 1)])
    );
}
