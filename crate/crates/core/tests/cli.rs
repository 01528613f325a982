use std::fs;
use std::path::Path;

use heightlab::cli::{run_cli, EXIT_COMPUTATION, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};
use heightlab::function_field::families::Family;
use heightlab::function_field::family;
use heightlab::function_field::io::{CurveFile, PointFile};
use heightlab::rational::int;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("heightlab").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write_json<T: serde::Serialize>(dir: &Path, name: &str, value: &T) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn search_n1_first_row() {
    let (code, out, _) = run(&["search", "--n", "1", "--genus0", "--max-multiple", "6"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "hhat\tgamma\tN\td\tintegral_run\tnaive_heights\tverdict");
    let first: Vec<&str> = lines.next().unwrap().split('\t').collect();
    assert_eq!(&first[..5], &["1/30", "[1/5]+[1/3]+[1/2]+2[0]", "5", "12", "6"]);
}

#[test]
fn verify_degenerate_member() {
    let (code, out, _) = run(&["verify", "--family", "e1", "--param", "4/5"]);
    assert_eq!(code, EXIT_OK);
    let fibers = out.lines().find_map(|l| l.strip_prefix("fibers\t")).unwrap();
    let mut kinds: Vec<&str> = fibers.split(' ').collect();
    kinds.sort();
    assert_eq!(kinds, vec!["I2", "I3", "I5", "II"]);
    assert_eq!(out.lines().last().unwrap(), "result\tverified");

    let (code, out, _) = run(&["verify", "--family", "e2", "--param", "-2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["golden_hhat"], "11/420");
}

#[test]
fn verify_mismatch_exit_code() {
    let (code, out, _) = run(&["verify", "--family", "e1", "--param", "2", "--multiples", "7"]);
    assert_eq!(code, EXIT_MISMATCH);
    assert!(out.contains("check\tintegral-multiples\tfail"));
    assert_eq!(out.lines().last().unwrap(), "result\tmismatch");
}

#[test]
fn qcheck_builtin() {
    let (code, out, _) = run(&["qcheck", "--builtin", "e14", "--max-m", "14"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next().unwrap(), "run\t14");

    // multiples of (1, 0) on y² + y = x³ − x: (1, 0), (2, −3), (6, 14), then 8Q
    let (code, out, _) = run(&["qcheck", "--coeffs", "0,0,1,-1,0", "--point", "1,0", "--max-m", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "run\t3\nmax_m\t5\nfirst_non_integral\t4\t21/25\t-69/125\n");
}

#[test]
fn usage_errors() {
    for args in [
        vec!["search", "--n", "1", "--bogus"],
        vec!["search"],
        vec!["verify", "--family", "e9"],
        vec!["verify", "--family", "e1", "--param", "1"],
        vec!["search", "--n", "1", "--genus0", "--any-genus"],
        vec!["search", "--n", "1", "--max-height", "0.05"],
        vec!["fibers"],
        vec!["heights", "--curve", "/nonexistent/curve.json", "--point", "/nonexistent/p.json"],
        vec!["qcheck", "--coeffs", "1,2,3", "--point", "0,0"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn curve_files() {
    let dir = tempfile::tempdir().unwrap();
    let (e, p) = family(Family::E1, &int(2)).unwrap();
    let curve = write_json(dir.path(), "e1.json", &CurveFile::from_curve(&e));
    let point = write_json(dir.path(), "p.json", &PointFile::from_point(&p).unwrap());

    let (code, out, _) = run(&["heights", "--curve", &curve, "--point", &point, "--max-m", "7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "m\tnaive_height\n1\t0\n2\t0\n3\t0\n4\t0\n5\t0\n6\t0\n7\t2\n");

    let (code, out, _) = run(&["fibers", "--curve", &curve]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("27*s^2-18*s*s'-s'^2\t2\tI1\t0\t0\t1"));
    assert_eq!(out.lines().last().unwrap(), "# d=12 N=5");

    let target = dir.path().join("fibers.json");
    let (code, out, _) = run(&["fibers", "--family", "e1", "--format", "json", "-o", target.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (EXIT_OK, ""));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["conductor"], 5);

    let zero = CurveFile { n: 1, ..CurveFile::default() };
    let degenerate = write_json(dir.path(), "zero.json", &zero);
    let (code, _, err) = run(&["fibers", "--curve", &degenerate]);
    assert_eq!(code, EXIT_COMPUTATION);
    assert!(err.contains("error"));

    let s = |v: &[&str]| Some(v.iter().map(|x| x.to_string()).collect());
    let fat = CurveFile {
        n: 1,
        a4: s(&["0", "0", "0", "0", "1"]),
        a6: s(&["0", "0", "0", "0", "0", "0", "1"]),
        ..CurveFile::default()
    };
    let non_minimal = write_json(dir.path(), "fat.json", &fat);
    let (code, _, _) = run(&["fibers", "--curve", &non_minimal]);
    assert_eq!(code, EXIT_COMPUTATION);
}

#[test]
fn jobs_do_not_change_output() {
    let base = ["search", "--n", "2", "--any-genus", "--keep-rejected", "--format", "json"];
    let (c1, one, _) = run(&[&base[..], &["--jobs", "1"]].concat());
    let (c4, four, _) = run(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!((c1, c4), (EXIT_OK, EXIT_OK));
    assert_eq!(one, four);
    std::env::set_var("HEIGHTLAB_JOBS", "3");
    let (c3, three, _) = run(&base);
    std::env::remove_var("HEIGHTLAB_JOBS");
    assert_eq!(c3, EXIT_OK);
    assert_eq!(one, three);
    let (code, _, _) = run(&[&base[..], &["--jobs", "0"]].concat());
    assert_eq!(code, EXIT_USAGE);
}
