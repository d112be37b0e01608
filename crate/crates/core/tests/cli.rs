//! Command-line behavior: golden reports, exit codes, determinism and file
//! round trips.

use std::path::{Path, PathBuf};
use std::process::Command;

use gorenstein::cli::{parse_polytope_file, run, Report, Status, EXIT_CONJECTURE, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION};
use gorenstein::Error;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn files(dir: &Path, skip: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .filter(|p| !skip.iter().any(|s| p.to_string_lossy().contains(s)))
        .map(|p| p.strip_prefix(root()).unwrap().display().to_string())
        .collect();
    v.sort();
    v
}

/// Runs in-process from the crate root so relative paths match the goldens.
fn invoke(args: &[&str]) -> (i32, String, String) {
    std::env::set_current_dir(root()).unwrap();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["gorenstein"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn with_files(cmd: &str, extra: &[&str], list: &[String]) -> (i32, String, String) {
    let mut args = vec![cmd];
    args.extend_from_slice(extra);
    args.extend(list.iter().map(|s| s.as_str()));
    invoke(&args)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("corpus/expected").join(name)).unwrap()
}

#[test]
fn golden_reports() {
    let all = files(&root().join("corpus"), &[]);
    let gorenstein = files(&root().join("corpus"), &["stretched"]);
    let nef = files(&root().join("corpus/nef"), &[]);
    let cases: [(&str, &[String], i32); 11] = [
        ("info", &all, EXIT_OK),
        ("hstar", &all, EXIT_OK),
        ("faces", &all, EXIT_OK),
        ("stringy", &all, EXIT_INPUT),
        ("joins", &all, EXIT_INPUT),
        ("verify", &all, EXIT_OK),
        ("dual", &gorenstein, EXIT_OK),
        ("irreducible", &gorenstein, EXIT_OK),
        ("nef-build", &nef, EXIT_OK),
        ("nef-irreducible", &nef, EXIT_OK),
        ("nef-split", &nef, EXIT_OK),
    ];
    for (cmd, list, code) in cases {
        let (c, out, _) = with_files(cmd, &[], list);
        assert_eq!(c, code, "{cmd}");
        assert_eq!(out, golden(&format!("{cmd}.jsonl")), "{cmd} differs from its golden file");
    }
    let (c, out, _) = invoke(&["stringy", "--format", "text", "corpus/half_lattice_diamonds.json"]);
    assert_eq!(c, EXIT_OK);
    assert_eq!(out, golden("half_lattice_diamonds.stringy.txt"));
}

#[test]
fn documented_examples() {
    let (c, out, _) = invoke(&["stringy", "--format", "text", "corpus/half_lattice_diamonds.json"]);
    assert_eq!(c, EXIT_OK);
    assert!(out.contains("u^2v^2 - 2u^2v - 2uv^2 + u^2 + 4uv + v^2 - 2u - 2v + 1"));
    let (c, out, _) = invoke(&["irreducible", "corpus/reflexive_square.json"]);
    assert_eq!(c, EXIT_OK);
    assert!(out.contains("\"irreducible\":true"));
    let all = files(&root().join("corpus"), &[]);
    let (c, out, _) = with_files("verify", &["--parts", "2,3,4,5"], &all);
    assert_eq!(c, EXIT_OK);
    assert_eq!(out.lines().count(), all.len());
    assert!(out.lines().all(|l| l.contains("\"status\":\"ok\"")));
}

#[test]
fn output_is_deterministic() {
    let all = files(&root().join("corpus"), &[]);
    let (_, a, _) = with_files("stringy", &["--jobs", "1"], &all);
    let (_, b, _) = with_files("stringy", &["--jobs", "3"], &all);
    let (_, c, _) = with_files("stringy", &[], &all);
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, "{\"ambient_dim\": 2,\n \"vertices\": [[0, 0], [1 0]]}").unwrap();
    let third = dir.path().join("third.json");
    std::fs::write(&third, r#"{"ambient_dim": 2, "vertices": [["1/3", 0], [1, 0], [0, 1]]}"#).unwrap();
    let bad_nef = dir.path().join("nef.json");
    std::fs::write(&bad_nef, r#"{"ambient_dim": 1, "parts": [[[1], [2]]]}"#).unwrap();
    let missing = dir.path().join("missing.json");

    let path = |p: &Path| p.display().to_string();
    let (c, out, err) = invoke(&["info", &path(&bad_json)]);
    assert_eq!(c, EXIT_INPUT);
    assert!(out.contains("\"stage\":\"parse\"") && err.contains("line 2"), "{err}");
    let (c, _, err) = invoke(&["info", &path(&third)]);
    assert_eq!(c, EXIT_INPUT);
    assert!(err.contains("not a point of the lattice"), "{err}");
    let (c, out, _) = invoke(&["nef-build", &path(&bad_nef)]);
    assert_eq!(c, EXIT_INPUT);
    assert!(out.contains("origin_missing"), "{out}");
    assert_eq!(invoke(&["info", &path(&missing)]).0, EXIT_INPUT);
    assert_eq!(invoke(&["stringy", "corpus/cayley_segments_stretched.json"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["info", "--max-dim", "4", "corpus/half_lattice_tetrahedra.json"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["verify", "--parts", "1,2", "corpus/reflexive_square.json"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["bogus", "corpus/reflexive_square.json"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["joins", "--pair", "0,1", "corpus/reflexive_square.json"]).0, EXIT_INPUT);
}

#[test]
fn status_codes_follow_error_class() {
    let mut r = Report::new("verify", "x".into());
    r.fail("compute", &Error::NotGorenstein);
    assert_eq!(r.status.exit_code(), EXIT_INPUT);
    r.fail("compute", &Error::NonPolynomialResult { faces: vec![1] });
    assert_eq!(r.status.exit_code(), EXIT_VIOLATION);
    assert!(r.to_json_line().contains("\"module\":\"stringy\""));
    assert_eq!(Status::ConjectureFailure.exit_code(), EXIT_CONJECTURE);
}

#[test]
fn corpus_files_round_trip() {
    for f in files(&root().join("corpus"), &[]) {
        let text = std::fs::read_to_string(root().join(&f)).unwrap();
        let parsed = parse_polytope_file(&text).unwrap();
        let again = parse_polytope_file(&parsed.to_json()).unwrap();
        assert_eq!(again, parsed, "{f}");
        let normal = parsed.normalized().unwrap();
        assert_eq!(parse_polytope_file(&normal.to_json()).unwrap(), normal);
        assert_eq!(normal.polytope().unwrap(), parsed.polytope().unwrap(), "{f}");
    }
}

#[test]
fn binary_reports_and_exits() {
    let out = Command::new(env!("CARGO_BIN_EXE_gorenstein"))
        .current_dir(root())
        .args(["hstar", "corpus/reflexive_square.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"hstar\":[1,6,1]"));
    let out = Command::new(env!("CARGO_BIN_EXE_gorenstein"))
        .current_dir(root())
        .args(["hstar", "corpus/no_such_file.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
}
