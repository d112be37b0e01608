use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use gorenstein_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gs_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    gs_string_free(s);
    out
}

fn from_json(text: &str) -> *mut GsPolytope {
    let mut p = ptr::null_mut();
    let s = unsafe { gs_polytope_from_json(c(text).as_ptr(), &mut p) };
    assert_eq!(s, GsStatus::Ok, "{}", last_error());
    p
}

const DIAMONDS: &str = include_str!("../../core/corpus/half_lattice_diamonds.json");

#[test]
fn square_invariants() {
    let coords = [-1i64, -1, 1, -1, 1, 1, -1, 1];
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(gs_polytope_from_points(2, coords.as_ptr(), 4, &mut p), GsStatus::Ok);
        let mut dim = 0;
        assert_eq!(gs_polytope_dim(p, &mut dim), GsStatus::Ok);
        assert_eq!(dim, 2);

        let mut buf = [0i64; 2];
        let mut len = 0;
        assert_eq!(gs_hstar(p, buf.as_mut_ptr(), 2, &mut len), GsStatus::BufferTooSmall);
        assert_eq!(len, 3);
        let mut buf = [0i64; 3];
        assert_eq!(gs_hstar(p, buf.as_mut_ptr(), 3, &mut len), GsStatus::Ok);
        assert_eq!(buf, [1, 6, 1]);

        let mut r = 0;
        assert_eq!(gs_gorenstein_index(p, &mut r), GsStatus::Ok);
        assert_eq!(r, 1);
        let mut irr = false;
        assert_eq!(gs_is_irreducible(p, &mut irr), GsStatus::Ok);
        assert!(irr);
        gs_polytope_free(p);
    }
}

#[test]
fn half_lattice_diamonds_stringy() {
    let p = from_json(DIAMONDS);
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(gs_stringy_e_json(p, &mut out), GsStatus::Ok);
        let e: Vec<(u32, u32, i64)> = serde_json::from_str(&take(out)).unwrap();
        // (uv - u - v + 1)^2 expanded
        let expected = [
            (0, 0, 1), (0, 1, -2), (0, 2, 1), (1, 0, -2), (1, 1, 4),
            (1, 2, -2), (2, 0, 1), (2, 1, -2), (2, 2, 1),
        ];
        assert_eq!(e, expected);
        let mut irr = true;
        assert_eq!(gs_is_irreducible(p, &mut irr), GsStatus::Ok);
        assert!(!irr);
        gs_polytope_free(p);
    }
}

#[test]
fn commands_return_report_lines() {
    unsafe {
        let mut out = ptr::null_mut();
        let s = gs_run_command(c("stringy").as_ptr(), c(DIAMONDS).as_ptr(), &mut out);
        assert_eq!(s, GsStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["status"], "ok");

        let stretched = include_str!("../../core/corpus/cayley_segments_stretched.json");
        let s = gs_run_command(c("stringy").as_ptr(), c(stretched).as_ptr(), &mut out);
        assert_eq!(s, GsStatus::InputError);
        assert!(take(out).contains("\"status\":\"input_error\""));
        assert!(!last_error().is_empty());

        let s = gs_run_command(c("nope").as_ptr(), c(DIAMONDS).as_ptr(), &mut out);
        assert_eq!(s, GsStatus::InputError);
    }
}

#[test]
fn bad_arguments_are_reported() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(gs_polytope_from_json(c("{\"ambient_dim\": 2,\n \"vertices\": [[0 0]]}").as_ptr(), &mut p), GsStatus::InputError);
        assert!(last_error().contains("line 2"), "{}", last_error());
        assert!(p.is_null());
        assert_eq!(gs_polytope_from_json(ptr::null(), &mut p), GsStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(gs_polytope_from_json(bad.as_ptr().cast(), &mut p), GsStatus::InvalidUtf8);
        let mut dim = 0;
        assert_eq!(gs_polytope_dim(ptr::null(), &mut dim), GsStatus::NullPointer);

        let third = c(r#"{"ambient_dim": 2, "vertices": [["1/3", 0], [1, 0], [0, 1]]}"#);
        assert_eq!(gs_polytope_from_json(third.as_ptr(), &mut p), GsStatus::InputError);

        let stretched = from_json(include_str!("../../core/corpus/cayley_segments_stretched.json"));
        let mut r = 7;
        assert_eq!(gs_gorenstein_index(stretched, &mut r), GsStatus::Ok);
        assert_eq!(r, 0);
        let mut out = ptr::null_mut();
        assert_eq!(gs_stringy_e_json(stretched, &mut out), GsStatus::InputError);
        gs_polytope_free(stretched);
        gs_polytope_free(ptr::null_mut());
        gs_string_free(ptr::null_mut());
    }
}

/// Compiles a C program against the generated header and the shared library.
#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap().to_path_buf();
    assert!(lib_dir.join("libgorenstein_ffi.so").exists() || lib_dir.join("libgorenstein_ffi.dylib").exists());
    let out_dir = tempfile_dir();
    let bin = out_dir.join("smoke");
    let status = Command::new(std::env::var("CC").unwrap_or_else(|_| "cc".into()))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&lib_dir)
        .arg("-lgorenstein_ffi")
        .arg("-o")
        .arg(&bin)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let run = Command::new(&bin).env("LD_LIBRARY_PATH", &lib_dir).env("DYLD_LIBRARY_PATH", &lib_dir).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}

fn tempfile_dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c-smoke");
    std::fs::create_dir_all(&d).unwrap();
    d
}
