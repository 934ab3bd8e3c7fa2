use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use dpcy_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { dpcy_string_free(s) };
    out
}

fn last_error() -> String {
    let p = dpcy_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn twisted_cubic_roundtrip() {
    let json =
        CString::new(r#"{"ring":{"vars":["a","b","c","d"],"char":32003},"gens":["a*c-b^2","a*d-b*c","b*d-c^2"]}"#)
            .unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dpcy_ideal_from_json(json.as_ptr(), &mut h) }, DpcyStatus::Ok);
    let (mut dim, mut deg) = (0i64, 0i64);
    assert_eq!(unsafe { dpcy_ideal_dimension_degree(h, &mut dim, &mut deg) }, DpcyStatus::Ok);
    assert_eq!((dim, deg), (1, 3));
    let mut n = 0usize;
    assert_eq!(unsafe { dpcy_ideal_nvars(h, &mut n) }, DpcyStatus::Ok);
    assert_eq!(n, 4);
    let mut hf = 0u64;
    assert_eq!(unsafe { dpcy_ideal_hilbert_function(h, 5, &mut hf) }, DpcyStatus::Ok);
    assert_eq!(hf, 16);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { dpcy_ideal_census(h, &mut s) }, DpcyStatus::Ok);
    assert_eq!(take(s), r#"{"2":3}"#);
    assert_eq!(unsafe { dpcy_ideal_betti(h, &mut s) }, DpcyStatus::Ok);
    assert_eq!(take(s), r#"{"entries":{"0,2":3,"1,3":2},"complete":true}"#);
    assert_eq!(unsafe { dpcy_ideal_to_json(h, &mut s) }, DpcyStatus::Ok);
    assert!(take(s).contains(r#""-b^2+a*c""#));
    unsafe { dpcy_ideal_free(h) };
}

#[test]
fn errors_are_reported() {
    let mut h = ptr::null_mut();
    let bad = CString::new(r#"{"ring":{"vars":["x"],"char":32003},"gens":["y"]}"#).unwrap();
    assert_eq!(unsafe { dpcy_ideal_from_json(bad.as_ptr(), &mut h) }, DpcyStatus::Parse);
    assert!(h.is_null());
    assert!(last_error().contains("unknown variable"));

    assert_eq!(unsafe { dpcy_ideal_from_json(ptr::null(), &mut h) }, DpcyStatus::NullPointer);
    let mut n = 0usize;
    assert_eq!(unsafe { dpcy_ideal_nvars(ptr::null(), &mut n) }, DpcyStatus::NullPointer);

    assert_eq!(unsafe { dpcy_surface_new(DpcySurface::D6, 0, 7, 32004, &mut h) }, DpcyStatus::InvalidInput);
    assert!(last_error().contains("32004"));

    let q = CString::new(r#"{"ring":{"vars":["x"],"char":0},"gens":["x"]}"#).unwrap();
    assert_eq!(unsafe { dpcy_ideal_from_json(q.as_ptr(), &mut h) }, DpcyStatus::InvalidInput);

    unsafe { dpcy_string_free(ptr::null_mut()) };
    unsafe { dpcy_ideal_free(ptr::null_mut()) };
}

#[test]
fn projected_surface_and_nodes() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dpcy_surface_new(DpcySurface::D6, 1, 7, 32003, &mut h) }, DpcyStatus::Ok);
    let mut cubics = 0usize;
    assert_eq!(unsafe { dpcy_ideal_generator_count(h, 3, &mut cubics) }, DpcyStatus::Ok);
    assert_eq!(cubics, 7);
    let degrees = [2u32, 2];
    let (mut nodes, mut on) = (0i64, false);
    let st = unsafe { dpcy_count_nodes(h, degrees.as_ptr(), degrees.len(), 7, &mut nodes, &mut on) };
    assert_eq!(st, DpcyStatus::Ok);
    assert_eq!((nodes, on), (6, true));
    unsafe { dpcy_ideal_free(h) };
}

#[test]
fn registry_cases() {
    let (mut report, mut passed) = (ptr::null_mut(), false);
    let id = CString::new("table1-row9").unwrap();
    assert_eq!(unsafe { dpcy_run_case(id.as_ptr(), 7, &mut report, &mut passed) }, DpcyStatus::Ok);
    assert!(passed);
    assert!(take(report).contains("\"status\":\"pass\""));
    let id = CString::new("nosuchcase").unwrap();
    assert_eq!(unsafe { dpcy_run_case(id.as_ptr(), 7, &mut report, &mut passed) }, DpcyStatus::UnknownCase);
    assert!(last_error().contains("unknown case"));
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(dpcy_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(manifest_dir().join("include/dpcy.h")).unwrap();
    for name in [
        "typedef struct DpcyIdeal DpcyIdeal;",
        "DPCY_STATUS_OK = 0",
        "dpcy_ideal_from_json",
        "dpcy_surface_new",
        "dpcy_count_nodes",
        "dpcy_last_error",
        "dpcy_string_free",
        "dpcy_ideal_free",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles `tests/smoke.c` against the header and the static library.
#[test]
fn c_program_links() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let lib = profile_dir.join("libdpcy_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("dpcy_smoke");
    let status = Command::new("cc")
        .arg(manifest_dir().join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let text = String::from_utf8(run.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(r#"9 2 6 {"2":9}"#));
    assert!(lines.next().unwrap().starts_with("3 "));
}
