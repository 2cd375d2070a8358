use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use tensor_duality_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take_string(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    td_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(td_last_error_message()).to_str().unwrap().to_owned()
}

const TRACE: &str = r#"{"D":2,"vertices":2,"strands":[[[1,1],[2,1]],[[1,2],[2,2]]]}"#;
const IDENTITY_PLUS_SWAP: &str = r#"{"terms":[{"pairs":[[1,3],[2,4]],"gamma":"1"},{"pairs":[[1,4],[2,3]],"gamma":"1"}]}"#;

unsafe fn load(graph: &str, propagator: &str, b: u8) -> (*mut TdGraph, *mut TdPropagator) {
    let mut g = ptr::null_mut();
    assert_eq!(td_graph_from_json(c(graph).as_ptr(), &mut g), TdStatus::Ok);
    let mut p = ptr::null_mut();
    assert_eq!(td_propagator_from_json(c(propagator).as_ptr(), td_graph_strands(g), b, &mut p), TdStatus::Ok);
    (g, p)
}

#[test]
fn expectation_round_trip() {
    unsafe {
        let (g, p) = load(TRACE, IDENTITY_PLUS_SWAP, 0);
        assert_eq!(td_graph_strands(g), 2);
        assert_eq!(td_graph_vertices(g), 2);
        for (b, text, at3) in [(0u8, "N^2 + N", "12"), (1u8, "N^2 - N", "6")] {
            let mut a = ptr::null_mut();
            assert_eq!(td_gaussian_expectation(g, p, b, 1, &mut a), TdStatus::Ok);
            let mut s = ptr::null_mut();
            assert_eq!(td_amplitude_to_string(a, &mut s), TdStatus::Ok);
            assert_eq!(take_string(s), text);
            assert_eq!(td_amplitude_eval(a, 3, &mut s), TdStatus::Ok);
            assert_eq!(take_string(s), at3);
            assert_eq!(td_amplitude_to_json(a, &mut s), TdStatus::Ok);
            let json = take_string(s);
            assert!(json.contains(&format!("\"b\":{b}")), "{json}");
            td_amplitude_free(a);
        }
        let mut holds = false;
        assert_eq!(td_duality_check(g, p, 2, &mut holds), TdStatus::Ok);
        assert!(holds);
        let mut agrees = false;
        assert_eq!(td_oracle_check(g, p, 2, 1, &mut agrees), TdStatus::Ok);
        assert!(agrees);
        td_propagator_free(p);
        td_graph_free(g);
    }
}

#[test]
fn named_projector_propagator() {
    unsafe {
        let graph = r#"{"D":3,"vertices":2,"strands":[[[1,1],[2,1]],[[1,2],[2,2]],[[1,3],[2,3]]]}"#;
        let (g, p) = load(graph, r#"{"projector":{"lambda":[1,1,1]}}"#, 1);
        let mut agrees = false;
        assert_eq!(td_oracle_check(g, p, 2, 1, &mut agrees), TdStatus::Ok);
        assert!(agrees);
        td_propagator_free(p);
        td_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(td_graph_from_json(c("{").as_ptr(), &mut g), TdStatus::Parse);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(td_graph_from_json(ptr::null(), &mut g), TdStatus::NullPointer);
        assert!(last_error().contains("json"));

        let odd = r#"{"D":1,"vertices":3,"strands":[]}"#;
        assert_ne!(td_graph_from_json(c(odd).as_ptr(), &mut g), TdStatus::Ok);

        let (g, p) = load(TRACE, IDENTITY_PLUS_SWAP, 0);
        let mut agrees = false;
        assert_eq!(td_oracle_check(g, p, 3, 1, &mut agrees), TdStatus::InvalidInput);
        assert!(last_error().contains("even N"));
        let mut a = ptr::null_mut();
        assert_eq!(td_gaussian_expectation(g, ptr::null(), 0, 1, &mut a), TdStatus::NullPointer);
        assert_eq!(td_gaussian_expectation(g, p, 7, 1, &mut a), TdStatus::Parse);

        let big = r#"{"D":4,"vertices":2,"strands":[[[1,1],[2,1]],[[1,2],[2,2]],[[1,3],[2,3]],[[1,4],[2,4]]]}"#;
        let (g4, p4) = load(big, r#"{"terms":[{"pairs":[[1,5],[2,6],[3,7],[4,8]],"gamma":"1"}]}"#, 0);
        assert_eq!(td_oracle_check(g4, p4, 5, 0, &mut agrees), TdStatus::CapExceeded);

        td_propagator_free(p4);
        td_graph_free(g4);
        td_propagator_free(p);
        td_graph_free(g);
        td_graph_free(ptr::null_mut());
        td_string_free(ptr::null_mut());
    }
}

#[test]
fn dimension_and_version() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(td_dimension(c("3,1").as_ptr(), &mut s), TdStatus::Ok);
        assert_eq!(take_string(s), "N(N-1)(N+1)(N+2)/8");
        assert_eq!(td_dimension(c("1,2").as_ptr(), &mut s), TdStatus::InvalidInput);
        let v = CStr::from_ptr(td_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}

fn target_dir() -> PathBuf {
    // integration tests run from <target>/<profile>/deps
    std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf()
}

fn has_compiler() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn c_program_links_against_static_library() {
    let lib = target_dir().join("libtensor_duality_ffi.a");
    if !has_compiler() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library at {}", lib.display());
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::temp_dir().join(format!("tensor_duality_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let output = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    assert_eq!(String::from_utf8_lossy(&output.stdout).trim(), "N^2 - N");
}
