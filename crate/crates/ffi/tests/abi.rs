use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hyperdescent_ffi::*;

fn json(r: *const HdReport) -> String {
    unsafe { CStr::from_ptr(hd_report_json(r)) }.to_str().unwrap().to_string()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hd_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn run_and_read_reports() {
    let mut r = ptr::null_mut();
    let cmd = CString::new("pillai").unwrap();
    assert_eq!(unsafe { hd_run(cmd.as_ptr(), ptr::null(), &mut r) }, HdCode::Ok);
    assert!(!r.is_null());
    assert_eq!(unsafe { hd_report_status(r) }, HdCode::Ok);
    assert_eq!(unsafe { hd_report_check_count(r) }, 5);
    let v = json(r);
    assert!(v.contains("\"schema_version\": 1") && v.contains("\"command\": \"pillai\""));
    let csv = unsafe { CStr::from_ptr(hd_report_csv(r)) }.to_str().unwrap().to_string();
    assert!(csv.starts_with("kind,id,status,expected,observed"));
    unsafe { hd_report_free(r) };

    let cmd = CString::new("jacobian").unwrap();
    assert_eq!(unsafe { hd_run(cmd.as_ptr(), ptr::null(), &mut r) }, HdCode::Ok);
    assert!(json(r).contains("addition-table-oracle"));
    unsafe { hd_report_free(r) };

    let cmd = CString::new("rank-bound").unwrap();
    let cfg = CString::new(r#"{"d_a": 1, "g_b": 0, "conductor_degree": 12, "known_rank": 9}"#).unwrap();
    assert_eq!(unsafe { hd_run(cmd.as_ptr(), cfg.as_ptr(), &mut r) }, HdCode::Fail);
    unsafe { hd_report_free(r) };
}

#[test]
fn errors_are_codes() {
    let mut r = ptr::null_mut();
    let bad = CString::new("frobnicate").unwrap();
    assert_eq!(unsafe { hd_run(bad.as_ptr(), ptr::null(), &mut r) }, HdCode::InputError);
    assert!(r.is_null());
    assert!(last_error().contains("frobnicate"));
    assert_eq!(unsafe { hd_run(ptr::null(), ptr::null(), &mut r) }, HdCode::NullArgument);
    let cmd = CString::new("jacobian").unwrap();
    assert_eq!(unsafe { hd_run(cmd.as_ptr(), ptr::null(), ptr::null_mut()) }, HdCode::NullArgument);
    let cfg = CString::new(r#"{"schema_version": 1, "surface": "custom-hyperelliptic", "p": 7, "f": "x^5 +", "budget": 10}"#).unwrap();
    assert_eq!(unsafe { hd_run(cmd.as_ptr(), cfg.as_ptr(), &mut r) }, HdCode::InputError);
    assert!(last_error().contains("parse error"));
    let bytes = [0xffu8, 0];
    assert_eq!(unsafe { hd_run(bytes.as_ptr() as *const _, ptr::null(), &mut r) }, HdCode::InvalidUtf8);
    assert_eq!(unsafe { hd_report_status(ptr::null()) }, HdCode::NullArgument);
    assert!(unsafe { hd_report_json(ptr::null()) }.is_null());
    unsafe { hd_report_free(ptr::null_mut()) };
}

#[test]
fn budget_is_inconclusive() {
    let mut r = ptr::null_mut();
    let cmd = CString::new("jacobian").unwrap();
    let cfg = CString::new(r#"{"schema_version": 1, "surface": "custom-hyperelliptic", "p": 7, "f": "x^5 + 2", "budget": 10, "jacobian": {"operation": "enumerate"}}"#).unwrap();
    let code = unsafe { hd_run(cmd.as_ptr(), cfg.as_ptr(), &mut r) };
    assert_eq!(code, HdCode::Inconclusive, "{}", last_error());
    if !r.is_null() {
        assert_eq!(unsafe { hd_report_status(r) }, HdCode::Inconclusive);
        unsafe { hd_report_free(r) };
    }
}

#[test]
fn jacobian_handle() {
    let mut j = ptr::null_mut();
    let f = [2i64, 0, 0, 0, 0, 1];
    assert_eq!(unsafe { hd_jacobian_new(7, f.as_ptr(), f.len(), &mut j) }, HdCode::Ok);
    assert_eq!(unsafe { hd_jacobian_genus(j) }, 2);
    let mut n = 0u64;
    assert_eq!(unsafe { hd_jacobian_order(j, 1 << 24, &mut n) }, HdCode::Ok);
    assert_eq!(n, 50);
    assert_eq!(unsafe { hd_jacobian_order(j, 3, &mut n) }, HdCode::Inconclusive);
    unsafe { hd_jacobian_free(j) };
    let sq = [0i64, 0, 0, 0, 0, 1];
    assert_eq!(unsafe { hd_jacobian_new(7, sq.as_ptr(), sq.len(), &mut j) }, HdCode::InputError);
    assert!(j.is_null());
    assert_eq!(unsafe { hd_jacobian_new(10003, f.as_ptr(), f.len(), &mut j) }, HdCode::InputError);
    assert!(!unsafe { CStr::from_ptr(hd_version()) }.to_bytes().is_empty());
}

#[test]
fn header_compiles_and_links_from_c() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/hyperdescent.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in ["hd_run", "hd_report_free", "hd_jacobian_order", "typedef struct HdReport HdReport", "HD_CODE_INCONCLUSIVE = 2"] {
        assert!(text.contains(sym), "header lacks {sym}");
    }
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler; header check only");
        return;
    };
    // the staticlib sits next to this test's deps directory
    let exe = std::env::current_exe().unwrap();
    let target = exe.parent().unwrap().parent().unwrap();
    let lib = target.join("libhyperdescent_ffi.a");
    let tmp = std::env::temp_dir().join(format!("hd_abi_{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "hyperdescent.h"
int main(void) {
    HdReport *r = NULL;
    HdCode c = hd_run("pillai", NULL, &r);
    if (c != HD_CODE_OK || hd_report_check_count(r) != 5) return 10;
    hd_report_free(r);
    HdJacobian *j = NULL;
    int64_t f[6] = {2, 0, 0, 0, 0, 1};
    uint64_t n = 0;
    if (hd_jacobian_new(7, f, 6, &j) != HD_CODE_OK) return 11;
    if (hd_jacobian_order(j, 1u << 24, &n) != HD_CODE_OK || n != 50) return 12;
    hd_jacobian_free(j);
    if (hd_run("nope", NULL, &r) != HD_CODE_INPUT_ERROR || r != NULL) return 13;
    printf("%s\n", hd_last_error());
    return 0;
}
"#,
    )
    .unwrap();
    let st = Command::new(&cc).arg("-fsyntax-only").arg("-Wall").arg("-Werror").arg(format!("-I{}", dir.join("include").display())).arg(&src).status().unwrap();
    assert!(st.success(), "header does not compile");
    if !lib.exists() {
        eprintln!("{} not built; skipping link", lib.display());
        return;
    }
    let bin = tmp.join("main");
    let st = Command::new(&cc)
        .arg(format!("-I{}", dir.join("include").display()))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(st.success(), "link failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert!(String::from_utf8_lossy(&out.stdout).contains("unknown command"));
    let _ = std::fs::remove_dir_all(&tmp);
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
