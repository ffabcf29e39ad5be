use std::ffi::{CStr, CString};
use std::ptr;

use segalkit_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sk_string_free(s) };
    out
}

#[test]
fn standard_simplices() {
    let kind = CString::new("boundary").unwrap();
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { sk_sset_standard(kind.as_ptr(), 3, 0, &mut x) }, SkStatus::SkOk);
    let mut n = 0;
    assert_eq!(unsafe { sk_sset_len(x, &mut n) }, SkStatus::SkOk);
    assert_eq!(n, 14);
    assert_eq!(unsafe { sk_sset_count(x, 2, &mut n) }, SkStatus::SkOk);
    assert_eq!(n, 4);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { sk_sset_homology_json(x, 2, sk_budget_default(), &mut h) }, SkStatus::SkOk);
    let h: serde_json::Value = serde_json::from_str(&take(h)).unwrap();
    assert_eq!(h[0]["rank"], 1);
    assert_eq!(h[1]["rank"], 0);
    assert_eq!(h[2]["rank"], 1);
    let mut v = SkVerdict::SkUnknown;
    assert_eq!(unsafe { sk_sset_is_kan(x, 2, sk_budget_default(), &mut v) }, SkStatus::SkOk);
    assert_eq!(v, SkVerdict::SkNo);

    let name = CString::new("bd3").unwrap();
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { sk_sset_emit(x, name.as_ptr(), &mut text) }, SkStatus::SkOk);
    let text = CString::new(take(text)).unwrap();
    let mut y = ptr::null_mut();
    assert_eq!(unsafe { sk_sset_parse(text.as_ptr(), &mut y) }, SkStatus::SkOk);
    let mut c = 0;
    unsafe { sk_sset_pi0(y, &mut c) };
    assert_eq!(c, 1);
    unsafe {
        sk_sset_free(x);
        sk_sset_free(y);
    }
}

#[test]
fn segal_spaces() {
    let cat = CString::new("cat iso\nobject 0\nobject 1\narrow a : 0 -> 0\narrow f : 0 -> 1\narrow g : 1 -> 0\narrow b : 1 -> 1\nid 0 = a\nid 1 = b\ncompose f g = b\ncompose g f = a\n").unwrap();
    let mut x = ptr::null_mut();
    let st = unsafe { sk_bss_nerve(cat.as_ptr(), ptr::null(), sk_budget_default(), &mut x) };
    if st != SkStatus::SkOk {
        panic!("{}", unsafe { CStr::from_ptr(sk_last_error()) }.to_str().unwrap());
    }
    let mut v = SkVerdict::SkUnknown;
    assert_eq!(unsafe { sk_bss_segal_check(x, 3, sk_budget_default(), &mut v) }, SkStatus::SkOk);
    assert_eq!(v, SkVerdict::SkYes);
    assert_eq!(unsafe { sk_bss_complete_check(x, sk_budget_default(), &mut v) }, SkStatus::SkOk);
    assert_eq!(v, SkVerdict::SkNo);

    let g = CString::new("G").unwrap();
    let mut y = ptr::null_mut();
    assert_eq!(unsafe { sk_bss_spine(g.as_ptr(), 2, &mut y) }, SkStatus::SkOk);
    assert_eq!(unsafe { sk_bss_segal_check(y, 2, sk_budget_default(), &mut v) }, SkStatus::SkOk);
    assert_eq!(v, SkVerdict::SkNo);
    let mut row = ptr::null_mut();
    assert_eq!(unsafe { sk_bss_row(y, 0, sk_budget_default(), &mut row) }, SkStatus::SkOk);
    let mut n = 0;
    unsafe { sk_sset_len(row, &mut n) };
    assert_eq!(n, 3);

    let name = CString::new("g2").unwrap();
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { sk_bss_emit(y, name.as_ptr(), 2, sk_budget_default(), &mut text) }, SkStatus::SkOk);
    let text = CString::new(take(text)).unwrap();
    let mut z = ptr::null_mut();
    assert_eq!(unsafe { sk_bss_parse(text.as_ptr(), &mut z) }, SkStatus::SkOk);
    unsafe {
        sk_sset_free(row);
        sk_bss_free(x);
        sk_bss_free(y);
        sk_bss_free(z);
    }
}

#[test]
fn errors() {
    let bad = CString::new("sset x\nsimplex 1 a : b c\nend\n").unwrap();
    let mut x = ptr::null_mut();
    assert_eq!(unsafe { sk_sset_parse(bad.as_ptr(), &mut x) }, SkStatus::SkParse);
    assert!(x.is_null());
    let msg = unsafe { CStr::from_ptr(sk_last_error()) }.to_str().unwrap();
    assert!(msg.contains("line"), "{msg}");

    assert_eq!(unsafe { sk_sset_parse(ptr::null(), &mut x) }, SkStatus::SkNullPointer);
    let mut n = 0;
    assert_eq!(unsafe { sk_sset_len(ptr::null(), &mut n) }, SkStatus::SkNullPointer);

    let kind = CString::new("cube").unwrap();
    assert_eq!(unsafe { sk_sset_standard(kind.as_ptr(), 2, 0, &mut x) }, SkStatus::SkInvalidParameter);

    let tiny = SkBudget { simplices: 10, ..sk_budget_default() };
    let simplex = CString::new("simplex").unwrap();
    assert_eq!(unsafe { sk_sset_standard(simplex.as_ptr(), 2, 0, &mut x) }, SkStatus::SkOk);
    let mut h = ptr::null_mut();
    let st = unsafe { sk_sset_homology_json(x, 2, tiny, &mut h) };
    assert!(st == SkStatus::SkOk || st == SkStatus::SkBudgetExceeded);
    if st == SkStatus::SkOk {
        take(h);
    }
    unsafe { sk_sset_free(x) };
}

#[test]
fn run_command() {
    let args: Vec<CString> = ["build", "simplex", "2"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let mut report = ptr::null_mut();
    let mut code = -1;
    assert_eq!(unsafe { sk_run(ptrs.len(), ptrs.as_ptr(), &mut report, &mut code) }, SkStatus::SkOk);
    assert_eq!(code, 0);
    let r: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(r["command"][2], "build");
    assert!(r["error"].is_null());

    let args: Vec<CString> = ["no-such-command"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { sk_run(ptrs.len(), ptrs.as_ptr(), &mut report, &mut code) }, SkStatus::SkOk);
    assert_eq!(code, 2);
    take(report);
}

#[test]
fn header_declares_exports() {
    let header = include_str!("../include/segalkit.h");
    for f in [
        "sk_budget_default", "sk_last_error", "sk_string_free", "sk_sset_parse", "sk_sset_standard", "sk_sset_free",
        "sk_sset_len", "sk_sset_count", "sk_sset_emit", "sk_sset_pi0", "sk_sset_homology_json", "sk_sset_is_kan",
        "sk_bss_parse", "sk_bss_nerve", "sk_bss_spine", "sk_bss_free", "sk_bss_row", "sk_bss_emit",
        "sk_bss_segal_check", "sk_bss_complete_check", "sk_run",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f}");
    }
    for t in ["typedef struct SkSset SkSset;", "typedef struct SkBss SkBss;", "SK_BUDGET_EXCEEDED = 4", "SK_PANIC = 13"] {
        assert!(header.contains(t), "{t}");
    }
}
