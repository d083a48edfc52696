use std::ffi::{CStr, CString};
use std::ptr;

use abclab_ffi::*;

fn s(x: &str) -> CString {
    CString::new(x).unwrap()
}

unsafe fn take(p: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(p).to_str().unwrap().to_string();
    abclab_string_free(p);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(abclab_last_error()).to_str().unwrap().to_string()
}

#[test]
fn triple_quality_round_trip() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(abclab_field_new(s("Q").as_ptr(), 8, &mut k), AbclabStatus::Ok);
        let mut t = ptr::null_mut();
        assert_eq!(abclab_triple_new(k, s("1").as_ptr(), s("8").as_ptr(), s("9").as_ptr(), &mut t), AbclabStatus::Ok);
        let (mut lo, mut hi) = (0.0, 0.0);
        assert_eq!(abclab_triple_quality(t, 128, &mut lo, &mut hi), AbclabStatus::Ok);
        let q = 9f64.ln() / 6f64.ln();
        assert!(lo <= q + 1e-12 && q - 1e-12 <= hi && hi - lo < 1e-12);
        let mut js = ptr::null_mut();
        assert_eq!(abclab_triple_report_json(t, 128, &mut js), AbclabStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v["rad"]["formal"], "log 6");
        abclab_triple_free(t);
        abclab_field_free(k);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(abclab_field_new(s("x^2-4").as_ptr(), 8, &mut k), AbclabStatus::ReducibleMinPoly);
        assert!(last_error().contains("reducible"));
        assert_eq!(abclab_field_new(ptr::null(), 8, &mut k), AbclabStatus::NullPointer);
        assert_eq!(abclab_field_new(s("Q").as_ptr(), 8, ptr::null_mut()), AbclabStatus::NullPointer);
        assert_eq!(abclab_field_new(s("Q").as_ptr(), 8, &mut k), AbclabStatus::Ok);
        let mut t = ptr::null_mut();
        let st = abclab_triple_new(k, s("1").as_ptr(), s("2").as_ptr(), s("4").as_ptr(), &mut t);
        assert_eq!(st, AbclabStatus::InvalidInput);
        assert!(t.is_null());
        abclab_field_free(k);
        let mut m = ptr::null_mut();
        assert_eq!(abclab_belyi_build(s("0,1,sqrt2").as_ptr(), 1000, &mut m), AbclabStatus::NonRationalBranchPoint);
        abclab_field_free(ptr::null_mut());
        abclab_string_free(ptr::null_mut());
    }
}

#[test]
fn gaussian_field() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(abclab_field_new(s("Q(i)").as_ptr(), 8, &mut k), AbclabStatus::Ok);
        let mut d = 0usize;
        assert_eq!(abclab_field_degree(k, &mut d), AbclabStatus::Ok);
        assert_eq!(d, 2);
        let mut js = ptr::null_mut();
        assert_eq!(abclab_field_json(k, &mut js), AbclabStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v["disc_provenance"], "exact");
        let mut t = ptr::null_mut();
        assert_eq!(abclab_triple_new(k, s("1").as_ptr(), s("2i").as_ptr(), s("1+2i").as_ptr(), &mut t), AbclabStatus::Ok);
        abclab_triple_free(t);
        abclab_field_free(k);
    }
}

#[test]
fn profiles_and_search() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(abclab_profile_builtin(s("abc").as_ptr(), &mut p), AbclabStatus::Ok);
        assert_eq!(abclab_profile_set_constant(p, s("c").as_ptr(), s("2").as_ptr()), AbclabStatus::Ok);
        let (mut lo, mut hi) = (0.0, 0.0);
        assert_eq!(abclab_profile_eval(p, s("2,0,1,0,1").as_ptr(), 128, &mut lo, &mut hi), AbclabStatus::Ok);
        assert!(lo <= 5.0 && 5.0 <= hi);
        assert_eq!(abclab_profile_eval(p, s("1,2").as_ptr(), 128, &mut lo, &mut hi), AbclabStatus::InvalidInput);
        abclab_profile_free(p);

        let primes = [2u64, 3];
        let mut js = ptr::null_mut();
        assert_eq!(abclab_sunit_search_json(primes.as_ptr(), 2, 10, &mut js), AbclabStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert!(v["solutions"].as_array().unwrap().iter().any(|x| x["u"] == "-1/8"));
    }
}

#[test]
fn mason_and_belyi() {
    unsafe {
        let mut js = ptr::null_mut();
        assert_eq!(abclab_mason_check_json(s("F3").as_ptr(), s("t^3").as_ptr(), s("1-t^3").as_ptr(), &mut js), AbclabStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v["applicable"], false);

        let mut m = ptr::null_mut();
        assert_eq!(abclab_belyi_build(s("0,1,inf,1/3").as_ptr(), 1000, &mut m), AbclabStatus::Ok);
        let mut d = 0u64;
        assert_eq!(abclab_belyi_degree(m, &mut d), AbclabStatus::Ok);
        assert_eq!(d, 3);
        assert_eq!(abclab_belyi_json(m, &mut js), AbclabStatus::Ok);
        assert!(take(js).contains("\"critical_values\""));
        assert_eq!(abclab_belyi_fiber_json(m, s("-1").as_ptr(), s("2").as_ptr(), &mut js), AbclabStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v["holds"], "TRUE");
        assert_eq!(abclab_belyi_fiber_json(m, s("1").as_ptr(), s("").as_ptr(), &mut js), AbclabStatus::CriticalFiber);
        abclab_belyi_free(m);
    }
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/abclab.h")).unwrap();
    for name in [
        "typedef struct AbclabField AbclabField;",
        "ABCLAB_STATUS_OK = 0",
        "abclab_last_error(void)",
        "abclab_string_free(char *s)",
        "abclab_belyi_build(",
        "abclab_profile_eval(",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.c");
    std::fs::write(
        &src,
        "#include \"abclab.h\"\nint main(void) { AbclabField *k = 0; return abclab_field_new(\"Q\", 8, &k) == ABCLAB_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let st = std::process::Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I", concat!(env!("CARGO_MANIFEST_DIR"), "/include")])
        .arg(&src)
        .status()
        .unwrap();
    assert!(st.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for c in ["cc", "gcc", "clang"] {
        if std::process::Command::new(c).arg("--version").output().is_ok() {
            return Ok(c);
        }
    }
    Err(())
}
