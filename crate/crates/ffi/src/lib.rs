//! C ABI for abclab.
//!
//! Every call returns an `AbclabStatus`. Objects are opaque handles freed by
//! their `_free` function; strings returned through `char **` out-parameters
//! are owned by the caller and released with `abclab_string_free`. After a
//! non-OK status, `abclab_last_error` describes the failure on that thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use abclab::abc::{quality, search_sunit_solutions, ABCTriple};
use abclab::arith::field::Field;
use abclab::belyi::{belyi_for_branch_set, fiber_fields, parse_branch_set, BelyiCertificate};
use abclab::bounds::{builtin_profile, BoundProfile, Env, Provenance};
use abclab::cli::log_json;
use abclab::heights::{proj_height, radical};
use abclab::mason::{mason_check, Base, FFPoly, FFTriple};
use abclab::parse::{parse_element, parse_field, parse_qpoly, parse_rat};
use abclab::Error;
use num_bigint::BigInt;
use serde_json::json;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbclabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    FactorTimeout = 4,
    ReducibleMinPoly = 5,
    DegreeCapExceeded = 6,
    IndexDivisorUnsupported = 7,
    Unsupported = 8,
    PrecisionExhausted = 9,
    ZeroCoordinate = 10,
    DegeneratePoint = 11,
    ZeroRadical = 12,
    BudgetExceeded = 13,
    UnboundConstant = 14,
    DomainError = 15,
    HypothesisNotMet = 16,
    InexactDiscriminant = 17,
    NonMonotoneConstant = 18,
    InvariantViolated = 19,
    NonRationalBranchPoint = 20,
    DegreeOverflow = 21,
    CriticalFiber = 22,
    Panic = 99,
}

fn status_of(e: &Error) -> AbclabStatus {
    use AbclabStatus as S;
    match e {
        Error::FactorTimeout(_) => S::FactorTimeout,
        Error::ReducibleMinPoly => S::ReducibleMinPoly,
        Error::DegreeCapExceeded { .. } => S::DegreeCapExceeded,
        Error::IndexDivisorUnsupported(_) => S::IndexDivisorUnsupported,
        Error::UnsupportedField(_) | Error::UnsupportedExtension(_) => S::Unsupported,
        Error::PrecisionExhausted(_) => S::PrecisionExhausted,
        Error::ZeroCoordinate => S::ZeroCoordinate,
        Error::DegeneratePoint => S::DegeneratePoint,
        Error::ZeroRadical => S::ZeroRadical,
        Error::BudgetExceeded => S::BudgetExceeded,
        Error::UnboundConstant(_) => S::UnboundConstant,
        Error::DomainError(_) => S::DomainError,
        Error::HypothesisNotMet(_) => S::HypothesisNotMet,
        Error::InexactDiscriminant => S::InexactDiscriminant,
        Error::NonMonotoneConstant(_) => S::NonMonotoneConstant,
        Error::InvariantViolated(_) => S::InvariantViolated,
        Error::NonRationalBranchPoint(_) => S::NonRationalBranchPoint,
        Error::DegreeOverflow { .. } => S::DegreeOverflow,
        Error::CriticalFiber(_) => S::CriticalFiber,
        Error::InvalidInput(_) => S::InvalidInput,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(AbclabStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

type FResult<T> = Result<T, Fail>;

fn guard(f: impl FnOnce() -> FResult<()>) -> AbclabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AbclabStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(p) => {
            let m = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {m}"));
            AbclabStatus::Panic
        }
    }
}

unsafe fn cstr<'a>(p: *const c_char, what: &str) -> FResult<&'a str> {
    if p.is_null() {
        return Err(Fail(AbclabStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(AbclabStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> FResult<&'a mut T> {
    p.as_mut().ok_or_else(|| Fail(AbclabStatus::NullPointer, format!("{what} is null")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> FResult<&'a T> {
    p.as_ref().ok_or_else(|| Fail(AbclabStatus::NullPointer, format!("{what} is null")))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

pub struct AbclabField {
    inner: Field,
}

pub struct AbclabTriple {
    inner: ABCTriple,
}

pub struct AbclabProfile {
    inner: BoundProfile,
}

pub struct AbclabBelyi {
    inner: BelyiCertificate,
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn abclab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn abclab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must come from this library, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn abclab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `spec` is `Q`, `Q(i)`, `Q(sqrt(d))` or a monic polynomial in x.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abclab_field_new(spec: *const c_char, degree_cap: usize, out_field: *mut *mut AbclabField) -> AbclabStatus {
    guard(|| {
        let o = out(out_field, "out")?;
        let k = parse_field(cstr(spec, "spec")?, degree_cap)?;
        *o = Box::into_raw(Box::new(AbclabField { inner: k }));
        Ok(())
    })
}

/// # Safety
/// `f` must come from `abclab_field_new`, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn abclab_field_free(f: *mut AbclabField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live field handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abclab_field_degree(f: *const AbclabField, out_degree: *mut usize) -> AbclabStatus {
    guard(|| {
        *out(out_degree, "out")? = handle(f, "field")?.inner.degree();
        Ok(())
    })
}

/// Field data as JSON.
///
/// # Safety
/// `f` must be a live field handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn abclab_field_json(f: *const AbclabField, out_json: *mut *mut c_char) -> AbclabStatus {
    guard(|| {
        let o = out(out_json, "out")?;
        *o = into_c(handle(f, "field")?.inner.to_json().to_string());
        Ok(())
    })
}

/// An abc triple a + b = c over the field; entries are written in the
/// generator `w` (or `i` over Q(i)).
///
/// # Safety
/// Strings must be NUL-terminated; `f` live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_triple_new(
    f: *const AbclabField,
    a: *const c_char,
    b: *const c_char,
    c: *const c_char,
    out_triple: *mut *mut AbclabTriple,
) -> AbclabStatus {
    guard(|| {
        let o = out(out_triple, "out")?;
        let k = &handle(f, "field")?.inner;
        let (a, b, c) = (cstr(a, "a")?, cstr(b, "b")?, cstr(c, "c")?);
        let t = if k.is_rational() {
            let p = |s: &str| s.trim().parse::<BigInt>().map_err(|_| Fail(AbclabStatus::InvalidInput, format!("`{s}` is not an integer")));
            ABCTriple::from_ints(&p(a)?, &p(b)?, &p(c)?)?
        } else {
            ABCTriple::new(parse_element(k, a)?, parse_element(k, b)?, parse_element(k, c)?)?
        };
        *o = Box::into_raw(Box::new(AbclabTriple { inner: t }));
        Ok(())
    })
}

/// # Safety
/// `t` must come from `abclab_triple_new`, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn abclab_triple_free(t: *mut AbclabTriple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Certified enclosure [lo, hi] of h/rad.
///
/// # Safety
/// `t` live; `lo`, `hi` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_triple_quality(t: *const AbclabTriple, precision: u32, lo: *mut f64, hi: *mut f64) -> AbclabStatus {
    guard(|| {
        let (lo, hi) = (out(lo, "lo")?, out(hi, "hi")?);
        let q = quality(&handle(t, "triple")?.inner, precision)?;
        *lo = q.lo_f64();
        *hi = q.hi_f64();
        Ok(())
    })
}

/// Height, radical and quality as JSON.
///
/// # Safety
/// `t` live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_triple_report_json(t: *const AbclabTriple, precision: u32, out_json: *mut *mut c_char) -> AbclabStatus {
    guard(|| {
        let o = out(out_json, "out")?;
        let t = &handle(t, "triple")?.inner;
        let h = proj_height(&t.point(), precision)?.relative;
        let r = radical(&t.point(), None)?;
        let q = quality(t, precision)?;
        let v = json!({
            "triple": t.to_string(),
            "h": log_json(&h, precision),
            "rad": log_json(&r.value, precision),
            "quality": { "value": q.mid_string(20), "err": q.err_string(), "tag": "interval" },
        });
        *o = into_c(v.to_string());
        Ok(())
    })
}

/// All u with u and 1 − u S-units over Q and h(u) ≤ log `height`, as JSON.
///
/// # Safety
/// `primes` must point to `n` values; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_sunit_search_json(primes: *const u64, n: usize, height: u64, out_json: *mut *mut c_char) -> AbclabStatus {
    guard(|| {
        let o = out(out_json, "out")?;
        if primes.is_null() {
            return Err(Fail(AbclabStatus::NullPointer, "primes is null".into()));
        }
        let ps = std::slice::from_raw_parts(primes, n);
        let r = search_sunit_solutions(ps, height, None)?.into_result()?;
        *o = into_c(json!({ "solutions": r.iter().map(|s| s.to_json()).collect::<Vec<_>>() }).to_string());
        Ok(())
    })
}

/// # Safety
/// `name` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_profile_builtin(name: *const c_char, out_profile: *mut *mut AbclabProfile) -> AbclabStatus {
    guard(|| {
        let o = out(out_profile, "out")?;
        let p = builtin_profile(cstr(name, "name")?)?;
        *o = Box::into_raw(Box::new(AbclabProfile { inner: p }));
        Ok(())
    })
}

/// # Safety
/// `p` must come from `abclab_profile_builtin`, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn abclab_profile_free(p: *mut AbclabProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Binds a constant to a rational such as `3/2` (user-hypothetical).
///
/// # Safety
/// `p` live and not shared across threads during the call; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn abclab_profile_set_constant(p: *mut AbclabProfile, name: *const c_char, value: *const c_char) -> AbclabStatus {
    guard(|| {
        let p = out(p, "profile")?;
        let v = parse_rat(cstr(value, "value")?)?;
        p.inner.set_constant(cstr(name, "name")?, v, Provenance::UserHypothetical);
        Ok(())
    })
}

/// Certified enclosure of B(u, v, w, z, d); `env` is `u,v,w,z,d` with rational entries.
///
/// # Safety
/// `p` live; `env` NUL-terminated; `lo`, `hi` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_profile_eval(
    p: *const AbclabProfile,
    env: *const c_char,
    precision: u32,
    lo: *mut f64,
    hi: *mut f64,
) -> AbclabStatus {
    guard(|| {
        let (lo, hi) = (out(lo, "lo")?, out(hi, "hi")?);
        let parts: Vec<&str> = cstr(env, "env")?.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(Fail(AbclabStatus::InvalidInput, "env needs u,v,w,z,d".into()));
        }
        let q = parts.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>, _>>()?;
        let e = Env::from_rationals([q[0].clone(), q[1].clone(), q[2].clone(), q[3].clone(), q[4].clone()], precision)?;
        let r = handle(p, "profile")?.inner.eval(&e, precision)?;
        *lo = r.lo_f64();
        *hi = r.hi_f64();
        Ok(())
    })
}

/// Mason–Stothers check of a + b over `base` (`Q` or `F<p>`), polynomials in t.
///
/// # Safety
/// Strings NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_mason_check_json(
    base: *const c_char,
    a: *const c_char,
    b: *const c_char,
    out_json: *mut *mut c_char,
) -> AbclabStatus {
    guard(|| {
        let o = out(out_json, "out")?;
        let base = Base::parse(cstr(base, "base")?)?;
        let a = FFPoly::from_q(&parse_qpoly(cstr(a, "a")?, "t")?, base)?;
        let b = FFPoly::from_q(&parse_qpoly(cstr(b, "b")?, "t")?, base)?;
        let c = a.add(&b)?;
        let r = mason_check(&FFTriple::new(a, b, c)?)?;
        *o = into_c(r.to_json().to_string());
        Ok(())
    })
}

/// Builds and certifies a Belyi map for a branch set such as `0,1,inf,1/3`.
///
/// # Safety
/// `branch` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_belyi_build(branch: *const c_char, degree_cap: u64, out_map: *mut *mut AbclabBelyi) -> AbclabStatus {
    guard(|| {
        let o = out(out_map, "out")?;
        let b = parse_branch_set(cstr(branch, "branch")?)?;
        let c = belyi_for_branch_set(&b, degree_cap)?;
        *o = Box::into_raw(Box::new(AbclabBelyi { inner: c }));
        Ok(())
    })
}

/// # Safety
/// `m` must come from `abclab_belyi_build`, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn abclab_belyi_free(m: *mut AbclabBelyi) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_belyi_degree(m: *const AbclabBelyi, out_degree: *mut u64) -> AbclabStatus {
    guard(|| {
        *out(out_degree, "out")? = handle(m, "map")?.inner.degree() as u64;
        Ok(())
    })
}

/// The certificate (map, trace, witnesses, critical values) as JSON.
///
/// # Safety
/// `m` live; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_belyi_json(m: *const AbclabBelyi, out_json: *mut *mut c_char) -> AbclabStatus {
    guard(|| {
        *out(out_json, "out")? = into_c(handle(m, "map")?.inner.to_json().to_string());
        Ok(())
    })
}

/// Fiber fields over a rational `y`; `primes` is a comma-separated S.
///
/// # Safety
/// `m` live; strings NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn abclab_belyi_fiber_json(
    m: *const AbclabBelyi,
    y: *const c_char,
    primes: *const c_char,
    out_json: *mut *mut c_char,
) -> AbclabStatus {
    guard(|| {
        let o = out(out_json, "out")?;
        let y = parse_rat(cstr(y, "y")?)?;
        let s = cstr(primes, "primes")?
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<BigInt>().map_err(|_| Fail(AbclabStatus::InvalidInput, format!("`{t}` is not an integer"))))
            .collect::<FResult<Vec<_>>>()?;
        let r = fiber_fields(&handle(m, "map")?.inner.map, &y, &s)?;
        *o = into_c(r.to_json().to_string());
        Ok(())
    })
}
