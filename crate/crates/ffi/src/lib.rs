//! C ABI over `modspringer`.
//!
//! Every function returns an [`MsStatus`]; results go through out-pointers.
//! Groups are opaque [`MsGroup`] handles owned by the caller and released
//! with [`ms_group_free`]. Strings returned by the library are released with
//! [`ms_string_free`]. The message of the last failure on the calling thread
//! is available from [`ms_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use modspringer::cli::{self, CliError};
use modspringer::cuspidal::{enumerate_cuspidal_data, verify_counting_identity};
use modspringer::orbits::{enumerate_pairs, rather_good, GroupForm};
use modspringer::springerdata::{reproduce_report, DataSource, ReportCase};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Usage = 3,
    Computation = 4,
    Data = 5,
    Panic = 6,
}

/// Opaque group handle.
pub struct MsGroup {
    inner: GroupForm,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).unwrap_or_default());
}

fn guard(f: impl FnOnce() -> Result<(), (MsStatus, String)>) -> MsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            MsStatus::Ok
        }
        Ok(Err((s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            MsStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (MsStatus, String)> {
    if p.is_null() {
        return Err((MsStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (MsStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn group_ref<'a>(g: *const MsGroup) -> Result<&'a GroupForm, (MsStatus, String)> {
    g.as_ref()
        .map(|g| &g.inner)
        .ok_or((MsStatus::NullPointer, "null group".into()))
}

fn out_ptr<T>(p: *mut T) -> Result<(), (MsStatus, String)> {
    if p.is_null() {
        Err((MsStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn computation<E: std::fmt::Display>(e: E) -> (MsStatus, String) {
    (MsStatus::Computation, e.to_string())
}

/// Parses a group descriptor such as `"Sp 8"`, `"SO 9"` or `"GL 2 x Sp 4"`.
///
/// # Safety
/// `descriptor` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ms_group_parse(
    descriptor: *const c_char,
    out: *mut *mut MsGroup,
) -> MsStatus {
    guard(|| {
        out_ptr(out)?;
        let s = read_str(descriptor)?;
        let tokens: Vec<String> = s.split_whitespace().map(String::from).collect();
        let g = cli::parse_group(&tokens).map_err(|e| match e {
            CliError::Usage(m) => (MsStatus::Usage, m),
            e => computation(e),
        })?;
        *out = Box::into_raw(Box::new(MsGroup { inner: g }));
        Ok(())
    })
}

/// Releases a handle from [`ms_group_parse`]. Null is ignored.
///
/// # Safety
/// `g` must come from [`ms_group_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ms_group_free(g: *mut MsGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ms_rather_good(g: *const MsGroup, l: u32, out: *mut bool) -> MsStatus {
    guard(|| {
        out_ptr(out)?;
        let g = group_ref(g)?;
        *out = rather_good(g, l);
        Ok(())
    })
}

/// Number of pairs (orbit, local system).
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ms_pair_count(g: *const MsGroup, out: *mut usize) -> MsStatus {
    guard(|| {
        out_ptr(out)?;
        let g = group_ref(g)?;
        *out = enumerate_pairs(g).map_err(computation)?.len();
        Ok(())
    })
}

/// Number of ℓ-cuspidal data; ℓ = 0 means characteristic zero.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ms_cuspidal_count(g: *const MsGroup, l: u32, out: *mut usize) -> MsStatus {
    guard(|| {
        out_ptr(out)?;
        let g = group_ref(g)?;
        *out = enumerate_cuspidal_data(g, l).map_err(computation)?.len();
        Ok(())
    })
}

/// Checks the counting identity for (n, ℓ); `lhs`, `rhs` may be null.
///
/// # Safety
/// `holds` must be a valid pointer; `lhs` and `rhs` valid or null.
#[no_mangle]
pub unsafe extern "C" fn ms_verify_counting_identity(
    n: u32,
    l: u32,
    holds: *mut bool,
    lhs: *mut u64,
    rhs: *mut u64,
) -> MsStatus {
    guard(|| {
        out_ptr(holds)?;
        let r = verify_counting_identity(n, l).map_err(computation)?;
        *holds = r.equal;
        if !lhs.is_null() {
            *lhs = u64::try_from(r.lhs).map_err(computation)?;
        }
        if !rhs.is_null() {
            *rhs = u64::try_from(r.rhs).map_err(computation)?;
        }
        Ok(())
    })
}

/// Runs a bundled report (`"E8-l7"` or `"B4-l3"`); writes whether every
/// check passed and, if `json` is non-null, the report as JSON.
///
/// # Safety
/// `name` must be a valid string, `pass` a valid pointer, `json` valid or
/// null. A returned string must be freed with [`ms_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ms_report(
    name: *const c_char,
    pass: *mut bool,
    json: *mut *mut c_char,
) -> MsStatus {
    guard(|| {
        out_ptr(pass)?;
        let case =
            ReportCase::parse(read_str(name)?).map_err(|e| (MsStatus::Usage, e.to_string()))?;
        let r = reproduce_report(case, &DataSource::bundled())
            .map_err(|e| (MsStatus::Data, e.to_string()))?;
        *pass = r.pass;
        if !json.is_null() {
            let s = serde_json::to_string(&r).map_err(computation)?;
            *json = CString::new(s).map_err(computation)?.into_raw();
        }
        Ok(())
    })
}

/// Runs the command-line front end with `argc` arguments (program name
/// excluded). Writes the exit code and, if non-null, captured stdout and
/// stderr.
///
/// # Safety
/// `argv` must hold `argc` valid strings; output pointers valid or null.
#[no_mangle]
pub unsafe extern "C" fn ms_cli_run(
    argc: usize,
    argv: *const *const c_char,
    exit_code: *mut i32,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
) -> MsStatus {
    guard(|| {
        out_ptr(exit_code)?;
        if argc > 0 && argv.is_null() {
            return Err((MsStatus::NullPointer, "null argv".into()));
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(read_str(*argv.add(i))?.to_string());
        }
        let o = cli::run(args);
        *exit_code = o.code;
        if !out.is_null() {
            *out = CString::new(o.stdout).map_err(computation)?.into_raw();
        }
        if !err.is_null() {
            *err = CString::new(o.stderr).map_err(computation)?.into_raw();
        }
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ms_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
