//! C bindings for the `cotangent` library.
//!
//! A problem file is parsed once into an opaque [`CotangentProblem`] handle and
//! can then be run under any command. Reports come back as JSON strings owned by
//! the caller, to be released with [`cotangent_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cotangent::cli::problem::ProblemFile;
use cotangent::cli::{exit_status, run, Command, RunOptions};
use cotangent::Error;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CotangentStatus {
    Ok = 0,
    Invalid = 1,
    BudgetExceeded = 2,
    OracleMismatch = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Commands understood by [`cotangent_run`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CotangentCommand {
    Tmods = 0,
    Exal = 1,
    Lift = 2,
    Deform = 3,
    Oracle = 4,
}

/// A parsed problem file.
pub struct CotangentProblem {
    file: ProblemFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn status_of(e: &Error) -> CotangentStatus {
    match e.exit_code() {
        2 => CotangentStatus::BudgetExceeded,
        3 => CotangentStatus::OracleMismatch,
        _ => CotangentStatus::Invalid,
    }
}

fn guarded(body: impl FnOnce() -> Result<(), CotangentStatus>) -> CotangentStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CotangentStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            CotangentStatus::Panic
        }
    }
}

fn fail(e: Error) -> CotangentStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

fn null() -> CotangentStatus {
    set_error("null pointer argument".into());
    CotangentStatus::NullPointer
}

/// Parses a JSON problem file.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cotangent_problem_parse(json: *const c_char, out: *mut *mut CotangentProblem) -> CotangentStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let text = CStr::from_ptr(json).to_str().map_err(|_| fail(Error::invalid("problem text is not UTF-8")))?;
        let file = ProblemFile::from_json(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(CotangentProblem { file }));
        Ok(())
    })
}

/// Releases a handle from [`cotangent_problem_parse`]. Null is ignored.
///
/// # Safety
/// `problem` must come from [`cotangent_problem_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cotangent_problem_free(problem: *mut CotangentProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Runs every problem accepted by `command` and writes the JSON report to `out`.
///
/// On [`CotangentStatus::OracleMismatch`] the report is still written.
///
/// # Safety
/// `problem` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cotangent_run(
    problem: *const CotangentProblem,
    command: CotangentCommand,
    oracle: bool,
    seed: u64,
    out: *mut *mut c_char,
) -> CotangentStatus {
    guarded(|| {
        if problem.is_null() || out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let command = match command {
            CotangentCommand::Tmods => Command::Tmods,
            CotangentCommand::Exal => Command::Exal,
            CotangentCommand::Lift => Command::Lift,
            CotangentCommand::Deform => Command::Deform,
            CotangentCommand::Oracle => Command::Oracle,
        };
        let opts = RunOptions {
            oracle,
            seed,
            ..RunOptions::default()
        };
        let report = run(command, &(*problem).file, &opts).map_err(fail)?;
        let json = CString::new(report.to_json()).map_err(|_| fail(Error::invalid("report contains a nul byte")))?;
        *out = json.into_raw();
        exit_status(&report).map_err(fail)
    })
}

/// The message of the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn cotangent_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by [`cotangent_run`]. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cotangent_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = include_str!("../../core/corpus/dualnumbers.json");

    fn parse(text: &str) -> (CotangentStatus, *mut CotangentProblem) {
        let text = CString::new(text).unwrap();
        let mut handle = ptr::null_mut();
        let status = unsafe { cotangent_problem_parse(text.as_ptr(), &mut handle) };
        (status, handle)
    }

    #[test]
    fn runs_a_problem_file() {
        let (status, handle) = parse(DUAL);
        assert_eq!(status, CotangentStatus::Ok);
        let mut out = ptr::null_mut();
        let status = unsafe { cotangent_run(handle, CotangentCommand::Exal, true, 0, &mut out) };
        assert_eq!(status, CotangentStatus::Ok);
        let json = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["command"], "exal");
        unsafe {
            cotangent_string_free(out);
            cotangent_problem_free(handle);
        }
    }

    #[test]
    fn reports_parse_errors() {
        let (status, handle) = parse("{ not json");
        assert_eq!(status, CotangentStatus::Invalid);
        assert!(handle.is_null());
        let message = unsafe { CStr::from_ptr(cotangent_last_error()) }.to_str().unwrap();
        assert!(!message.is_empty());
    }

    #[test]
    fn rejects_null_arguments() {
        let mut handle = ptr::null_mut();
        assert_eq!(unsafe { cotangent_problem_parse(ptr::null(), &mut handle) }, CotangentStatus::NullPointer);
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { cotangent_run(ptr::null(), CotangentCommand::Tmods, false, 0, &mut out) }, CotangentStatus::NullPointer);
        unsafe {
            cotangent_problem_free(ptr::null_mut());
            cotangent_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn budget_exhaustion_has_its_own_status() {
        let (_, handle) = parse(&DUAL.replace("\"problems\"", "\"options\": { \"budget\": 1 }, \"problems\""));
        let mut out = ptr::null_mut();
        let status = unsafe { cotangent_run(handle, CotangentCommand::Exal, true, 0, &mut out) };
        assert_eq!(status, CotangentStatus::BudgetExceeded);
        unsafe { cotangent_problem_free(handle) };
    }
}
