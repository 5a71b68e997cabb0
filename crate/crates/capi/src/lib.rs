//! C ABI for the `situ` session type library.
//!
//! Handles are opaque pointers owned by the caller: everything returned
//! through an out-parameter must be released with the matching `*_free`
//! function, and strings with [`situ_string_free`]. Functions never retain
//! the pointers they are given. Every call returns a [`SituStatus`]; on a
//! non-`Ok` status the out-parameters are left untouched and
//! [`situ_last_error_message`] returns a description of the failure for the
//! current thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use situ::normalize::{normalize, viable};
use situ::orthogonality::{orthogonal, refines_bounded, OrthogonalityError};
use situ::project::project;
use situ::semantics::{dual, member_type};
use situ::subtype::{equivalent, subtype};
use situ::syntax::{
    parse_global, parse_process, parse_type, render_process, render_type, GlobalParseError,
    ProcessTerm, RoleName, SessionTypeTerm,
};
use situ::typecheck::check;

/// An opaque session type handle.
pub struct SituType(SessionTypeTerm);

/// An opaque process handle.
pub struct SituProcess(ProcessTerm);

/// Result of every API call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SituStatus {
    Ok = 0,
    /// The input text does not parse.
    SyntaxError = 1,
    /// A global type violates the two-role discipline.
    RoleError = 2,
    /// A parameter exceeds a configured cap.
    LimitError = 3,
    /// State-space exploration exceeded its cap.
    ExplorationLimit = 4,
    /// A global type cannot be projected onto the requested role.
    ProjectionError = 5,
    /// A required pointer argument was null.
    NullArgument = 6,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: SituStatus, message: impl Into<String>) -> SituStatus {
    let message = message.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).ok();
    });
    status
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, SituStatus> {
    if text.is_null() {
        return Err(fail(SituStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(SituStatus::InvalidUtf8, e.to_string()))
}

unsafe fn type_ref<'a>(t: *const SituType) -> Result<&'a SessionTypeTerm, SituStatus> {
    t.as_ref()
        .map(|wrapper| &wrapper.0)
        .ok_or_else(|| fail(SituStatus::NullArgument, "null type handle"))
}

unsafe fn process_ref<'a>(p: *const SituProcess) -> Result<&'a ProcessTerm, SituStatus> {
    p.as_ref()
        .map(|wrapper| &wrapper.0)
        .ok_or_else(|| fail(SituStatus::NullArgument, "null process handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> SituStatus {
    if out.is_null() {
        return fail(SituStatus::NullArgument, "null out-parameter");
    }
    out.write(value);
    SituStatus::Ok
}

fn boxed_type(t: SessionTypeTerm) -> *mut SituType {
    Box::into_raw(Box::new(SituType(t)))
}

fn boxed_process(p: ProcessTerm) -> *mut SituProcess {
    Box::into_raw(Box::new(SituProcess(p)))
}

/// Returns the last error message recorded on this thread, or null. The
/// caller frees it with `situ_string_free`.
#[no_mangle]
pub extern "C" fn situ_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(message) => message.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `text` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn situ_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Parses a session type from text into a fresh handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_type_parse(
    text: *const c_char,
    out: *mut *mut SituType,
) -> SituStatus {
    let text = match read_str(text) {
        Ok(text) => text,
        Err(status) => return status,
    };
    match parse_type(text) {
        Ok(t) => write_out(out, boxed_type(t)),
        Err(e) => fail(SituStatus::SyntaxError, e.to_string()),
    }
}

/// Parses a process from text into a fresh handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_process_parse(
    text: *const c_char,
    out: *mut *mut SituProcess,
) -> SituStatus {
    let text = match read_str(text) {
        Ok(text) => text,
        Err(status) => return status,
    };
    match parse_process(text) {
        Ok(p) => write_out(out, boxed_process(p)),
        Err(e) => fail(SituStatus::SyntaxError, e.to_string()),
    }
}

/// Releases a type handle. Null is ignored.
///
/// # Safety
/// `t` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn situ_type_free(t: *mut SituType) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Releases a process handle. Null is ignored.
///
/// # Safety
/// `p` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn situ_process_free(p: *mut SituProcess) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Renders a type in the canonical re-parseable syntax.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_type_render(
    t: *const SituType,
    out: *mut *mut c_char,
) -> SituStatus {
    let t = match type_ref(t) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let rendered = CString::new(render_type(t)).expect("renderer emits no NUL");
    write_out(out, rendered.into_raw())
}

/// Renders a process in the canonical re-parseable syntax.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_process_render(
    p: *const SituProcess,
    out: *mut *mut c_char,
) -> SituStatus {
    let p = match process_ref(p) {
        Ok(p) => p,
        Err(status) => return status,
    };
    let rendered = CString::new(render_process(p)).expect("renderer emits no NUL");
    write_out(out, rendered.into_raw())
}

unsafe fn unary_type_op(
    t: *const SituType,
    out: *mut *mut SituType,
    op: impl Fn(&SessionTypeTerm) -> SessionTypeTerm,
) -> SituStatus {
    let t = match type_ref(t) {
        Ok(t) => t,
        Err(status) => return status,
    };
    write_out(out, boxed_type(op(t)))
}

/// Writes the normal form of `t` into a fresh handle.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_type_normalize(
    t: *const SituType,
    out: *mut *mut SituType,
) -> SituStatus {
    unary_type_op(t, out, |t| normalize(t).embed())
}

/// Writes the syntactic dual of `t` into a fresh handle.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_type_dual(
    t: *const SituType,
    out: *mut *mut SituType,
) -> SituStatus {
    unary_type_op(t, out, dual)
}

/// Writes the greatest lower bound of `t` and `s` into a fresh handle.
///
/// # Safety
/// `t` and `s` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_type_meet(
    t: *const SituType,
    s: *const SituType,
    out: *mut *mut SituType,
) -> SituStatus {
    let s = match type_ref(s) {
        Ok(s) => s,
        Err(status) => return status,
    };
    unary_type_op(t, out, |t| situ::normalize::meet(t, s).embed())
}

/// Writes the least upper bound of `t` and `s` into a fresh handle.
///
/// # Safety
/// `t` and `s` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_type_join(
    t: *const SituType,
    s: *const SituType,
    out: *mut *mut SituType,
) -> SituStatus {
    let s = match type_ref(s) {
        Ok(s) => s,
        Err(status) => return status,
    };
    unary_type_op(t, out, |t| situ::normalize::join(t, s).embed())
}

/// Writes whether `t` is semantically distinct from `Bot` and `Top`.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_type_viable(t: *const SituType, out: *mut bool) -> SituStatus {
    let t = match type_ref(t) {
        Ok(t) => t,
        Err(status) => return status,
    };
    write_out(out, viable(t))
}

/// Writes whether `t` is a subtype of `s`.
///
/// # Safety
/// `t` and `s` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_subtype(
    t: *const SituType,
    s: *const SituType,
    out: *mut bool,
) -> SituStatus {
    match (type_ref(t), type_ref(s)) {
        (Ok(t), Ok(s)) => write_out(out, subtype(t, s)),
        (Err(status), _) | (_, Err(status)) => status,
    }
}

/// Writes whether `t` and `s` are equivalent.
///
/// # Safety
/// `t` and `s` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_equivalent(
    t: *const SituType,
    s: *const SituType,
    out: *mut bool,
) -> SituStatus {
    match (type_ref(t), type_ref(s)) {
        (Ok(t), Ok(s)) => write_out(out, equivalent(t, s)),
        (Err(status), _) | (_, Err(status)) => status,
    }
}

/// Writes whether process `p` inhabits type `t`.
///
/// # Safety
/// `p` and `t` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_member(
    p: *const SituProcess,
    t: *const SituType,
    out: *mut bool,
) -> SituStatus {
    match (process_ref(p), type_ref(t)) {
        (Ok(p), Ok(t)) => write_out(out, member_type(p, t)),
        (Err(status), _) | (_, Err(status)) => status,
    }
}

/// Writes whether process `p` checks against type `t`.
///
/// # Safety
/// `t` and `p` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_check(
    t: *const SituType,
    p: *const SituProcess,
    out: *mut bool,
) -> SituStatus {
    match (type_ref(t), process_ref(p)) {
        (Ok(t), Ok(p)) => write_out(out, check(t, p)),
        (Err(status), _) | (_, Err(status)) => status,
    }
}

/// Writes whether `p` and `q` are orthogonal.
///
/// # Safety
/// `p` and `q` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn situ_orthogonal(
    p: *const SituProcess,
    q: *const SituProcess,
    out: *mut bool,
) -> SituStatus {
    let (p, q) = match (process_ref(p), process_ref(q)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    match orthogonal(p, q) {
        Ok(holds) => write_out(out, holds),
        Err(e) => fail(SituStatus::ExplorationLimit, e.to_string()),
    }
}

/// Searches for a test orthogonal to `p` but not to `q` up to `depth`.
/// On success writes whether the refinement holds up to the bound; when it
/// fails, `witness` (if non-null) receives the separating test.
///
/// # Safety
/// `p` and `q` must be live handles; `holds` must be writable; `witness`
/// may be null or writable.
#[no_mangle]
pub unsafe extern "C" fn situ_refines_bounded(
    p: *const SituProcess,
    q: *const SituProcess,
    depth: usize,
    holds: *mut bool,
    witness: *mut *mut SituProcess,
) -> SituStatus {
    let (p, q) = match (process_ref(p), process_ref(q)) {
        (Ok(p), Ok(q)) => (p, q),
        (Err(status), _) | (_, Err(status)) => return status,
    };
    let verdict = match refines_bounded(p, q, depth) {
        Ok(verdict) => verdict,
        Err(e @ OrthogonalityError::Limit(_)) => {
            return fail(SituStatus::LimitError, e.to_string())
        }
        Err(e) => return fail(SituStatus::ExplorationLimit, e.to_string()),
    };
    if !witness.is_null() {
        witness.write(match &verdict.counterexample {
            Some(test) => boxed_process(test.clone()),
            None => ptr::null_mut(),
        });
    }
    write_out(holds, verdict.holds_up_to_bound)
}

/// Parses a two-party global type and projects it onto `role`, writing the
/// projection into a fresh type handle.
///
/// # Safety
/// `global` and `role` must be valid NUL-terminated strings; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn situ_project(
    global: *const c_char,
    role: *const c_char,
    out: *mut *mut SituType,
) -> SituStatus {
    let global = match read_str(global) {
        Ok(text) => text,
        Err(status) => return status,
    };
    let role = match read_str(role) {
        Ok(text) => text,
        Err(status) => return status,
    };
    if !RoleName::is_valid(role) {
        return fail(SituStatus::RoleError, format!("invalid role name `{role}`"));
    }
    let parsed = match parse_global(global) {
        Ok(g) => g,
        Err(e @ GlobalParseError::Syntax(_)) => {
            return fail(SituStatus::SyntaxError, e.to_string())
        }
        Err(e) => return fail(SituStatus::RoleError, e.to_string()),
    };
    match project(&parsed, &RoleName::new(role)) {
        Ok(t) => write_out(out, boxed_type(t)),
        Err(e) => fail(SituStatus::ProjectionError, e.to_string()),
    }
}
