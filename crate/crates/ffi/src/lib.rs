//! C ABI over `compatlie`.
//!
//! Algebras cross the boundary as opaque `CompatlieAlgebra` handles. Every
//! fallible call returns a `CompatlieStatus`; on failure the message is kept
//! per thread and can be read with `compatlie_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use compatlie::algebra::{is_compatible, CompatAlgebra};
use compatlie::{derivations, families, io, structure, Error, Which};

/// Opaque handle to a compatible Lie algebra.
pub struct CompatlieAlgebra(CompatAlgebra);

/// Result codes. `Ok` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompatlieStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    UnknownName = 5,
    Parametric = 6,
    NotLie = 7,
    Internal = 99,
}

/// Selects one of the two brackets, or both for compatible derivations.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompatlieBracket {
    First = 1,
    Second = 2,
    Both = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> CompatlieStatus {
    match e {
        Error::Format { .. } | Error::Expression { .. } | Error::ZeroDenominator => {
            CompatlieStatus::Parse
        }
        Error::UnknownName(_) => CompatlieStatus::UnknownName,
        Error::Parametric | Error::MissingParameter(_) => CompatlieStatus::Parametric,
        Error::NotLie(_) => CompatlieStatus::NotLie,
        _ => CompatlieStatus::Invalid,
    }
}

fn guard(f: impl FnOnce() -> Result<(), CompatlieStatus>) -> CompatlieStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CompatlieStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            CompatlieStatus::Internal
        }
    }
}

fn lift<T>(r: compatlie::Result<T>) -> Result<T, CompatlieStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, CompatlieStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(CompatlieStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        CompatlieStatus::InvalidUtf8
    })
}

unsafe fn alg_arg<'a>(p: *const CompatlieAlgebra) -> Result<&'a CompatAlgebra, CompatlieStatus> {
    p.as_ref().map(|a| &a.0).ok_or_else(|| {
        set_error("null algebra handle");
        CompatlieStatus::NullPointer
    })
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), CompatlieStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(CompatlieStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

fn boxed(a: CompatAlgebra) -> *mut CompatlieAlgebra {
    Box::into_raw(Box::new(CompatlieAlgebra(a)))
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn compatlie_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses an algebra from its JSON file format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn compatlie_parse_json(
    json: *const c_char,
    out: *mut *mut CompatlieAlgebra,
) -> CompatlieStatus {
    guard(|| {
        let text = str_arg(json)?;
        let a = lift(io::parse_algebra(text))?;
        write_out(out, boxed(a))
    })
}

/// Builds a named family member, e.g. `("lr", "9")` or `("ls", "3,3")`.
///
/// # Safety
/// `name` and `arg` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn compatlie_from_family(
    name: *const c_char,
    arg: *const c_char,
    out: *mut *mut CompatlieAlgebra,
) -> CompatlieStatus {
    guard(|| {
        let name = str_arg(name)?;
        let arg = str_arg(arg)?;
        let a = lift(families::make_family(name, arg))?;
        write_out(out, boxed(a))
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `a` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn compatlie_free(a: *mut CompatlieAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension of the underlying space.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn compatlie_dimension(
    a: *const CompatlieAlgebra,
    out: *mut usize,
) -> CompatlieStatus {
    guard(|| write_out(out, alg_arg(a)?.dim()))
}

/// Writes 1 if every combination of the two brackets is a Lie bracket.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn compatlie_check_compatibility(
    a: *const CompatlieAlgebra,
    out: *mut i32,
) -> CompatlieStatus {
    guard(|| write_out(out, is_compatible(alg_arg(a)?) as i32))
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn compatlie_is_nilpotent(
    a: *const CompatlieAlgebra,
    out: *mut i32,
) -> CompatlieStatus {
    guard(|| {
        let v = lift(structure::is_nilpotent(alg_arg(a)?))?;
        write_out(out, v as i32)
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn compatlie_is_solvable(
    a: *const CompatlieAlgebra,
    out: *mut i32,
) -> CompatlieStatus {
    guard(|| {
        let v = lift(structure::is_solvable(alg_arg(a)?))?;
        write_out(out, v as i32)
    })
}

/// Dimension of the derivation algebra of one bracket, or of the common
/// derivations when `which` is `Both`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn compatlie_derivation_dim(
    a: *const CompatlieAlgebra,
    which: CompatlieBracket,
    out: *mut usize,
) -> CompatlieStatus {
    guard(|| {
        let a = alg_arg(a)?;
        let space = match which {
            CompatlieBracket::First => derivations::derivation_space(a.bracket(Which::First)),
            CompatlieBracket::Second => derivations::derivation_space(a.bracket(Which::Second)),
            CompatlieBracket::Both => derivations::compat_derivation_space(a),
        };
        write_out(out, lift(space)?.dim())
    })
}

/// Serializes to the JSON file format. Free the result with
/// `compatlie_string_free`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn compatlie_to_json(
    a: *const CompatlieAlgebra,
    out: *mut *mut c_char,
) -> CompatlieStatus {
    guard(|| {
        let text = io::serialize_algebra(alg_arg(a)?);
        let c = CString::new(text).map_err(|_| {
            set_error("serialized text contains NUL");
            CompatlieStatus::Internal
        })?;
        write_out(out, c.into_raw())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn compatlie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
