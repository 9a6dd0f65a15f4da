//! C ABI over `parmon`.
//!
//! Monoids are opaque `PmMonoid` handles released with `pm_monoid_free`.
//! Every fallible call returns a `PmStatus` and writes its result through an
//! out-pointer; on failure `pm_last_error_message` describes the error.
//! Strings returned to the caller are released with `pm_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use parmon::confluence::is_confluent;
use parmon::monoid::{
    gen_disjoint_union_monoid, gen_no_common_letters_monoid, parse_monoid_with, serialize_monoid,
};
use parmon::rewriting::lstd;
use parmon::star::star;
use parmon::words::parse_word;
use parmon::{Error, Limits, PartialMonoid};

/// A parsed multiplication table.
pub struct PmMonoid {
    inner: PartialMonoid,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The table text is malformed.
    Parse = 3,
    /// A word names an element not in the carrier.
    UnknownElement = 4,
    /// An operand of `pm_star` is not irreducible.
    NotIrreducible = 5,
    /// A size cap was exceeded.
    Limit = 6,
    InvalidArgument = 7,
    /// A Rust panic was caught at the boundary.
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PmStatus {
    match e {
        Error::UnknownElement { line: None, .. } => PmStatus::UnknownElement,
        Error::NotIrreducible(_) => PmStatus::NotIrreducible,
        Error::CarrierCap { .. } | Error::GeneratorCap { .. } | Error::EnumerationCap { .. } => {
            PmStatus::Limit
        }
        Error::InvalidLetter(_) => PmStatus::InvalidArgument,
        _ => PmStatus::Parse,
    }
}

struct FfiError {
    status: PmStatus,
    message: String,
}

impl From<Error> for FfiError {
    fn from(e: Error) -> Self {
        FfiError {
            status: status_of(&e),
            message: e.to_string(),
        }
    }
}

type FfiResult<T> = Result<T, FfiError>;

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> PmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PmStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(&e.message);
            e.status
        }
        Err(_) => {
            set_error("internal panic");
            PmStatus::Panic
        }
    }
}

fn null(what: &str) -> FfiError {
    FfiError {
        status: PmStatus::NullPointer,
        message: format!("null pointer: {what}"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| FfiError {
        status: PmStatus::InvalidUtf8,
        message: format!("{what} is not valid UTF-8"),
    })
}

unsafe fn monoid_arg<'a>(m: *const PmMonoid) -> FfiResult<&'a PartialMonoid> {
    m.as_ref().map(|m| &m.inner).ok_or_else(|| null("monoid"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("rendered words contain no NUL")
        .into_raw()
}

fn boxed(m: PartialMonoid) -> *mut PmMonoid {
    Box::into_raw(Box::new(PmMonoid { inner: m }))
}

/// Parses a table. On success `*out` owns a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pm_monoid_parse(text: *const c_char, out: *mut *mut PmMonoid) -> PmStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let m = parse_monoid_with(text, &Limits::from_env())?;
        write_out(out, boxed(m))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pm_monoid_free(m: *mut PmMonoid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Number of elements, identity included; 0 for null.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pm_monoid_size(m: *const PmMonoid) -> usize {
    m.as_ref().map_or(0, |m| m.inner.len())
}

/// Whether the table satisfies the partial monoid axiom.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pm_monoid_validate(m: *const PmMonoid, out: *mut bool) -> PmStatus {
    guard(|| write_out(out, monoid_arg(m)?.validate().valid))
}

/// Whether the rewriting system is confluent.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pm_monoid_is_confluent(m: *const PmMonoid, out: *mut bool) -> PmStatus {
    guard(|| write_out(out, is_confluent(monoid_arg(m)?).confluent))
}

/// Whether the monoid is catenary.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pm_monoid_is_catenary(m: *const PmMonoid, out: *mut bool) -> PmStatus {
    guard(|| write_out(out, monoid_arg(m)?.is_catenary().catenary))
}

/// The table in canonical text form.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pm_monoid_serialize(
    m: *const PmMonoid,
    out: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let text = serialize_monoid(monoid_arg(m)?);
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, into_c_string(text))
    })
}

/// Left-standard normal form of a space-separated word, rendered with
/// spaces (`eps` for the empty word).
///
/// # Safety
/// `m` must be a live handle, `word` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pm_normalize(
    m: *const PmMonoid,
    word: *const c_char,
    out: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let m = monoid_arg(m)?;
        let w = parse_word(m, str_arg(word, "word")?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, into_c_string(lstd(m, &w).render_plain(m)))
    })
}

/// `u ⋆ v` for irreducible words, rendered like `pm_normalize`.
///
/// # Safety
/// `m` must be a live handle, `u` and `v` NUL-terminated, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pm_star(
    m: *const PmMonoid,
    u: *const c_char,
    v: *const c_char,
    out: *mut *mut c_char,
) -> PmStatus {
    guard(|| {
        let m = monoid_arg(m)?;
        let u = parse_word(m, str_arg(u, "u")?)?;
        let v = parse_word(m, str_arg(v, "v")?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_out(out, into_c_string(star(m, &u, &v)?.render_plain(m)))
    })
}

/// Words over `letters` with pairwise distinct letters.
///
/// # Safety
/// `letters` must be NUL-terminated and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn pm_gen_no_common_letters(
    letters: *const c_char,
    out: *mut *mut PmMonoid,
) -> PmStatus {
    guard(|| {
        let letters: Vec<char> = str_arg(letters, "letters")?.chars().collect();
        if out.is_null() {
            return Err(null("out"));
        }
        let m = gen_no_common_letters_monoid(&letters, &Limits::from_env())?;
        write_out(out, boxed(m))
    })
}

/// Subsets of an `n`-element set under disjoint union.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pm_gen_disjoint_union(n: u32, out: *mut *mut PmMonoid) -> PmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = gen_disjoint_union_monoid(n as usize, &Limits::from_env())?;
        write_out(out, boxed(m))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
