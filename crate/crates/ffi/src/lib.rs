//! C ABI over `rootlat`.
//!
//! Every function returns an [`RlStatus`]; results come back through out
//! pointers. Handles are opaque and must be released with the matching
//! `*_free`. Strings returned by the library are freed with
//! [`rl_string_free`]. After a failure, [`rl_last_error`] describes it on
//! the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rootlat::census::{self, CensusFamily};
use rootlat::families::{FamilyContext, FamilyTag};
use rootlat::weakorder::{self, Dir, Level};
use rootlat::{Error, RootSet, RootSystem};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlStatus {
    Ok = 0,
    NullArgument = 1,
    Config = 2,
    Parse = 3,
    Unsupported = 4,
    Contract = 5,
    MixedSystems = 6,
    Resource = 7,
    Invariant = 8,
    NoCharacterization = 9,
    Io = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RlLevel {
    All = 0,
    Antisym = 1,
    Semiclosed = 2,
    Closed = 3,
    Posets = 4,
}

impl From<RlLevel> for Level {
    fn from(l: RlLevel) -> Self {
        match l {
            RlLevel::All => Level::All,
            RlLevel::Antisym => Level::Antisym,
            RlLevel::Semiclosed => Level::Semiclosed,
            RlLevel::Closed => Level::Closed,
            RlLevel::Posets => Level::Posets,
        }
    }
}

/// A root system.
pub struct RlSystem(RootSystem);

/// A subset of the roots of one system.
pub struct RlSet(RootSet);

/// A family of subsets in canonical order.
pub struct RlFamily(Vec<RootSet>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RlStatus {
    match e {
        Error::Config(_) => RlStatus::Config,
        Error::Parse(_) => RlStatus::Parse,
        Error::Unsupported(_) => RlStatus::Unsupported,
        Error::Contract(_) => RlStatus::Contract,
        Error::MixedSystems => RlStatus::MixedSystems,
        Error::Resource(_) => RlStatus::Resource,
        Error::Invariant(_) => RlStatus::Invariant,
        Error::NoCharacterization(_) => RlStatus::NoCharacterization,
        Error::Io(_) => RlStatus::Io,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RlStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_last_error(format!("null pointer passed for `{what}`"));
            RlStatus::NullArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic".into());
            RlStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Lib(Error::Parse(format!("`{what}` is not valid UTF-8"))))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failure on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn rl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn rl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a root system from a label such as `"B3"`.
///
/// # Safety
/// `label` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rl_system_new(label: *const c_char, out_system: *mut *mut RlSystem) -> RlStatus {
    guard(|| {
        let slot = out(out_system, "out_system")?;
        let rs = RootSystem::parse(text(label, "label")?)?;
        *slot = Box::into_raw(Box::new(RlSystem(rs)));
        Ok(())
    })
}

/// # Safety
/// `system` must come from [`rl_system_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn rl_system_free(system: *mut RlSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// # Safety
/// `system` must be a live handle; `rank` and `roots` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rl_system_sizes(system: *const RlSystem, rank: *mut usize, roots: *mut usize) -> RlStatus {
    guard(|| {
        let rs = &deref(system, "system")?.0;
        *out(rank, "rank")? = rs.rank();
        *out(roots, "roots")? = rs.num_roots();
        Ok(())
    })
}

/// Parses a set literal such as `"+[1,1],-[0,1]"`.
///
/// # Safety
/// Pointers must be valid; `literal` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn rl_set_parse(
    system: *const RlSystem,
    literal: *const c_char,
    out_set: *mut *mut RlSet,
) -> RlStatus {
    guard(|| {
        let rs = &deref(system, "system")?.0;
        let slot = out(out_set, "out_set")?;
        let r = RootSet::parse(rs, text(literal, "literal")?)?;
        *slot = Box::into_raw(Box::new(RlSet(r)));
        Ok(())
    })
}

/// # Safety
/// `set` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn rl_set_free(set: *mut RlSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Canonical literal of `set`; free with [`rl_string_free`].
///
/// # Safety
/// Pointers must be valid and `set` must belong to `system`.
#[no_mangle]
pub unsafe extern "C" fn rl_set_to_literal(
    system: *const RlSystem,
    set: *const RlSet,
    out_literal: *mut *mut c_char,
) -> RlStatus {
    guard(|| {
        let rs = &deref(system, "system")?.0;
        let r = deref(set, "set")?.0;
        let slot = out(out_literal, "out_literal")?;
        r.same_system(RootSet::empty(rs))?;
        *slot = into_c_string(r.to_literal(rs));
        Ok(())
    })
}

/// Whether `set` lies in `level`.
///
/// # Safety
/// Pointers must be valid and `set` must belong to `system`.
#[no_mangle]
pub unsafe extern "C" fn rl_set_in_level(
    system: *const RlSystem,
    set: *const RlSet,
    level: RlLevel,
    result: *mut bool,
) -> RlStatus {
    guard(|| {
        let rs = &deref(system, "system")?.0;
        let r = deref(set, "set")?.0;
        r.same_system(RootSet::empty(rs))?;
        *out(result, "result")? = Level::from(level).contains(rs, r);
        Ok(())
    })
}

/// Closure of `set`; crystallographic systems only.
///
/// # Safety
/// Pointers must be valid and `set` must belong to `system`.
#[no_mangle]
pub unsafe extern "C" fn rl_set_closure(
    system: *const RlSystem,
    set: *const RlSet,
    out_set: *mut *mut RlSet,
) -> RlStatus {
    guard(|| {
        let rs = &deref(system, "system")?.0;
        let r = deref(set, "set")?.0;
        let slot = out(out_set, "out_set")?;
        r.same_system(RootSet::empty(rs))?;
        *slot = Box::into_raw(Box::new(RlSet(r.closure(rs)?)));
        Ok(())
    })
}

/// `left ⩽ right` in the weak order.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rl_weak_le(left: *const RlSet, right: *const RlSet, result: *mut bool) -> RlStatus {
    guard(|| {
        let (r, s) = (deref(left, "left")?.0, deref(right, "right")?.0);
        *out(result, "result")? = weakorder::weak_le(r, s)?;
        Ok(())
    })
}

/// Meet (`join = false`) or join (`join = true`) at `level`.
///
/// # Safety
/// Pointers must be valid and both sets must belong to `system`.
#[no_mangle]
pub unsafe extern "C" fn rl_lattice_op(
    system: *const RlSystem,
    level: RlLevel,
    join: bool,
    left: *const RlSet,
    right: *const RlSet,
    out_set: *mut *mut RlSet,
) -> RlStatus {
    guard(|| {
        let rs = &deref(system, "system")?.0;
        let (r, s) = (deref(left, "left")?.0, deref(right, "right")?.0);
        let slot = out(out_set, "out_set")?;
        let dir = if join { Dir::Join } else { Dir::Meet };
        let m = weakorder::lattice_op(rs, level.into(), dir, r, s)?;
        *slot = Box::into_raw(Box::new(RlSet(m)));
        Ok(())
    })
}

/// Constructs a family by tag (`"woip"`, `"coep"`, ...). `coxeter` may be
/// null for the linear element.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn rl_family_build(
    system: *const RlSystem,
    tag: *const c_char,
    coxeter: *const c_char,
    out_family: *mut *mut RlFamily,
) -> RlStatus {
    guard(|| {
        let rs = &deref(system, "system")?.0;
        let slot = out(out_family, "out_family")?;
        let tag: FamilyTag = text(tag, "tag")?.parse()?;
        let coxeter = if coxeter.is_null() { "lin" } else { text(coxeter, "coxeter")? };
        let cx = FamilyContext::new(rs, coxeter)?;
        let family = weakorder::canonical(&cx.construct(tag)?);
        *slot = Box::into_raw(Box::new(RlFamily(family)));
        Ok(())
    })
}

/// # Safety
/// `family` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn rl_family_free(family: *mut RlFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rl_family_len(family: *const RlFamily, len: *mut usize) -> RlStatus {
    guard(|| {
        *out(len, "len")? = deref(family, "family")?.0.len();
        Ok(())
    })
}

/// Copy of member `index`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rl_family_get(family: *const RlFamily, index: usize, out_set: *mut *mut RlSet) -> RlStatus {
    guard(|| {
        let f = &deref(family, "family")?.0;
        let slot = out(out_set, "out_set")?;
        let r = *f
            .get(index)
            .ok_or_else(|| Error::Contract(format!("index {index} out of range for {} members", f.len())))?;
        *slot = Box::into_raw(Box::new(RlSet(r)));
        Ok(())
    })
}

/// Size of a level or family (`"posets"`, `"closed"`, `"coip"`, ...).
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated; `coxeter` may be null.
#[no_mangle]
pub unsafe extern "C" fn rl_census_count(
    system: *const RlSystem,
    family: *const c_char,
    coxeter: *const c_char,
    count: *mut u64,
) -> RlStatus {
    guard(|| {
        let rs = &deref(system, "system")?.0;
        let slot = out(count, "count")?;
        let family: CensusFamily = text(family, "family")?.parse()?;
        let coxeter = if coxeter.is_null() { "lin" } else { text(coxeter, "coxeter")? };
        let res = census::count_family(rs, &family, coxeter)?;
        *slot = u64::try_from(res.count).map_err(|_| Error::Resource("count exceeds 64 bits".into()))?;
        Ok(())
    })
}
