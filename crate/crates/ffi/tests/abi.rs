use std::ffi::{CStr, CString};
use std::ptr;

use rootlat_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn system(label: &str) -> *mut RlSystem {
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { rl_system_new(c(label).as_ptr(), &mut sys) }, RlStatus::Ok);
    sys
}

fn set(sys: *const RlSystem, lit: &str) -> *mut RlSet {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { rl_set_parse(sys, c(lit).as_ptr(), &mut s) }, RlStatus::Ok);
    s
}

fn literal(sys: *const RlSystem, s: *const RlSet) -> String {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { rl_set_to_literal(sys, s, &mut p) }, RlStatus::Ok);
    let out = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { rl_string_free(p) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(rl_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn system_sizes() {
    let sys = system("B3");
    let (mut rank, mut roots) = (0, 0);
    assert_eq!(unsafe { rl_system_sizes(sys, &mut rank, &mut roots) }, RlStatus::Ok);
    assert_eq!((rank, roots), (3, 18));
    unsafe { rl_system_free(sys) };
}

#[test]
fn error_codes() {
    let mut sys = ptr::null_mut();
    assert_eq!(unsafe { rl_system_new(c("Q7").as_ptr(), &mut sys) }, RlStatus::Config);
    assert!(sys.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { rl_system_new(ptr::null(), &mut sys) }, RlStatus::NullArgument);
    assert!(last_error().contains("label"));

    let h3 = system("H3");
    let s = set(h3, "+[1,0,0]");
    let mut closed = ptr::null_mut();
    assert_eq!(unsafe { rl_set_closure(h3, s, &mut closed) }, RlStatus::Unsupported);

    let a2 = system("A2");
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { rl_set_parse(a2, c("+[1,1,1]").as_ptr(), &mut bad) }, RlStatus::Parse);
    let t = set(a2, "+[1,0]");
    let mut le = false;
    assert_eq!(unsafe { rl_weak_le(s, t, &mut le) }, RlStatus::MixedSystems);
    unsafe {
        rl_set_free(s);
        rl_set_free(t);
        rl_system_free(h3);
        rl_system_free(a2);
    }
}

#[test]
fn order_and_closure() {
    let sys = system("A2");
    let a = set(sys, "+[1,0],+[0,1]");
    let mut cl = ptr::null_mut();
    assert_eq!(unsafe { rl_set_closure(sys, a, &mut cl) }, RlStatus::Ok);
    assert_eq!(literal(sys, cl), literal(sys, set(sys, "+[1,0],+[0,1],+[1,1]")));

    let empty = set(sys, "");
    let mut le = false;
    assert_eq!(unsafe { rl_weak_le(cl, empty, &mut le) }, RlStatus::Ok);
    assert!(le);
    assert_eq!(unsafe { rl_weak_le(empty, cl, &mut le) }, RlStatus::Ok);
    assert!(!le);

    let (p, q) = (set(sys, "+[1,0]"), set(sys, "+[0,1]"));
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { rl_lattice_op(sys, RlLevel::Posets, true, p, q, &mut m) }, RlStatus::Ok);
    let mut poset = false;
    assert_eq!(unsafe { rl_set_in_level(sys, m, RlLevel::Posets, &mut poset) }, RlStatus::Ok);
    assert!(poset);
    unsafe {
        for s in [a, cl, empty, p, q, m] {
            rl_set_free(s);
        }
        rl_system_free(sys);
    }
}

#[test]
fn families_and_counts() {
    let sys = system("A3");
    let mut fam = ptr::null_mut();
    assert_eq!(unsafe { rl_family_build(sys, c("coip").as_ptr(), c("bip").as_ptr(), &mut fam) }, RlStatus::Ok);
    let mut len = 0;
    assert_eq!(unsafe { rl_family_len(fam, &mut len) }, RlStatus::Ok);
    assert_eq!(len, 70);
    let mut member = ptr::null_mut();
    assert_eq!(unsafe { rl_family_get(fam, 0, &mut member) }, RlStatus::Ok);
    let mut poset = false;
    assert_eq!(unsafe { rl_set_in_level(sys, member, RlLevel::Posets, &mut poset) }, RlStatus::Ok);
    assert!(poset);
    assert_eq!(unsafe { rl_family_get(fam, len, &mut member) }, RlStatus::Contract);

    let mut n = 0u64;
    assert_eq!(unsafe { rl_census_count(sys, c("posets").as_ptr(), ptr::null(), &mut n) }, RlStatus::Ok);
    assert_eq!(n, 219);
    assert_eq!(unsafe { rl_census_count(sys, c("coip").as_ptr(), c("lin").as_ptr(), &mut n) }, RlStatus::Ok);
    assert_eq!(n, 68);
    unsafe {
        rl_set_free(member);
        rl_family_free(fam);
        rl_system_free(sys);
    }
}

#[test]
fn header_declares_api() {
    let header = include_str!("../include/rootlat.h");
    for name in
        ["rl_system_new", "rl_set_parse", "rl_lattice_op", "rl_family_build", "rl_census_count", "rl_last_error"]
    {
        assert!(header.contains(name), "{name} missing from header");
    }
    assert!(header.contains("typedef struct RlSystem RlSystem"));
    assert!(header.contains("RL_STATUS_RESOURCE"));
}
