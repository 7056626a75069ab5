//! C interface to `lrcone`.
//!
//! Objects are opaque handles created by `*_new` and released by `*_free`.
//! Every fallible call returns an [`LrcStatus`]; on failure a description is
//! available from [`lrc_last_error`] on the same thread. Panics never cross
//! the boundary.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use lrcone::eigencone::{self, DominantSpectrum, EigenconeInequality};
use lrcone::{Classifier, Error, GlWeight, GroupType, LrClass, WeightTriple};
use num::BigRational;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LrcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    Internal = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LrcGroup {
    A = 0,
    B = 1,
    C = 2,
}

/// Verdict of `lrc_classify`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LrcVerdict {
    Zero = 0,
    One = 1,
    AtLeastTwo = 2,
}

/// Memoizing classifier; safe to share between threads.
pub struct LrcClassifier {
    inner: Classifier,
}

/// An inequality list of one group and rank.
pub struct LrcFacetList {
    group: GroupType,
    rank: usize,
    facets: Vec<EigenconeInequality>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> LrcStatus {
    match e {
        Error::LengthMismatch { .. } => LrcStatus::LengthMismatch,
        Error::Internal(_) | Error::LpInfeasible(_) | Error::Overflow => LrcStatus::Internal,
        _ => LrcStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), LrcStatus>) -> LrcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LrcStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(msg);
            LrcStatus::Panic
        }
    }
}

fn fail(e: Error) -> LrcStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> LrcStatus {
    set_error(format!("{what} is null"));
    LrcStatus::NullPointer
}

unsafe fn read<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], LrcStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn triple(n: usize, lam: *const i64, mu: *const i64, nu: *const i64) -> Result<WeightTriple, LrcStatus> {
    let mut parts = Vec::with_capacity(3);
    for (p, name) in [(lam, "lam"), (mu, "mu"), (nu, "nu")] {
        let v = read(p, n, name)?;
        parts.push(GlWeight::new(v.to_vec()).map_err(fail)?);
    }
    let nu = parts.pop().expect("three weights");
    let mu = parts.pop().expect("three weights");
    let lam = parts.pop().expect("three weights");
    WeightTriple::new(lam, mu, nu).map_err(fail)
}

fn group_type(g: LrcGroup) -> GroupType {
    match g {
        LrcGroup::A => GroupType::A,
        LrcGroup::B => GroupType::B,
        LrcGroup::C => GroupType::C,
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn lrc_status_message(status: LrcStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        LrcStatus::Ok => b"ok\0",
        LrcStatus::NullPointer => b"null pointer argument\0",
        LrcStatus::InvalidArgument => b"invalid argument\0",
        LrcStatus::LengthMismatch => b"length mismatch\0",
        LrcStatus::Internal => b"internal error\0",
        LrcStatus::Panic => b"panic inside the library\0",
    };
    s.as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn lrc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// New classifier using `seed` and `trials` for its dense-orbit sampler.
#[no_mangle]
pub extern "C" fn lrc_classifier_new(seed: u64, trials: u32) -> *mut LrcClassifier {
    Box::into_raw(Box::new(LrcClassifier {
        inner: Classifier::new(seed, trials),
    }))
}

#[no_mangle]
pub unsafe extern "C" fn lrc_classifier_free(classifier: *mut LrcClassifier) {
    if !classifier.is_null() {
        drop(Box::from_raw(classifier));
    }
}

/// Decides whether the triple coefficient of three dominant weights of
/// length `n` is 0, 1 or at least 2.
#[no_mangle]
pub unsafe extern "C" fn lrc_classify(
    classifier: *const LrcClassifier,
    n: usize,
    lam: *const i64,
    mu: *const i64,
    nu: *const i64,
    verdict_out: *mut LrcVerdict,
) -> LrcStatus {
    guard(|| {
        let c = classifier.as_ref().ok_or_else(|| null("classifier"))?;
        if verdict_out.is_null() {
            return Err(null("verdict_out"));
        }
        let t = triple(n, lam, mu, nu)?;
        let v = c.inner.verdict(&t).map_err(fail)?;
        *verdict_out = match v {
            LrClass::Zero => LrcVerdict::Zero,
            LrClass::One => LrcVerdict::One,
            LrClass::AtLeastTwo => LrcVerdict::AtLeastTwo,
        };
        Ok(())
    })
}

/// Exact triple coefficient.
#[no_mangle]
pub unsafe extern "C" fn lrc_triple_coefficient(
    n: usize,
    lam: *const i64,
    mu: *const i64,
    nu: *const i64,
    value_out: *mut u64,
) -> LrcStatus {
    guard(|| {
        if value_out.is_null() {
            return Err(null("value_out"));
        }
        let t = triple(n, lam, mu, nu)?;
        *value_out = lrcone::triple_coefficient(&t).map_err(fail)?;
        Ok(())
    })
}

/// Computes the inequality list of `group` in rank `rank`.
#[no_mangle]
pub unsafe extern "C" fn lrc_facets_new(
    classifier: *const LrcClassifier,
    group: LrcGroup,
    rank: usize,
    list_out: *mut *mut LrcFacetList,
) -> LrcStatus {
    guard(|| {
        let c = classifier.as_ref().ok_or_else(|| null("classifier"))?;
        if list_out.is_null() {
            return Err(null("list_out"));
        }
        let g = group_type(group);
        let facets = eigencone::facets(g, rank, &c.inner).map_err(fail)?;
        *list_out = Box::into_raw(Box::new(LrcFacetList { group: g, rank, facets }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn lrc_facets_free(list: *mut LrcFacetList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Number of inequalities, 0 for a null list.
#[no_mangle]
pub unsafe extern "C" fn lrc_facets_len(list: *const LrcFacetList) -> usize {
    list.as_ref().map_or(0, |l| l.facets.len())
}

/// Copies inequality `index`: its subset size to `r_out` and its
/// coefficients to `coeffs_out`, which must hold `3 * rank` entries laid out
/// as ξ, ζ, η blocks.
#[no_mangle]
pub unsafe extern "C" fn lrc_facets_get(
    list: *const LrcFacetList,
    index: usize,
    r_out: *mut usize,
    coeffs_out: *mut i64,
    coeffs_len: usize,
) -> LrcStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        if r_out.is_null() || coeffs_out.is_null() {
            return Err(null("output buffer"));
        }
        let f = l.facets.get(index).ok_or_else(|| {
            set_error(format!("index {index} out of range (len {})", l.facets.len()));
            LrcStatus::InvalidArgument
        })?;
        if coeffs_len != 3 * l.rank {
            return Err(fail(Error::LengthMismatch { expected: 3 * l.rank, got: coeffs_len }));
        }
        let out = slice::from_raw_parts_mut(coeffs_out, coeffs_len);
        for (dst, src) in out.iter_mut().zip(f.coeffs.iter().flatten()) {
            *dst = *src;
        }
        *r_out = f.r;
        Ok(())
    })
}

/// Membership of `(ξ, ζ, η)` given as `3 * rank` fractions `num[k] / den[k]`.
#[no_mangle]
pub unsafe extern "C" fn lrc_eigencone_member(
    list: *const LrcFacetList,
    num: *const i64,
    den: *const i64,
    len: usize,
    member_out: *mut bool,
) -> LrcStatus {
    guard(|| {
        let l = list.as_ref().ok_or_else(|| null("list"))?;
        if member_out.is_null() {
            return Err(null("member_out"));
        }
        if len != 3 * l.rank {
            return Err(fail(Error::LengthMismatch { expected: 3 * l.rank, got: len }));
        }
        let num = read(num, len, "num")?;
        let den = read(den, len, "den")?;
        if den.contains(&0) {
            return Err(fail(Error::Parse("zero denominator".into())));
        }
        let values: Vec<BigRational> = num
            .iter()
            .zip(den)
            .map(|(&p, &q)| BigRational::new(p.into(), q.into()))
            .collect();
        let mut spectra = Vec::with_capacity(3);
        for chunk in values.chunks(l.rank.max(1)) {
            spectra.push(DominantSpectrum::new(l.group, chunk.to_vec()).map_err(fail)?);
        }
        *member_out = eigencone::member([&spectra[0], &spectra[1], &spectra[2]], l.group, l.rank, &l.facets)
            .map_err(fail)?;
        Ok(())
    })
}
