//! C ABI for the dpcy library.
//!
//! Ideals live behind the opaque `DpcyIdeal` handle and are always over a
//! prime field. Every fallible call returns a `DpcyStatus`; on failure the
//! message is available from `dpcy_last_error`. Strings handed out by the
//! library are freed with `dpcy_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dpcy::cli::{run_case, Registry, RunOptions, Status};
use dpcy::delpezzo::{construct_surface, count_nodes, project_surface, ProjectionSpec, SurfaceKind, SurfaceRecipe};
use dpcy::idealops::{Ideal, IdealJson, Seed};
use dpcy::invariants::{betti_table, dimension_degree, generator_census, hilbert_function};
use dpcy::polyring::PrimeField;
use dpcy::Error;

/// Opaque ideal handle.
pub struct DpcyIdeal {
    inner: Ideal<PrimeField>,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpcyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Degenerate = 5,
    UnknownCase = 6,
    Unsupported = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpcySurface {
    D6 = 0,
    D7 = 1,
    D8 = 2,
    F1 = 3,
}

impl From<DpcySurface> for SurfaceKind {
    fn from(s: DpcySurface) -> Self {
        match s {
            DpcySurface::D6 => SurfaceKind::D6,
            DpcySurface::D7 => SurfaceKind::D7,
            DpcySurface::D8 => SurfaceKind::D8,
            DpcySurface::F1 => SurfaceKind::F1,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DpcyStatus {
    match e {
        Error::Parse { .. } | Error::UnknownVariable(_) | Error::Json(_) => DpcyStatus::Parse,
        Error::Degenerate { .. } => DpcyStatus::Degenerate,
        Error::UnknownCase(_) => DpcyStatus::UnknownCase,
        Error::NotHomogeneous(_) => DpcyStatus::Unsupported,
        _ => DpcyStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and containing panics.
fn guard(f: impl FnOnce() -> Result<(), (DpcyStatus, String)>) -> DpcyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            DpcyStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DpcyStatus::Panic
        }
    }
}

fn lib<T>(r: dpcy::Result<T>) -> Result<T, (DpcyStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (DpcyStatus, String) {
    (DpcyStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DpcyStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    // SAFETY: the caller passes a NUL-terminated string.
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| (DpcyStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ideal_ref<'a>(p: *const DpcyIdeal) -> Result<&'a DpcyIdeal, (DpcyStatus, String)> {
    // SAFETY: non-null handles come from this library and are still live.
    unsafe { p.as_ref() }.ok_or_else(|| null("ideal"))
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), (DpcyStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|e| (DpcyStatus::InvalidInput, e.to_string()))?;
    // SAFETY: checked non-null above.
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn give_ideal(ideal: Ideal<PrimeField>, out: *mut *mut DpcyIdeal) -> Result<(), (DpcyStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: checked non-null above.
    unsafe { *out = Box::into_raw(Box::new(DpcyIdeal { inner: ideal })) };
    Ok(())
}

fn field(prime: u32) -> Result<PrimeField, (DpcyStatus, String)> {
    lib(PrimeField::new(prime))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dpcy_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn dpcy_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpcy_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: per the contract above.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `ideal` must be NULL or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dpcy_ideal_free(ideal: *mut DpcyIdeal) {
    if !ideal.is_null() {
        // SAFETY: per the contract above.
        drop(unsafe { Box::from_raw(ideal) });
    }
}

/// Parses `{"ring": {"vars": [...], "char": p}, "gens": [...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dpcy_ideal_from_json(json: *const c_char, out: *mut *mut DpcyIdeal) -> DpcyStatus {
    guard(|| {
        let text = unsafe { read_str(json, "json") }?;
        let parsed: IdealJson = lib(serde_json::from_str(text).map_err(Error::from))?;
        let f = field(
            parsed
                .ring
                .char
                .try_into()
                .map_err(|_| (DpcyStatus::Unsupported, "only prime fields below 2^31 are supported".to_string()))?,
        )?;
        give_ideal(lib(Ideal::from_json(&parsed, f))?, out)
    })
}

/// The anticanonical model of a del Pezzo surface, projected `projections`
/// times from general points.
///
/// # Safety
/// `out` must be a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dpcy_surface_new(
    surface: DpcySurface,
    projections: usize,
    seed: u64,
    prime: u32,
    out: *mut *mut DpcyIdeal,
) -> DpcyStatus {
    guard(|| {
        let f = field(prime)?;
        let recipe = SurfaceRecipe::new(surface.into(), Seed(seed));
        let ideal = if projections == 0 {
            lib(construct_surface(recipe, &f))?.value
        } else {
            lib(project_surface(ProjectionSpec { recipe, times: projections, seed: Seed(seed) }, &f))?.value
        };
        give_ideal(ideal, out)
    })
}

/// # Safety
/// `ideal` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dpcy_ideal_to_json(ideal: *const DpcyIdeal, out: *mut *mut c_char) -> DpcyStatus {
    guard(|| {
        let i = unsafe { ideal_ref(ideal) }?;
        give_string(lib(serde_json::to_string(&i.inner.to_json()).map_err(Error::from))?, out)
    })
}

/// Number of variables of the ambient ring.
///
/// # Safety
/// `ideal` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dpcy_ideal_nvars(ideal: *const DpcyIdeal, out: *mut usize) -> DpcyStatus {
    guard(|| {
        let i = unsafe { ideal_ref(ideal) }?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("output pointer"))?;
        *out = i.inner.ring().nvars();
        Ok(())
    })
}

/// Minimal generator counts as a JSON object `{"degree": count}`.
///
/// # Safety
/// `ideal` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dpcy_ideal_census(ideal: *const DpcyIdeal, out: *mut *mut c_char) -> DpcyStatus {
    guard(|| {
        let i = unsafe { ideal_ref(ideal) }?;
        let c = lib(generator_census(&i.inner))?;
        give_string(lib(serde_json::to_string(&c).map_err(Error::from))?, out)
    })
}

/// Number of minimal generators of degree `degree`.
///
/// # Safety
/// `ideal` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dpcy_ideal_generator_count(
    ideal: *const DpcyIdeal,
    degree: u32,
    out: *mut usize,
) -> DpcyStatus {
    guard(|| {
        let i = unsafe { ideal_ref(ideal) }?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("output pointer"))?;
        *out = lib(generator_census(&i.inner))?.get(degree);
        Ok(())
    })
}

/// Projective dimension and degree of the zero set.
///
/// # Safety
/// `ideal` must be a live handle; `dim` and `degree` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn dpcy_ideal_dimension_degree(
    ideal: *const DpcyIdeal,
    dim: *mut i64,
    degree: *mut i64,
) -> DpcyStatus {
    guard(|| {
        let i = unsafe { ideal_ref(ideal) }?;
        let dim = unsafe { dim.as_mut() }.ok_or_else(|| null("dim"))?;
        let degree = unsafe { degree.as_mut() }.ok_or_else(|| null("degree"))?;
        (*dim, *degree) = lib(dimension_degree(&i.inner))?;
        Ok(())
    })
}

/// `dim (R/I)_d`.
///
/// # Safety
/// `ideal` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dpcy_ideal_hilbert_function(
    ideal: *const DpcyIdeal,
    degree: u32,
    out: *mut u64,
) -> DpcyStatus {
    guard(|| {
        let i = unsafe { ideal_ref(ideal) }?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("output pointer"))?;
        *out = lib(hilbert_function(&i.inner, degree))?;
        Ok(())
    })
}

/// Graded Betti table as JSON `{"entries": {"i,j": n}, "complete": bool}`.
///
/// # Safety
/// `ideal` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dpcy_ideal_betti(ideal: *const DpcyIdeal, out: *mut *mut c_char) -> DpcyStatus {
    guard(|| {
        let i = unsafe { ideal_ref(ideal) }?;
        let t = lib(betti_table(&i.inner, usize::MAX))?;
        give_string(lib(serde_json::to_string(&t).map_err(Error::from))?, out)
    })
}

/// Singular points of a general complete intersection of the given degrees
/// through the zero set of `ideal`.
///
/// # Safety
/// `ideal` must be a live handle, `degrees` must point to `ndegrees` values,
/// and `nodes`, `on_surface` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dpcy_count_nodes(
    ideal: *const DpcyIdeal,
    degrees: *const u32,
    ndegrees: usize,
    seed: u64,
    nodes: *mut i64,
    on_surface: *mut bool,
) -> DpcyStatus {
    guard(|| {
        let i = unsafe { ideal_ref(ideal) }?;
        if degrees.is_null() {
            return Err(null("degrees"));
        }
        // SAFETY: caller guarantees `ndegrees` readable values.
        let ds = unsafe { std::slice::from_raw_parts(degrees, ndegrees) };
        let nodes = unsafe { nodes.as_mut() }.ok_or_else(|| null("nodes"))?;
        let on_surface = unsafe { on_surface.as_mut() }.ok_or_else(|| null("on_surface"))?;
        let report = lib(count_nodes(&i.inner, ds, Seed(seed)))?.value;
        if report.dimension != 0 {
            return Err((DpcyStatus::Degenerate, format!("singular locus has dimension {}", report.dimension)));
        }
        *nodes = report.degree;
        *on_surface = report.nodes_on_surface;
        Ok(())
    })
}

/// Runs a case of the built-in registry at `seed`; the JSON report is stored
/// in `report` and `passed` tells whether it matched.
///
/// # Safety
/// `case_id` must be a NUL-terminated string; `report` and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn dpcy_run_case(
    case_id: *const c_char,
    seed: u64,
    report: *mut *mut c_char,
    passed: *mut bool,
) -> DpcyStatus {
    guard(|| {
        let id = unsafe { read_str(case_id, "case id") }?;
        let passed = unsafe { passed.as_mut() }.ok_or_else(|| null("passed"))?;
        let registry = lib(Registry::builtin())?;
        let opts = RunOptions { seed: Some(Seed(seed)), ..RunOptions::default() };
        let r = lib(run_case(&registry, id, &opts))?;
        *passed = r.status == Status::Pass;
        give_string(lib(serde_json::to_string(&r).map_err(Error::from))?, report)
    })
}
