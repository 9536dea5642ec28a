//! C ABI for `cavity_spectra`.
//!
//! Every function returns a [`CsStatus`]. On failure a message is available
//! from [`cs_last_error_message`] on the same thread. Handles are opaque and
//! must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cavity_spectra::eigensolver::{find_levels, Diagnostic, LevelSet, SolveConfig, SolveError};
use cavity_spectra::models::{residual, BoundaryCondition, ModelError, RadialModel};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was outside its domain.
    InvalidArgument = 2,
    /// The computation failed to converge or produced a non-finite value.
    Numerical = 3,
    /// An internal panic was caught at the boundary.
    Panic = 4,
}

/// A radial model (system, angular quantum number, radius).
pub struct CsModel(RadialModel);

/// Eigenvalues of one solve, sorted ascending.
pub struct CsSpectrum {
    levels: LevelSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn model_status(e: &ModelError) -> CsStatus {
    match e {
        ModelError::InvalidModel(_)
        | ModelError::InvalidBoundary(_)
        | ModelError::InvalidEnergy(_)
        | ModelError::RadiusOutOfRange { .. }
        | ModelError::UnsortedGrid => CsStatus::InvalidArgument,
        _ => CsStatus::Numerical,
    }
}

fn solve_status(e: &SolveError) -> CsStatus {
    match e {
        SolveError::InvalidConfig(_) => CsStatus::InvalidArgument,
        SolveError::Model(m) => model_status(m),
        _ => CsStatus::Numerical,
    }
}

struct Failure(CsStatus, String);

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        Failure(model_status(&e), e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        Failure(solve_status(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CsStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status and a stored message.
fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> CsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CsStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            CsStatus::Panic
        }
    }
}

/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `model` must be null or a live handle from a `cs_model_*` constructor.
unsafe fn model_ref<'a>(model: *const CsModel) -> Result<&'a RadialModel, Failure> {
    model.as_ref().map(|m| &m.0).ok_or_else(|| null("model"))
}

/// # Safety
/// `out` must be valid for writes.
unsafe fn new_model(
    build: impl FnOnce() -> Result<RadialModel, ModelError>,
    out: *mut *mut CsModel,
) -> CsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = build()?;
        write_out(out, Box::into_raw(Box::new(CsModel(m))), "out")
    })
}

/// Free particle in a sphere of radius `radius` with orbital number `l`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_model_free_sphere(
    l: u32,
    radius: f64,
    out: *mut *mut CsModel,
) -> CsStatus {
    new_model(|| RadialModel::free_sphere(l, radius), out)
}

/// Hydrogen centered in a sphere (units ħ = M = e² = 1).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_model_hydrogen_sphere(
    l: u32,
    radius: f64,
    out: *mut *mut CsModel,
) -> CsStatus {
    new_model(|| RadialModel::hydrogen_sphere(l, radius), out)
}

/// Two-dimensional hydrogen on a cone with scale factor `s` in (0, 1].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_model_hydrogen_cone(
    m: i32,
    s: f64,
    radius: f64,
    out: *mut *mut CsModel,
) -> CsStatus {
    new_model(|| RadialModel::hydrogen_cone(m, s, radius), out)
}

/// Releases a model. Null is ignored.
///
/// # Safety
/// `model` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_model_free(model: *mut CsModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Energy unit used for display: π²/(2MR²) for the free particle, Me⁴ otherwise.
///
/// # Safety
/// `model` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_model_display_unit(model: *const CsModel, out: *mut f64) -> CsStatus {
    guard(|| {
        let m = model_ref(model)?;
        write_out(out, m.display_unit(), "out")
    })
}

/// Converts γ (±infinity allowed) into the boundary angle u = arctan(γR).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_boundary_u(gamma: f64, radius: f64, out: *mut f64) -> CsStatus {
    guard(|| {
        let bc = BoundaryCondition::from_gamma(gamma, radius)?;
        write_out(out, bc.u(), "out")
    })
}

/// Boundary residual at `energy` for the condition with angle `u`; zero at eigenvalues.
///
/// # Safety
/// `model` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_residual(
    model: *const CsModel,
    u: f64,
    energy: f64,
    out: *mut f64,
) -> CsStatus {
    guard(|| {
        let m = model_ref(model)?;
        let bc = BoundaryCondition::from_u(u)?;
        write_out(out, residual(m, &bc, energy)?, "out")
    })
}

fn solve(m: &RadialModel, u: f64, cfg: &SolveConfig) -> Result<CsSpectrum, Failure> {
    let bc = BoundaryCondition::from_u(u)?;
    Ok(CsSpectrum {
        levels: find_levels(m, &bc, cfg)?,
    })
}

/// The `count` lowest eigenvalues for boundary angle `u`.
///
/// # Safety
/// `model` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_solve_lowest(
    model: *const CsModel,
    u: f64,
    count: usize,
    out: *mut *mut CsSpectrum,
) -> CsStatus {
    guard(|| {
        let m = model_ref(model)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if count == 0 {
            return Err(Failure(
                CsStatus::InvalidArgument,
                "count must be positive".into(),
            ));
        }
        let s = solve(m, u, &SolveConfig::lowest(m, count))?;
        write_out(out, Box::into_raw(Box::new(s)), "out")
    })
}

/// All eigenvalues in `[e_min, e_max]` (internal units) for boundary angle `u`.
/// `max_states` caps the count; 0 means no cap.
///
/// # Safety
/// `model` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_solve_window(
    model: *const CsModel,
    u: f64,
    e_min: f64,
    e_max: f64,
    max_states: usize,
    out: *mut *mut CsSpectrum,
) -> CsStatus {
    guard(|| {
        let m = model_ref(model)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = SolveConfig {
            max_states: (max_states > 0).then_some(max_states),
            ..SolveConfig::new(e_min, e_max)?
        };
        let s = solve(m, u, &cfg)?;
        write_out(out, Box::into_raw(Box::new(s)), "out")
    })
}

/// Number of levels in a spectrum; 0 for null.
///
/// # Safety
/// `spectrum` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_spectrum_len(spectrum: *const CsSpectrum) -> usize {
    spectrum.as_ref().map_or(0, |s| s.levels.levels.len())
}

/// Energy (internal units) and node count of level `index`.
///
/// # Safety
/// `spectrum` must be a live handle; `energy` and `nodes` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_spectrum_level(
    spectrum: *const CsSpectrum,
    index: usize,
    energy: *mut f64,
    nodes: *mut usize,
) -> CsStatus {
    guard(|| {
        let s = spectrum.as_ref().ok_or_else(|| null("spectrum"))?;
        if energy.is_null() || nodes.is_null() {
            return Err(null("output pointer"));
        }
        let lv = s.levels.levels.get(index).ok_or_else(|| {
            Failure(
                CsStatus::InvalidArgument,
                format!("index {index} out of range (len {})", s.levels.levels.len()),
            )
        })?;
        write_out(energy, lv.energy, "energy")?;
        write_out(nodes, lv.nodes, "nodes")
    })
}

/// True when the solve reported a missed root or a missing ground state.
///
/// # Safety
/// `spectrum` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cs_spectrum_flagged(spectrum: *const CsSpectrum) -> bool {
    spectrum.as_ref().is_some_and(|s| {
        s.levels.diagnostics.iter().any(|d| {
            matches!(
                d,
                Diagnostic::MissedRoot { .. } | Diagnostic::GroundStateMissing { .. }
            )
        })
    })
}

/// Releases a spectrum. Null is ignored.
///
/// # Safety
/// `spectrum` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_spectrum_free(spectrum: *mut CsSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn cs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
