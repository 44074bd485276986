//! C ABI over the persuasion toolkit.
//!
//! Instances live behind opaque handles created by `*_parse` (or
//! `persuasion_reduce`) and released with the matching `*_free`. Every
//! fallible call returns a `PersuasionStatus`; on failure the message is
//! available from `persuasion_last_error` on the same thread. Strings handed
//! out by the library are NUL-terminated and must be released with
//! `persuasion_string_free`. Index buffers passed in or filled by the
//! library hold 0-based event or subset indices.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use persuasion::io::{parse_eci, parse_ppi, render_eci, render_ppi, render_roles};
use persuasion::reduction::verify_artifact;
use persuasion::{
    brute_force_persuasion, exact_cover_brute, exact_cover_dlx, exact_cover_dlx_count, reduce,
    strong_persuasion_general, strong_persuasion_standard, verify_cover, CoverVerdict, Error,
    ExactCoverInstance, Observation, PersuasionInstance, PersuasionVerdict, ReductionArtifact,
    SweepConfig,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PersuasionStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed instance text; the message carries the line number.
    Syntax = 3,
    /// Well-formed text or arguments describing an invalid instance.
    InvalidInput = 4,
    /// The observation leaves zero probability mass.
    UndefinedPosterior = 5,
    /// An exhaustive sweep would exceed the configured cap.
    CapExceeded = 6,
    /// A threshold-one decider was called on an instance outside its domain.
    AssumptionViolated = 7,
    /// An output buffer is too small; the required length is still reported.
    BufferTooSmall = 8,
    /// Internal failure; please report it.
    Panic = 9,
}

/// Persuasion deciders.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PersuasionSolver {
    /// Exhaustive sweep over observations; any threshold.
    Brute = 0,
    /// Threshold one, requires positive mass on the intersection of all events.
    StrongStandard = 1,
    /// Threshold one, no further assumptions.
    StrongGeneral = 2,
}

/// Exact Cover engines.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PersuasionCoverEngine {
    /// Exhaustive sweep; also counts solutions.
    Brute = 0,
    /// Dancing links, stopping at the first cover.
    Dlx = 1,
    /// Dancing links, counting every cover.
    DlxCount = 2,
}

/// Limits for exhaustive sweeps. `cap` bounds the number of items swept
/// (cost is `2^cap`); `workers` of 0 or 1 means single-threaded.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PersuasionSweep {
    pub cap: usize,
    pub workers: usize,
}

/// Decision plus witness size. Witness indices go to the caller's buffer.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PersuasionOutcome {
    pub solvable: bool,
    /// Number of indices in the witness; 0 when unsolvable.
    pub witness_len: usize,
    /// Number of exact covers, or -1 when the engine does not count.
    pub count: i64,
}

/// A persuasion instance.
pub struct PersuasionPpi {
    inner: PersuasionInstance,
}

/// An Exact Cover instance.
pub struct PersuasionEci {
    inner: ExactCoverInstance,
}

/// A cover-to-persuasion reduction together with its world roles.
pub struct PersuasionReduction {
    inner: ReductionArtifact,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(PersuasionStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } => PersuasionStatus::Syntax,
            Error::UndefinedPosterior => PersuasionStatus::UndefinedPosterior,
            Error::CapExceeded { .. } => PersuasionStatus::CapExceeded,
            Error::NotStrongInstance(_) | Error::AssumptionViolated(_) => {
                PersuasionStatus::AssumptionViolated
            }
            _ => PersuasionStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PersuasionStatus::NullPointer, format!("{what} is null"))
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs replaced");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PersuasionStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PersuasionStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal error: {message}"));
            PersuasionStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(PersuasionStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn indices<'a>(p: *const usize, len: usize) -> Result<&'a [usize], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null("index buffer"));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure(PersuasionStatus::InvalidInput, e.to_string()))?;
    write_out(out, c.into_raw(), "string output")
}

/// Copies `items` into `buf` of capacity `cap`. The length is always
/// written; a short buffer is reported after the length is known.
unsafe fn write_indices(items: &[usize], buf: *mut usize, cap: usize) -> Result<(), Failure> {
    if items.is_empty() {
        return Ok(());
    }
    if buf.is_null() || cap < items.len() {
        return Err(Failure(
            PersuasionStatus::BufferTooSmall,
            format!("witness needs {} slots, buffer holds {cap}", items.len()),
        ));
    }
    ptr::copy_nonoverlapping(items.as_ptr(), buf, items.len());
    Ok(())
}

fn sweep_config(sweep: *const PersuasionSweep) -> SweepConfig {
    // SAFETY: caller passes null or a valid pointer
    match unsafe { sweep.as_ref() } {
        Some(s) => SweepConfig::with_cap(s.cap).workers(s.workers),
        None => SweepConfig::default(),
    }
}

/// Message of the last failed call on this thread, or an empty string.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn persuasion_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Default sweep limits: cap 24, single-threaded.
#[no_mangle]
pub extern "C" fn persuasion_sweep_default() -> PersuasionSweep {
    let cfg = SweepConfig::default();
    PersuasionSweep {
        cap: cfg.cap,
        workers: cfg.workers,
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn persuasion_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a persuasion instance from its text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_ppi_parse(
    text: *const c_char,
    out: *mut *mut PersuasionPpi,
) -> PersuasionStatus {
    guard(|| {
        let inner = parse_ppi(read_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(PersuasionPpi { inner })), "out")
    })
}

/// Releases a persuasion instance. Null is ignored.
///
/// # Safety
/// `ppi` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn persuasion_ppi_free(ppi: *mut PersuasionPpi) {
    if !ppi.is_null() {
        drop(Box::from_raw(ppi));
    }
}

/// Renders the canonical text of a persuasion instance.
///
/// # Safety
/// `ppi` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_ppi_render(
    ppi: *const PersuasionPpi,
    out: *mut *mut c_char,
) -> PersuasionStatus {
    guard(|| write_string(out, render_ppi(&handle(ppi, "ppi")?.inner)))
}

/// Number of events; 0 for a null handle.
///
/// # Safety
/// `ppi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn persuasion_ppi_num_events(ppi: *const PersuasionPpi) -> usize {
    ppi.as_ref().map_or(0, |p| p.inner.space().num_events())
}

/// Number of worlds; 0 for a null handle.
///
/// # Safety
/// `ppi` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn persuasion_ppi_num_worlds(ppi: *const PersuasionPpi) -> usize {
    ppi.as_ref().map_or(0, |p| p.inner.space().num_worlds())
}

/// Exact posterior of the goal given the selected events, as `"p/q"`.
///
/// # Safety
/// `ppi` must be a live handle, `events` must hold `len` indices, and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_ppi_posterior(
    ppi: *const PersuasionPpi,
    events: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> PersuasionStatus {
    guard(|| {
        let inst = &handle(ppi, "ppi")?.inner;
        let obs = Observation::new(indices(events, len)?.iter().copied());
        write_string(out, inst.posterior(&obs)?.to_string())
    })
}

/// Whether the selected events push the posterior to the threshold. An
/// observation with zero mass is not a solution.
///
/// # Safety
/// As for `persuasion_ppi_posterior`.
#[no_mangle]
pub unsafe extern "C" fn persuasion_ppi_is_solution(
    ppi: *const PersuasionPpi,
    events: *const usize,
    len: usize,
    out: *mut bool,
) -> PersuasionStatus {
    guard(|| {
        let inst = &handle(ppi, "ppi")?.inner;
        let obs = Observation::new(indices(events, len)?.iter().copied());
        inst.space().check_observation(&obs)?;
        write_out(out, inst.is_solution(&obs), "out")
    })
}

/// Decides a persuasion instance. The witness (event indices in ascending
/// order) is copied into `witness`, which needs room for `witness_len`
/// entries; the number of events always suffices. `sweep` may be null.
///
/// # Safety
/// `ppi` must be a live handle, `witness` must hold `witness_cap` entries
/// (or be null with capacity 0), and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_ppi_solve(
    ppi: *const PersuasionPpi,
    solver: PersuasionSolver,
    sweep: *const PersuasionSweep,
    witness: *mut usize,
    witness_cap: usize,
    out: *mut PersuasionOutcome,
) -> PersuasionStatus {
    guard(|| {
        let inst = &handle(ppi, "ppi")?.inner;
        let verdict: PersuasionVerdict = match solver {
            PersuasionSolver::Brute => brute_force_persuasion(inst, &sweep_config(sweep))?,
            PersuasionSolver::StrongStandard => strong_persuasion_standard(inst)?,
            PersuasionSolver::StrongGeneral => strong_persuasion_general(inst)?,
        };
        let chosen = verdict.witness.as_ref().map_or(&[][..], |w| w.indices());
        write_out(
            out,
            PersuasionOutcome {
                solvable: verdict.solvable,
                witness_len: chosen.len(),
                count: -1,
            },
            "out",
        )?;
        write_indices(chosen, witness, witness_cap)
    })
}

/// Parses an Exact Cover instance from its text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_eci_parse(
    text: *const c_char,
    out: *mut *mut PersuasionEci,
) -> PersuasionStatus {
    guard(|| {
        let inner = parse_eci(read_str(text, "text")?)?;
        write_out(out, Box::into_raw(Box::new(PersuasionEci { inner })), "out")
    })
}

/// Releases an Exact Cover instance. Null is ignored.
///
/// # Safety
/// `eci` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn persuasion_eci_free(eci: *mut PersuasionEci) {
    if !eci.is_null() {
        drop(Box::from_raw(eci));
    }
}

/// Renders the canonical text of an Exact Cover instance.
///
/// # Safety
/// `eci` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_eci_render(
    eci: *const PersuasionEci,
    out: *mut *mut c_char,
) -> PersuasionStatus {
    guard(|| write_string(out, render_eci(&handle(eci, "eci")?.inner)))
}

/// Number of subsets; 0 for a null handle.
///
/// # Safety
/// `eci` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn persuasion_eci_num_subsets(eci: *const PersuasionEci) -> usize {
    eci.as_ref().map_or(0, |e| e.inner.num_subsets())
}

/// Decides an Exact Cover instance. The witness (subset indices in
/// ascending order) is copied into `witness`; the number of subsets always
/// suffices. `sweep` may be null and only affects the brute engine.
///
/// # Safety
/// As for `persuasion_ppi_solve`.
#[no_mangle]
pub unsafe extern "C" fn persuasion_eci_solve(
    eci: *const PersuasionEci,
    engine: PersuasionCoverEngine,
    sweep: *const PersuasionSweep,
    witness: *mut usize,
    witness_cap: usize,
    out: *mut PersuasionOutcome,
) -> PersuasionStatus {
    guard(|| {
        let inst = &handle(eci, "eci")?.inner;
        let verdict: CoverVerdict = match engine {
            PersuasionCoverEngine::Brute => exact_cover_brute(inst, &sweep_config(sweep))?,
            PersuasionCoverEngine::Dlx => exact_cover_dlx(inst),
            PersuasionCoverEngine::DlxCount => exact_cover_dlx_count(inst),
        };
        let chosen = verdict.witness.as_deref().unwrap_or(&[]);
        let count = verdict
            .solution_count
            .map_or(-1, |c| i64::try_from(c).unwrap_or(i64::MAX));
        write_out(
            out,
            PersuasionOutcome {
                solvable: verdict.solvable,
                witness_len: chosen.len(),
                count,
            },
            "out",
        )?;
        write_indices(chosen, witness, witness_cap)
    })
}

/// Whether the chosen subsets form an exact cover. Out-of-range or repeated
/// indices make the answer false.
///
/// # Safety
/// `eci` must be a live handle, `subsets` must hold `len` indices, and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_eci_verify_cover(
    eci: *const PersuasionEci,
    subsets: *const usize,
    len: usize,
    out: *mut bool,
) -> PersuasionStatus {
    guard(|| {
        let inst = &handle(eci, "eci")?.inner;
        write_out(out, verify_cover(inst, indices(subsets, len)?), "out")
    })
}

/// Reduces an Exact Cover instance to a persuasion instance.
///
/// # Safety
/// `eci` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_reduce(
    eci: *const PersuasionEci,
    out: *mut *mut PersuasionReduction,
) -> PersuasionStatus {
    guard(|| {
        let inner = reduce(&handle(eci, "eci")?.inner);
        write_out(
            out,
            Box::into_raw(Box::new(PersuasionReduction { inner })),
            "out",
        )
    })
}

/// Releases a reduction. Null is ignored.
///
/// # Safety
/// `red` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn persuasion_reduction_free(red: *mut PersuasionReduction) {
    if !red.is_null() {
        drop(Box::from_raw(red));
    }
}

/// Copies the reduced persuasion instance into a new handle, which the
/// caller releases with `persuasion_ppi_free`.
///
/// # Safety
/// `red` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_reduction_instance(
    red: *const PersuasionReduction,
    out: *mut *mut PersuasionPpi,
) -> PersuasionStatus {
    guard(|| {
        let inner = handle(red, "reduction")?.inner.instance().clone();
        write_out(out, Box::into_raw(Box::new(PersuasionPpi { inner })), "out")
    })
}

/// Renders the parameters and world roles of a reduction.
///
/// # Safety
/// `red` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_reduction_render_roles(
    red: *const PersuasionReduction,
    out: *mut *mut c_char,
) -> PersuasionStatus {
    guard(|| write_string(out, render_roles(&handle(red, "reduction")?.inner)))
}

/// Maps an observation of the reduced instance back to subset indices.
/// The result never has more entries than the number of subsets.
///
/// # Safety
/// `red` must be a live handle, `events` must hold `len` indices, `subsets`
/// must hold `subsets_cap` entries, and `subsets_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn persuasion_reduction_back_map(
    red: *const PersuasionReduction,
    events: *const usize,
    len: usize,
    subsets: *mut usize,
    subsets_cap: usize,
    subsets_len: *mut usize,
) -> PersuasionStatus {
    guard(|| {
        let art = &handle(red, "reduction")?.inner;
        let obs = Observation::new(indices(events, len)?.iter().copied());
        let chosen = art.back_map(&obs)?;
        write_out(subsets_len, chosen.len(), "subsets_len")?;
        write_indices(&chosen, subsets, subsets_cap)
    })
}

/// Sweeps every observation of the reduced instance and checks that the
/// reduction preserves solvability. `passed` receives the verdict and, when
/// `report` is non-null, the full report text is written there.
///
/// # Safety
/// `red` must be a live handle, `passed` must be writable, `report` must be
/// null or writable, and `sweep` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn persuasion_reduction_verify(
    red: *const PersuasionReduction,
    sweep: *const PersuasionSweep,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> PersuasionStatus {
    guard(|| {
        let art = &handle(red, "reduction")?.inner;
        let rep = verify_artifact(art, &sweep_config(sweep))?;
        write_out(passed, rep.passed(), "passed")?;
        if !report.is_null() {
            write_string(report, rep.to_string())?;
        }
        Ok(())
    })
}
