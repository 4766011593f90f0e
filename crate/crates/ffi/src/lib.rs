//! C ABI over `xxtele`.
//!
//! Every fallible function returns an [`XxStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! copied out with [`xx_last_error_message`]. Thermal states are opaque
//! handles created by [`xx_thermal_state_new`] and released by
//! [`xx_thermal_state_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use xxtele::entanglement::{concurrence, thermal_concurrence, zero_entanglement_temperature};
use xxtele::model::{gibbs_state, ModelParams, ThermalState};
use xxtele::phase::{better_than_classical, critical_temperature};
use xxtele::teleport::{
    apply_channel, average_fidelity, bell_weights, mc_average_fidelity, output_fidelity,
    quadrature_average_fidelity, PureQubit,
};
use xxtele::Error;

/// Status codes; values match the exit codes of the `xxtele` CLI where they overlap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XxStatus {
    Ok = 0,
    NumericalFailure = 1,
    InvalidParameter = 2,
    NoSolution = 3,
    NullPointer = 5,
    Panic = 6,
}

/// Gibbs state of the two-qubit XX chain.
pub struct XxThermalState {
    state: ThermalState,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct XxCriticalPoint {
    pub eta: f64,
    pub t_critical_over_j: f64,
    pub residual_concurrence: f64,
    pub solver_residual: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct XxFidelityEstimate {
    pub average: f64,
    pub stderr: f64,
    pub samples: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(XxStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidParameter(_) | Error::NotDensity(_) | Error::Dimension(_) => {
                XxStatus::InvalidParameter
            }
            Error::NoEntanglement | Error::NoClassicalBeatingRegime { .. } => XxStatus::NoSolution,
            _ => XxStatus::NumericalFailure,
        };
        Failure(status, e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(XxStatus::NullPointer, format!("{name} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> XxStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            clear_last_error();
            XxStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("panic inside xxtele".into());
            XxStatus::Panic
        }
    }
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, name: &str, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(name));
    }
    out.write(value);
    Ok(())
}

/// # Safety
/// `handle` must be null or a live pointer from `xx_thermal_state_new`.
unsafe fn borrow<'a>(handle: *const XxThermalState) -> Result<&'a XxThermalState, Failure> {
    handle.as_ref().ok_or_else(|| null("handle"))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn xx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (nul-terminated,
/// truncated to `len`). Returns the full message length excluding the
/// terminator, or 0 when there is no error.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn xx_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let slot = slot.borrow();
        let Some(msg) = slot.as_ref() else {
            if !buf.is_null() && len > 0 {
                *buf = 0;
            }
            return 0;
        };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Builds the thermal state for coupling `j`, field `b_m` and temperature `t > 0`.
///
/// # Safety
/// `out` must be valid for a pointer write. The handle must be released with
/// [`xx_thermal_state_free`].
#[no_mangle]
pub unsafe extern "C" fn xx_thermal_state_new(
    j: f64,
    b_m: f64,
    t: f64,
    out: *mut *mut XxThermalState,
) -> XxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let params = ModelParams::new(j, b_m, t)?;
        let handle = Box::new(XxThermalState {
            state: gibbs_state(&params),
        });
        out.write(Box::into_raw(handle));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `handle` must be null or come from [`xx_thermal_state_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn xx_thermal_state_free(handle: *mut XxThermalState) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// # Safety
/// `handle` must be live; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn xx_thermal_state_partition_function(
    handle: *const XxThermalState,
    out: *mut f64,
) -> XxStatus {
    guard(|| write_out(out, "out", borrow(handle)?.state.z))
}

/// Writes the 4x4 density matrix row-major into `re[16]` and `im[16]`.
///
/// # Safety
/// `handle` must be live; `re` and `im` valid for 16 doubles each.
#[no_mangle]
pub unsafe extern "C" fn xx_thermal_state_density(
    handle: *const XxThermalState,
    re: *mut f64,
    im: *mut f64,
) -> XxStatus {
    guard(|| {
        let h = borrow(handle)?;
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        for (k, z) in h.state.rho.as_slice().iter().enumerate() {
            re.add(k).write(z.re);
            im.add(k).write(z.im);
        }
        Ok(())
    })
}

/// Wootters concurrence of the state.
///
/// # Safety
/// `handle` must be live; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn xx_thermal_state_concurrence(
    handle: *const XxThermalState,
    out: *mut f64,
) -> XxStatus {
    guard(|| {
        let value = concurrence(&borrow(handle)?.state.rho)?.value;
        write_out(out, "out", value)
    })
}

/// Teleportation channel weights `p[4]` in the order Ψ-, Φ-, Φ+, Ψ+.
///
/// # Safety
/// `handle` must be live; `out` valid for 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn xx_thermal_state_bell_weights(
    handle: *const XxThermalState,
    out: *mut f64,
) -> XxStatus {
    guard(|| {
        let w = bell_weights(&borrow(handle)?.state.rho)?;
        if out.is_null() {
            return Err(null("out"));
        }
        for (k, p) in w.p.iter().enumerate() {
            out.add(k).write(*p);
        }
        Ok(())
    })
}

/// Teleports `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`; writes the 2x2 output
/// row-major into `re[4]` and `im[4]`.
///
/// # Safety
/// `handle` must be live; `re` and `im` valid for 4 doubles each.
#[no_mangle]
pub unsafe extern "C" fn xx_thermal_state_teleport(
    handle: *const XxThermalState,
    theta: f64,
    phi: f64,
    re: *mut f64,
    im: *mut f64,
) -> XxStatus {
    guard(|| {
        let h = borrow(handle)?;
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        let psi = PureQubit::new(theta, phi)?;
        let out = apply_channel(&h.state.rho, &psi)?;
        for (k, z) in out.as_slice().iter().enumerate() {
            re.add(k).write(z.re);
            im.add(k).write(z.im);
        }
        Ok(())
    })
}

/// Monte Carlo average fidelity over `samples` Haar-random inputs.
///
/// # Safety
/// `handle` must be live; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn xx_thermal_state_mc_fidelity(
    handle: *const XxThermalState,
    samples: u64,
    seed: u64,
    out: *mut XxFidelityEstimate,
) -> XxStatus {
    guard(|| {
        let r = mc_average_fidelity(&borrow(handle)?.state.rho, samples, seed)?;
        write_out(
            out,
            "out",
            XxFidelityEstimate {
                average: r.average,
                stderr: r.stderr.unwrap_or(0.0),
                samples,
            },
        )
    })
}

/// Deterministic sphere-averaged fidelity by quadrature.
///
/// # Safety
/// `handle` must be live; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn xx_thermal_state_quadrature_fidelity(
    handle: *const XxThermalState,
    out: *mut f64,
) -> XxStatus {
    guard(|| {
        let r = quadrature_average_fidelity(&borrow(handle)?.state.rho)?;
        write_out(out, "out", r.average)
    })
}

/// Closed-form thermal concurrence.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn xx_thermal_concurrence(j: f64, b_m: f64, t: f64, out: *mut f64) -> XxStatus {
    guard(|| {
        let p = ModelParams::new(j, b_m, t)?;
        write_out(out, "out", thermal_concurrence(&p))
    })
}

/// Closed-form average teleportation fidelity.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn xx_average_fidelity(j: f64, b_m: f64, t: f64, out: *mut f64) -> XxStatus {
    guard(|| {
        let p = ModelParams::new(j, b_m, t)?;
        write_out(out, "out", average_fidelity(&p).average)
    })
}

/// Closed-form fidelity for an input at polar angle `theta`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn xx_output_fidelity(
    j: f64,
    b_m: f64,
    t: f64,
    theta: f64,
    out: *mut f64,
) -> XxStatus {
    guard(|| {
        let p = ModelParams::new(j, b_m, t)?;
        let psi = PureQubit::new(theta, 0.0)?;
        write_out(out, "out", output_fidelity(&p, psi.theta))
    })
}

/// Whether the thermal channel beats the classical fidelity 2/3.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn xx_better_than_classical(
    j: f64,
    b_m: f64,
    t: f64,
    out: *mut bool,
) -> XxStatus {
    guard(|| {
        let p = ModelParams::new(j, b_m, t)?;
        write_out(out, "out", better_than_classical(&p))
    })
}

/// `|j| / arcsinh(1)`; `XX_STATUS_NO_SOLUTION` for `j = 0`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn xx_zero_entanglement_temperature(j: f64, out: *mut f64) -> XxStatus {
    guard(|| write_out(out, "out", zero_entanglement_temperature(j)?))
}

/// Critical temperature for `B_m = eta * j`; `XX_STATUS_NO_SOLUTION` for `eta >= 1`.
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn xx_critical_temperature(
    eta: f64,
    j: f64,
    out: *mut XxCriticalPoint,
) -> XxStatus {
    guard(|| {
        let cp = critical_temperature(eta, j)?;
        write_out(
            out,
            "out",
            XxCriticalPoint {
                eta: cp.eta,
                t_critical_over_j: cp.t_critical_over_j,
                residual_concurrence: cp.residual_concurrence,
                solver_residual: cp.solver_residual,
            },
        )
    })
}
