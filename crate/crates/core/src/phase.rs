//! Where the thermal channel beats classical teleportation, and at what
//! temperature it stops doing so.

use serde::Serialize;

use crate::entanglement::thermal_concurrence;
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::teleport::{average_fidelity, CLASSICAL_FIDELITY};

/// Upper end of the bisection bracket in `x = J/T`.
pub const BRACKET_UPPER: f64 = 50.0;
/// Target `|sinh x - cosh ηx|` at the root.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// Published `(η, T^(m)_critical / J, C_r)` rows, used as golden values.
pub const REFERENCE_TABLE: [(f64, f64, f64); 9] = [
    (0.1, 1.13105, 0.00161554),
    (0.2, 1.12029, 0.00654425),
    (0.3, 1.10193, 0.0150472),
    (0.4, 1.07525, 0.0276166),
    (0.5, 1.03904, 0.045085),
    (0.6, 0.991262, 0.068864),
    (0.7, 0.928278, 0.101495),
    (0.8, 0.842666, 0.148196),
    (0.9, 0.714112, 0.223103),
];

/// Relative tolerance on `T^(m)/J` and absolute tolerance on `C_r` when
/// comparing with [`REFERENCE_TABLE`] (six printed significant figures).
pub const TABLE_TOLERANCE: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub eta: f64,
    pub t_critical_over_j: f64,
    pub residual_concurrence: f64,
    /// `sinh x - cosh ηx` at the returned root.
    pub solver_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRecord {
    pub j: f64,
    pub b_m: f64,
    pub t: f64,
    pub concurrence: f64,
    pub avg_fidelity: f64,
    pub beats_classical: bool,
}

/// `sinh βJ > cosh βB_m`, equivalent to an average fidelity above 2/3.
pub fn better_than_classical(p: &ModelParams) -> bool {
    let h = p.scaled();
    h.sinh_x > h.cosh_y
}

/// `f(x) = sinh x - cosh ηx`.
pub fn threshold_function(eta: f64, x: f64) -> f64 {
    x.sinh() - (eta * x).cosh()
}

/// Solves `sinh x = cosh ηx` for `x = J/T` by bisection on `[arcsinh 1, 50]`.
pub fn critical_temperature(eta: f64, j: f64) -> Result<CriticalPoint> {
    if !eta.is_finite() || eta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "eta = {eta} outside the modeled range (0, 1)"
        )));
    }
    if eta >= 1.0 {
        return Err(Error::NoClassicalBeatingRegime { eta });
    }
    if !(j > 0.0) || !j.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "coupling j = {j} must be positive"
        )));
    }

    let mut lo = 1.0f64.asinh();
    let mut hi = BRACKET_UPPER;
    let f = |x| threshold_function(eta, x);
    if f(lo) > 0.0 || f(hi) <= 0.0 {
        return Err(Error::Numerical(format!(
            "root of sinh x = cosh({eta} x) not bracketed"
        )));
    }
    let mut x = 0.5 * (lo + hi);
    let mut fx = f(x);
    while fx.abs() >= ROOT_TOLERANCE {
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // Bracket has collapsed to adjacent doubles.
            break;
        }
        x = mid;
        fx = f(x);
    }

    let params = ModelParams::new(1.0, eta, 1.0 / x)?;
    Ok(CriticalPoint {
        eta,
        t_critical_over_j: 1.0 / x,
        residual_concurrence: thermal_concurrence(&params),
        solver_residual: fx,
    })
}

/// Concurrence left at the field-dependent critical temperature.
pub fn residual_concurrence(eta: f64) -> Result<f64> {
    Ok(critical_temperature(eta, 1.0)?.residual_concurrence)
}

/// Critical points for `η = 0.1, 0.2, ..., 0.9`.
pub fn reproduce_table1() -> Vec<CriticalPoint> {
    (1..=9)
        .map(|k| critical_temperature(k as f64 / 10.0, 1.0).expect("η in (0, 1)"))
        .collect()
}

/// Evaluates one grid point with `b_m = eta * j`.
pub fn sweep_point(j: f64, eta: f64, t: f64) -> Result<SweepRecord> {
    let p = ModelParams::new(j, eta * j, t)?;
    Ok(SweepRecord {
        j,
        b_m: p.b_m,
        t,
        concurrence: thermal_concurrence(&p),
        avg_fidelity: average_fidelity(&p).average,
        beats_classical: better_than_classical(&p),
    })
}

/// η-major grid of [`SweepRecord`]s.
pub fn sweep(j: f64, eta_grid: &[f64], t_grid: &[f64]) -> Result<Vec<SweepRecord>> {
    let mut out = Vec::with_capacity(eta_grid.len() * t_grid.len());
    for &eta in eta_grid {
        for &t in t_grid {
            out.push(sweep_point(j, eta, t)?);
        }
    }
    Ok(out)
}

/// Does the average fidelity agree with the threshold inequality at `p`?
pub fn threshold_consistent(p: &ModelParams) -> bool {
    better_than_classical(p) == (average_fidelity(p).average > CLASSICAL_FIDELITY)
}
