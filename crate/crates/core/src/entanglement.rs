//! Wootters concurrence, general and for the XX thermal state.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, pauli, CMatrix, ZERO};
use crate::model::ModelParams;

/// Roundoff floor below which a negative spin-flip eigenvalue is a logic error.
pub const NEGATIVE_EIGENVALUE_CLAMP: f64 = 1e-10;

/// Square roots of the spin-flip spectrum (decreasing) and the concurrence built from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcurrenceBreakdown {
    pub lambdas: [f64; 4],
    pub value: f64,
}

fn spin_flip_operator() -> CMatrix {
    pauli(2).kron(&pauli(2)).expect("4-dim product")
}

/// Concurrence of an arbitrary two-qubit density matrix.
///
/// The `λ_k` are the square roots of the eigenvalues of `R = ρ ρ̃`, with
/// `ρ̃ = (σ²⊗σ²) ρ* (σ²⊗σ²)`. They coincide with the singular values of
/// `K = √ρ √ρ̃`, which are read off as the nonnegative half of the spectrum
/// of the Hermitian dilation `[[0, K], [K†, 0]]`. Working with `K` rather than
/// `K K†` keeps the small `λ_k` accurate to roundoff instead of its square root.
pub fn concurrence(rho: &CMatrix) -> Result<ConcurrenceBreakdown> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(format!(
            "concurrence needs a 4x4 density matrix, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    rho.check_density()?;

    let sqrt_rho = linalg::hermitian_function(rho, |x| x.max(0.0).sqrt())?;
    let yy = spin_flip_operator();
    let sqrt_flipped = &(&yy * &sqrt_rho.conj()) * &yy;
    let k = &sqrt_rho * &sqrt_flipped;
    let k_adj = k.adjoint();

    let dilation = CMatrix::from_fn(8, |i, j| match (i < 4, j < 4) {
        (true, false) => k.get(i, j - 4),
        (false, true) => k_adj.get(i - 4, j),
        _ => ZERO,
    });
    let spectrum = linalg::eigh(&dilation)?.eigenvalues;

    let mut lambdas = [0.0; 4];
    for (slot, &s) in lambdas.iter_mut().zip(spectrum.iter().rev()) {
        if s < -NEGATIVE_EIGENVALUE_CLAMP {
            return Err(Error::Numerical(format!(
                "spin-flip spectrum has negative value {s:e}"
            )));
        }
        *slot = s.max(0.0);
    }
    let value = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    Ok(ConcurrenceBreakdown { lambdas, value })
}

/// `max{(|sinh βJ| - 1)/(cosh βB_m + cosh βJ), 0}`.
pub fn thermal_concurrence(p: &ModelParams) -> f64 {
    let h = p.scaled();
    ((h.sinh_x.abs() - h.unit) / (h.cosh_y + h.cosh_x)).max(0.0)
}

/// Temperature above which the thermal concurrence vanishes for any field:
/// `|J| / arcsinh(1) = |J| / ln(1 + √2)`.
pub fn zero_entanglement_temperature(j: f64) -> Result<f64> {
    if j == 0.0 {
        return Err(Error::NoEntanglement);
    }
    if !j.is_finite() {
        return Err(Error::InvalidParameter("coupling must be finite".into()));
    }
    Ok(j.abs() / 1.0f64.asinh())
}
