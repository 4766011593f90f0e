//! The two-qubit Heisenberg XX chain in a longitudinal field and its Gibbs state.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, pauli, CMatrix};
use crate::states;

/// Coupling `j`, field `b_m` and temperature `t`, in units with `k = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    pub j: f64,
    pub b_m: f64,
    pub t: f64,
}

impl ModelParams {
    pub fn new(j: f64, b_m: f64, t: f64) -> Result<Self> {
        if !j.is_finite() || !b_m.is_finite() {
            return Err(Error::InvalidParameter(
                "coupling and field must be finite".into(),
            ));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidParameter(
                "temperature must be positive".into(),
            ));
        }
        Ok(Self { j, b_m, t })
    }

    /// Reduced parameters: `b_m = eta * j`, `t = t_over_j * j`.
    pub fn reduced(j: f64, eta: f64, t_over_j: f64) -> Result<Self> {
        Self::new(j, eta * j, t_over_j * j)
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.t
    }

    /// `b_m / j`, undefined for `j = 0`.
    pub fn eta(&self) -> Option<f64> {
        (self.j != 0.0).then(|| self.b_m / self.j)
    }

    pub(crate) fn scaled(&self) -> ScaledHyperbolics {
        ScaledHyperbolics::new(self.beta() * self.j, self.beta() * self.b_m)
    }
}

/// `cosh` and `sinh` of `x = βJ` and `y = βB_m`, all multiplied by `e^{-m}` with
/// `m = max(|x|, |y|)` so that ratios survive arbitrarily large β.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledHyperbolics {
    pub cosh_x: f64,
    pub sinh_x: f64,
    pub cosh_y: f64,
    /// `e^{-m}`, the scaled value of 1.
    pub unit: f64,
}

impl ScaledHyperbolics {
    pub fn new(x: f64, y: f64) -> Self {
        let m = x.abs().max(y.abs());
        let half = |a: f64, b: f64| 0.5 * ((a - m).exp() + (b - m).exp());
        Self {
            cosh_x: half(x, -x),
            sinh_x: 0.5 * ((x - m).exp() - (-x - m).exp()),
            cosh_y: half(y, -y),
            unit: (-m).exp(),
        }
    }
}

/// Gibbs state `e^{-βH}/Z` with its partition function.
#[derive(Debug, Clone)]
pub struct ThermalState {
    pub rho: CMatrix,
    /// Overflows to `+inf` once `β·max(|J|, |B_m|)` exceeds roughly 710.
    pub z: f64,
}

impl ThermalState {
    /// Populations of `|00>, |Ψ+>, |Ψ->, |11>`.
    pub fn populations(&self) -> [f64; 4] {
        let basis = [
            states::ket00(),
            states::psi_plus(),
            states::psi_minus(),
            states::ket11(),
        ];
        basis.map(|v| self.rho.expectation(&v).expect("4-dim state").re)
    }
}

/// Eigenvalue and normalized eigenvector of the Hamiltonian.
#[derive(Debug, Clone)]
pub struct Eigenpair {
    pub energy: f64,
    pub state: Vec<Complex64>,
}

/// `H = (J/2)(σ¹⊗σ¹ + σ²⊗σ²) + (B_m/2)(σ³⊗σ⁰ + σ⁰⊗σ³)`.
pub fn build_hamiltonian(p: &ModelParams) -> CMatrix {
    let kron = |a: usize, b: usize| pauli(a).kron(&pauli(b)).expect("4-dim product");
    let exchange = &kron(1, 1) + &kron(2, 2);
    let zeeman = &kron(3, 0) + &kron(0, 3);
    &exchange.scale_real(0.5 * p.j) + &zeeman.scale_real(0.5 * p.b_m)
}

/// The four eigenpairs `(B_m, |00>)`, `(J, |Ψ+>)`, `(-J, |Ψ->)`, `(-B_m, |11>)`.
pub fn analytic_spectrum(p: &ModelParams) -> Vec<Eigenpair> {
    vec![
        Eigenpair { energy: p.b_m, state: states::ket00() },
        Eigenpair { energy: p.j, state: states::psi_plus() },
        Eigenpair { energy: -p.j, state: states::psi_minus() },
        Eigenpair { energy: -p.b_m, state: states::ket11() },
    ]
}

/// `Z = 2 cosh βB_m + 2 cosh βJ`.
pub fn partition_function(p: &ModelParams) -> f64 {
    let beta = p.beta();
    2.0 * (beta * p.b_m).cosh() + 2.0 * (beta * p.j).cosh()
}

/// Boltzmann populations of `|00>, |Ψ+>, |Ψ->, |11>` from max-shifted exponentials.
pub fn populations(p: &ModelParams) -> [f64; 4] {
    let beta = p.beta();
    let exponents = [-beta * p.b_m, -beta * p.j, beta * p.j, beta * p.b_m];
    let shift = exponents.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights = exponents.map(|e| (e - shift).exp());
    let total: f64 = weights.iter().sum();
    weights.map(|w| w / total)
}

/// Closed-form thermal state, assembled in the computational basis.
pub fn gibbs_state(p: &ModelParams) -> ThermalState {
    let [p00, p_plus, p_minus, p11] = populations(p);
    let mut rho = CMatrix::zeros(4);
    let re = |x: f64| Complex64::new(x, 0.0);
    let centre = 0.5 * (p_plus + p_minus);
    let coherence = 0.5 * (p_plus - p_minus);
    rho.set(0, 0, re(p00));
    rho.set(1, 1, re(centre));
    rho.set(2, 2, re(centre));
    rho.set(1, 2, re(coherence));
    rho.set(2, 1, re(coherence));
    rho.set(3, 3, re(p11));
    ThermalState {
        rho,
        z: partition_function(p),
    }
}

/// Thermal state obtained by exponentiating the numerically diagonalized Hamiltonian.
///
/// Used only to cross-check [`gibbs_state`]. Requires `|βJ|, |βB_m| <= 700`.
pub fn gibbs_state_oracle(p: &ModelParams) -> Result<ThermalState> {
    let beta = p.beta();
    if (beta * p.j).abs() > 700.0 || (beta * p.b_m).abs() > 700.0 {
        return Err(Error::InvalidParameter(
            "oracle requires |βJ|, |βB_m| <= 700".into(),
        ));
    }
    let h = build_hamiltonian(p);
    let eig = linalg::eigh(&h)?;
    let ground = eig.eigenvalues[0];
    let weights = eig.map_spectrum(|e| (-beta * (e - ground)).exp());
    let trace = weights.trace().re;
    Ok(ThermalState {
        rho: weights.scale_real(1.0 / trace),
        z: trace * (-beta * ground).exp(),
    })
}
