//! Standard teleportation with a mixed two-qubit resource.
//!
//! With resource `ρ_AB`, Bell measurement on (input, A) followed by a Pauli
//! correction on B acts on the input as `Σ_j p_j σ^j |ψ><ψ| σ^j` with
//! `p_j = tr(E^j ρ_AB)`, where `E^0..E^3` project onto `|Ψ->, |Φ->, |Φ+>, |Ψ+>`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{pauli, tolerance, CMatrix, ZERO};
use crate::model::{self, ModelParams};
use crate::quadrature::gauss_legendre;
use crate::states;

/// Fidelity attainable by measure-and-prepare (classical) strategies.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;

/// Input qubit `cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PureQubit {
    pub theta: f64,
    pub phi: f64,
}

impl PureQubit {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParameter(format!(
                "theta = {theta} outside [0, π]"
            )));
        }
        if !(0.0..=2.0 * PI).contains(&phi) {
            return Err(Error::InvalidParameter(format!(
                "phi = {phi} outside [0, 2π]"
            )));
        }
        Ok(Self { theta, phi })
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        let (s, c) = (0.5 * self.theta).sin_cos();
        [Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi)]
    }

    pub fn density(&self) -> CMatrix {
        CMatrix::outer(&self.amplitudes())
    }

    /// `(<σ^1>, <σ^2>, <σ^3>)` computed from the amplitudes.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let [a, b] = self.amplitudes();
        let cross = a.conj() * b;
        [2.0 * cross.re, 2.0 * cross.im, a.norm_sqr() - b.norm_sqr()]
    }
}

/// Rank-one projectors `E^0..E^3` onto `|Ψ->, |Φ->, |Φ+>, |Ψ+>`.
#[derive(Debug, Clone)]
pub struct BellProjectorSet {
    pub projectors: [CMatrix; 4],
}

impl BellProjectorSet {
    pub fn kets() -> [Vec<Complex64>; 4] {
        [
            states::psi_minus(),
            states::phi_minus(),
            states::phi_plus(),
            states::psi_plus(),
        ]
    }

    pub fn standard() -> Self {
        Self {
            projectors: Self::kets().map(|k| CMatrix::outer(&k)),
        }
    }
}

/// Depolarizing-channel probabilities `p_j = tr(E^j ρ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelWeights {
    pub p: [f64; 4],
}

impl ChannelWeights {
    /// Output `Σ_j p_j σ^j |ψ><ψ| σ^j`.
    pub fn apply(&self, psi: &PureQubit) -> CMatrix {
        let input = psi.density();
        let mut out = CMatrix::zeros(2);
        for (j, &pj) in self.p.iter().enumerate() {
            let s = pauli(j);
            out = &out + &(&(&s * &input) * &s).scale_real(pj);
        }
        out
    }

    /// `<ψ|Λ(|ψ><ψ|)|ψ> = p_0 + Σ_{j≥1} p_j <σ^j>²` using the unit norm of `ψ`.
    pub fn fidelity(&self, psi: &PureQubit) -> f64 {
        let n = psi.bloch_vector();
        self.p[0] + self.p[1] * n[0] * n[0] + self.p[2] * n[1] * n[1] + self.p[3] * n[2] * n[2]
    }

    /// Sphere average `p_0 + (p_1 + p_2 + p_3)/3`.
    pub fn average_fidelity(&self) -> f64 {
        self.p[0] + (self.p[1] + self.p[2] + self.p[3]) / 3.0
    }
}

/// How a [`FidelityReport`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FidelityMethod {
    Analytic,
    Quadrature,
    MonteCarlo,
    ProtocolOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityReport {
    pub pointwise: Option<f64>,
    pub average: f64,
    pub method: FidelityMethod,
    pub samples: Option<u64>,
    pub stderr: Option<f64>,
}

impl FidelityReport {
    fn deterministic(average: f64, method: FidelityMethod) -> Self {
        Self {
            pointwise: None,
            average,
            method,
            samples: None,
            stderr: None,
        }
    }
}

fn check_resource(rho: &CMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(format!(
            "resource must be 4x4, got {}x{}",
            rho.dim(),
            rho.dim()
        )));
    }
    rho.check_density()
}

/// `p_j = tr(E^j ρ)` for an arbitrary two-qubit resource.
pub fn bell_weights(rho: &CMatrix) -> Result<ChannelWeights> {
    check_resource(rho)?;
    let mut p = [0.0; 4];
    for (slot, ket) in p.iter_mut().zip(BellProjectorSet::kets()) {
        let w = rho.expectation(&ket)?.re;
        if w < -tolerance::STRUCTURAL {
            return Err(Error::NotDensity(format!("negative Bell weight {w:e}")));
        }
        *slot = w.max(0.0);
    }
    let total: f64 = p.iter().sum();
    Ok(ChannelWeights {
        p: p.map(|w| w / total),
    })
}

/// Closed-form weights for the XX thermal resource:
/// `p_0 = e^{βJ}/Z`, `p_1 = p_2 = cosh(βB_m)/Z`, `p_3 = e^{-βJ}/Z`.
pub fn thermal_bell_weights(p: &ModelParams) -> ChannelWeights {
    let [p00, p_plus, p_minus, p11] = model::populations(p);
    let mixed = 0.5 * (p00 + p11);
    ChannelWeights {
        p: [p_minus, mixed, mixed, p_plus],
    }
}

pub fn apply_channel(rho: &CMatrix, psi: &PureQubit) -> Result<CMatrix> {
    Ok(bell_weights(rho)?.apply(psi))
}

/// `<ψ|out|ψ>` for a 2x2 output state.
pub fn state_fidelity(output: &CMatrix, psi: &PureQubit) -> f64 {
    output
        .expectation(&psi.amplitudes())
        .expect("2-dim state")
        .re
}

/// Input-dependent fidelity for the XX thermal resource (independent of φ):
///
/// `[2 sin²θ cosh βB_m + (3 + cos 2θ) cosh βJ + 2 sin²θ sinh βJ] / [4(cosh βB_m + cosh βJ)]`
pub fn output_fidelity(p: &ModelParams, theta: f64) -> f64 {
    let h = p.scaled();
    let sin2 = theta.sin().powi(2);
    let numerator =
        2.0 * sin2 * h.cosh_y + (3.0 + (2.0 * theta).cos()) * h.cosh_x + 2.0 * sin2 * h.sinh_x;
    numerator / (4.0 * (h.cosh_y + h.cosh_x))
}

/// Sphere-averaged fidelity for the XX thermal resource:
/// `(cosh βB_m + 2 cosh βJ + sinh βJ) / (3(cosh βB_m + cosh βJ))`.
pub fn average_fidelity(p: &ModelParams) -> FidelityReport {
    let h = p.scaled();
    let f = (h.cosh_y + 2.0 * h.cosh_x + h.sinh_x) / (3.0 * (h.cosh_y + h.cosh_x));
    FidelityReport::deterministic(f, FidelityMethod::Analytic)
}

/// Haar-uniform draw: `cos θ ~ U[-1, 1]`, `φ ~ U[0, 2π)`.
pub fn sample_pure_qubit<R: Rng + ?Sized>(rng: &mut R) -> PureQubit {
    let cos_theta: f64 = rng.random_range(-1.0..=1.0);
    let phi: f64 = rng.random_range(0.0..2.0 * PI);
    PureQubit {
        theta: cos_theta.acos(),
        phi,
    }
}

/// Monte Carlo average over Haar-random inputs, reproducible for a fixed seed.
pub fn mc_average_fidelity(rho: &CMatrix, n: u64, seed: u64) -> Result<FidelityReport> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "Monte Carlo needs at least one sample".into(),
        ));
    }
    let weights = bell_weights(rho)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Welford running mean and sum of squared deviations.
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for k in 1..=n {
        let f = weights.fidelity(&sample_pure_qubit(&mut rng));
        let delta = f - mean;
        mean += delta / k as f64;
        m2 += delta * (f - mean);
    }
    let stderr = if n > 1 {
        (m2 / (n - 1) as f64 / n as f64).sqrt()
    } else {
        0.0
    };
    Ok(FidelityReport {
        pointwise: None,
        average: mean,
        method: FidelityMethod::MonteCarlo,
        samples: Some(n),
        stderr: Some(stderr),
    })
}

const QUADRATURE_NODES: usize = 8;

/// Deterministic sphere average of `<ψ|Λ(|ψ><ψ|)|ψ>` evaluated through the
/// channel's output matrix.
///
/// The integrand is a trigonometric polynomial of degree 2 in φ and a
/// polynomial of degree 2 in cos θ, so an 8-point periodic trapezoid in φ and
/// 8-point Gauss-Legendre in cos θ are both exact.
pub fn quadrature_average_fidelity(rho: &CMatrix) -> Result<FidelityReport> {
    let weights = bell_weights(rho)?;
    Ok(FidelityReport::deterministic(
        quadrature_average(&weights),
        FidelityMethod::Quadrature,
    ))
}

pub(crate) fn quadrature_average(weights: &ChannelWeights) -> f64 {
    sphere_average(|psi| Ok(state_fidelity(&weights.apply(psi), psi))).expect("infallible")
}

/// Same quadrature as [`quadrature_average_fidelity`], with every node
/// evaluated by [`protocol_oracle`].
pub fn protocol_average_fidelity(rho: &CMatrix) -> Result<FidelityReport> {
    check_resource(rho)?;
    let average = sphere_average(|psi| Ok(state_fidelity(&protocol_oracle(rho, psi)?.output, psi)))?;
    Ok(FidelityReport::deterministic(
        average,
        FidelityMethod::ProtocolOracle,
    ))
}

fn sphere_average(mut fidelity: impl FnMut(&PureQubit) -> Result<f64>) -> Result<f64> {
    let (nodes, gl_weights) = gauss_legendre(QUADRATURE_NODES);
    let mut total = 0.0;
    for (&u, &w) in nodes.iter().zip(&gl_weights) {
        let theta = u.clamp(-1.0, 1.0).acos();
        let mut ring = 0.0;
        for k in 0..QUADRATURE_NODES {
            let psi = PureQubit {
                theta,
                phi: 2.0 * PI * k as f64 / QUADRATURE_NODES as f64,
            };
            ring += fidelity(&psi)?;
        }
        total += w * ring / QUADRATURE_NODES as f64;
    }
    Ok(0.5 * total)
}

/// Result of a literal three-qubit simulation of the protocol.
#[derive(Debug, Clone)]
pub struct ProtocolRun {
    /// Corrected state of qubit B, summed over measurement outcomes.
    pub output: CMatrix,
    /// Probability of each Bell outcome, in `E^0..E^3` order.
    pub outcome_probabilities: [f64; 4],
}

/// Simulates the protocol on input ⊗ A ⊗ B: projects (input, A) onto each Bell
/// state, applies the outcome's Pauli correction to B and sums the branches.
///
/// Outcome `E^j` is corrected by `σ^j`; with a singlet resource this is the
/// identity channel.
pub fn protocol_oracle(rho: &CMatrix, psi: &PureQubit) -> Result<ProtocolRun> {
    check_resource(rho)?;
    let joint = psi.density().kron(rho)?;
    let id2 = CMatrix::identity(2);

    let mut output = CMatrix::zeros(2);
    let mut outcome_probabilities = [0.0; 4];
    for (j, ket) in BellProjectorSet::kets().iter().enumerate() {
        let projector = CMatrix::outer(ket).kron(&id2)?;
        let branch = &(&projector * &joint) * &projector;
        let bob = trace_out_first_two(&branch);
        outcome_probabilities[j] = bob.trace().re;
        let u = pauli(j);
        output = &output + &(&(&u * &bob) * &u.adjoint());
    }
    Ok(ProtocolRun {
        output,
        outcome_probabilities,
    })
}

/// Partial trace over the first two qubits of an 8x8 operator.
fn trace_out_first_two(m: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(2);
    for b in 0..2 {
        for c in 0..2 {
            let mut acc = ZERO;
            for i in 0..4 {
                acc += m.get(2 * i + b, 2 * i + c);
            }
            out.set(b, c, acc);
        }
    }
    out
}
