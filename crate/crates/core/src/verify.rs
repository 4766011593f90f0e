//! Cross-checks every closed form against its independent numerical route.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::entanglement::{concurrence, thermal_concurrence};
use crate::error::Result;
use crate::linalg::CMatrix;
use crate::model::{gibbs_state, gibbs_state_oracle, ModelParams};
use crate::phase::{self, REFERENCE_TABLE, TABLE_TOLERANCE};
use crate::teleport::{
    self, apply_channel, average_fidelity, mc_average_fidelity, output_fidelity,
    protocol_oracle, quadrature_average_fidelity, sample_pure_qubit, state_fidelity,
    CLASSICAL_FIDELITY,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Points per axis of the (J, B_m, T) grid.
    pub grid_size: usize,
    pub mc_samples: u64,
    /// Multiplies every tolerance; values below 1 tighten the suite.
    pub tolerance_scale: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 2024,
            grid_size: 10,
            mc_samples: 200_000,
            tolerance_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub points: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, points: usize, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            name,
            points,
            max_deviation,
            tolerance,
            passed: max_deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// Evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Deterministic (J, B_m, T) grid with `|βJ|, |βB_m| <= 30`.
pub fn parameter_grid(n: usize) -> Vec<ModelParams> {
    let js = linspace(-2.0, 2.0, n);
    let bs = linspace(-2.5, 2.5, n);
    let ts = linspace(0.1, 4.0, n);
    let mut out = Vec::with_capacity(n * n * n);
    for &j in &js {
        for &b in &bs {
            for &t in &ts {
                out.push(ModelParams::new(j, b, t).expect("grid temperatures are positive"));
            }
        }
    }
    out
}

/// Random parameters with `|βJ|, |βB_m| <= 30`.
pub fn random_params<R: Rng + ?Sized>(rng: &mut R) -> ModelParams {
    let t = rng.random_range(0.1..5.0);
    let j = rng.random_range(-3.0..=3.0);
    let b = rng.random_range(-3.0..=3.0);
    ModelParams::new(j, b, t).expect("positive temperature")
}

/// `A A† / tr(A A†)` for `A` with independent uniform complex entries.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R) -> CMatrix {
    let a = CMatrix::from_fn(4, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = &a * &a.adjoint();
    let tr = m.trace().re;
    m.scale_real(1.0 / tr)
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let scale = config.tolerance_scale;
    let grid = parameter_grid(config.grid_size);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut checks = Vec::new();

    let mut dev: f64 = 0.0;
    for p in &grid {
        let analytic = gibbs_state(p);
        let oracle = gibbs_state_oracle(p)?;
        dev = dev.max(analytic.rho.max_abs_diff(&oracle.rho));
    }
    checks.push(CheckResult::new("gibbs-analytic-vs-expm", grid.len(), dev, 1e-10 * scale));

    let mut dev: f64 = 0.0;
    for p in &grid {
        let general = concurrence(&gibbs_state(p).rho)?.value;
        dev = dev.max((general - thermal_concurrence(p)).abs());
    }
    checks.push(CheckResult::new("concurrence-analytic-vs-wootters", grid.len(), dev, 1e-10 * scale));

    let trials = config.grid_size * config.grid_size;
    let mut dev: f64 = 0.0;
    for _ in 0..trials {
        let rho = random_density(&mut rng);
        let psi = sample_pure_qubit(&mut rng);
        let oracle = protocol_oracle(&rho, &psi)?.output;
        dev = dev.max(oracle.max_abs_diff(&apply_channel(&rho, &psi)?));
    }
    checks.push(CheckResult::new("channel-vs-protocol-oracle", trials, dev, 1e-10 * scale));

    let mut dev: f64 = 0.0;
    for p in &grid {
        let psi = sample_pure_qubit(&mut rng);
        let channel = state_fidelity(&apply_channel(&gibbs_state(p).rho, &psi)?, &psi);
        dev = dev.max((channel - output_fidelity(p, psi.theta)).abs());
    }
    checks.push(CheckResult::new("pointwise-fidelity-vs-channel", grid.len(), dev, 1e-12 * scale));

    let mut dev: f64 = 0.0;
    for p in &grid {
        let quad = quadrature_average_fidelity(&gibbs_state(p).rho)?.average;
        dev = dev.max((quad - average_fidelity(p).average).abs());
    }
    checks.push(CheckResult::new("average-fidelity-vs-quadrature", grid.len(), dev, 1e-10 * scale));

    // deviation measured in standard errors
    let mc_points = 5;
    let mut dev: f64 = 0.0;
    for k in 0..mc_points {
        let p = random_params(&mut rng);
        let r = mc_average_fidelity(&gibbs_state(&p).rho, config.mc_samples, config.seed + k)?;
        let se = r.stderr.unwrap_or(0.0).max(f64::MIN_POSITIVE);
        dev = dev.max((r.average - average_fidelity(&p).average).abs() / se);
    }
    checks.push(CheckResult::new("average-fidelity-vs-monte-carlo", mc_points as usize, dev, 3.0 * scale));

    let rows = phase::reproduce_table1();
    let mut dev: f64 = 0.0;
    for (row, &(_, t_ref, c_ref)) in rows.iter().zip(REFERENCE_TABLE.iter()) {
        dev = dev
            .max((row.t_critical_over_j - t_ref).abs() / t_ref)
            .max((row.residual_concurrence - c_ref).abs());
    }
    checks.push(CheckResult::new("table1-reference", rows.len(), dev, TABLE_TOLERANCE * scale));

    let mut dev: f64 = 0.0;
    for row in &rows {
        let p = ModelParams::new(1.0, row.eta, row.t_critical_over_j)?;
        dev = dev.max((average_fidelity(&p).average - CLASSICAL_FIDELITY).abs());
    }
    checks.push(CheckResult::new("critical-point-fidelity", rows.len(), dev, 1e-10 * scale));

    let mut mismatches = 0usize;
    let mut evaluated = 0usize;
    for p in &grid {
        let h = (p.j / p.t).sinh() - (p.b_m / p.t).cosh();
        if h.abs() < 1e-9 {
            continue;
        }
        evaluated += 1;
        if !phase::threshold_consistent(p) {
            mismatches += 1;
        }
    }
    checks.push(CheckResult::new("threshold-equivalence", evaluated, mismatches as f64, 0.0));

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { checks, passed })
}

/// Weights of the thermal resource obtained numerically and in closed form.
pub fn weights_deviation(p: &ModelParams) -> Result<f64> {
    let numeric = teleport::bell_weights(&gibbs_state(p).rho)?;
    let closed = teleport::thermal_bell_weights(p);
    Ok(numeric
        .p
        .iter()
        .zip(closed.p.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}
