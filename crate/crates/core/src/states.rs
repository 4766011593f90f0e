//! Computational and Bell basis kets for two qubits.
//!
//! Ordering is `|00>, |01>, |10>, |11>` with the left qubit first.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::linalg::{ONE, ZERO};

const H: Complex64 = Complex64::new(FRAC_1_SQRT_2, 0.0);
const MH: Complex64 = Complex64::new(-FRAC_1_SQRT_2, 0.0);

pub fn ket00() -> Vec<Complex64> {
    vec![ONE, ZERO, ZERO, ZERO]
}

pub fn ket11() -> Vec<Complex64> {
    vec![ZERO, ZERO, ZERO, ONE]
}

/// `(|01> + |10>)/√2`
pub fn psi_plus() -> Vec<Complex64> {
    vec![ZERO, H, H, ZERO]
}

/// `(|01> - |10>)/√2`, the singlet.
pub fn psi_minus() -> Vec<Complex64> {
    vec![ZERO, H, MH, ZERO]
}

/// `(|00> + |11>)/√2`
pub fn phi_plus() -> Vec<Complex64> {
    vec![H, ZERO, ZERO, H]
}

/// `(|00> - |11>)/√2`
pub fn phi_minus() -> Vec<Complex64> {
    vec![H, ZERO, ZERO, MH]
}
