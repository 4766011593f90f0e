use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not a density matrix: {0}")]
    NotDensity(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// `J = 0`: the state is separable at every temperature.
    #[error("no entanglement at any temperature when J = 0")]
    NoEntanglement,

    /// `B_m >= J`: the thermal channel never beats the classical 2/3 bound.
    #[error("no classical-beating temperature exists for B_m >= J (eta = {eta})")]
    NoClassicalBeatingRegime { eta: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
