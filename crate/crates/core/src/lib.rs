//! Thermal entanglement and standard teleportation through the two-qubit
//! Heisenberg XX chain in a magnetic field.
//!
//! The crate computes the Gibbs state of the chain, its Wootters concurrence,
//! the generalized depolarizing channel that standard teleportation induces
//! with that state as a resource, and the field-dependent temperature above
//! which the channel no longer beats the classical 2/3 fidelity. Every closed
//! form is paired with a brute-force numerical route so the two can be
//! checked against each other (see [`verify`]).

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod model;
pub mod phase;
pub mod quadrature;
pub mod states;
pub mod teleport;
pub mod verify;

pub use error::{Error, Result};
pub use model::{ModelParams, ThermalState};
