//! Closed-form simulation and entanglement analysis of two independent
//! atom-cavity pairs carrying at most one excitation each - the double
//! Jaynes-Cummings model on its four-qubit subspace.
//!
//! The crate evolves pure states exactly (no integrator), measures
//! entanglement across every bipartition of {atom A, atom B, field a,
//! field b} with the wedge-product measure, computes all six pairwise
//! concurrences, maps the coherent exchange onto a dissipative clock, and
//! locates entanglement sudden death. A Hamiltonian-diagonalization
//! propagator provides an independent cross-check of the closed forms.
//!
//! All numerics are generic over the floating-point [`Scalar`]; the `*64`
//! aliases below pin the double-precision instantiations that the
//! command-line tools use.

pub mod dissipation;
pub mod entanglement;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod model;
pub mod propagator;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision complex amplitude.
pub type C64 = num_complex::Complex<f64>;

pub type SubsystemParams64 = model::SubsystemParams<f64>;
pub type ModelParams64 = model::ModelParams<f64>;
pub type Coefficients64 = model::GenericCoefficients<f64>;
pub type State64 = model::FourQubitState<f64>;
pub type DensityMatrix64 = entanglement::DensityMatrix<f64>;
pub type ConcurrenceSet64 = entanglement::ConcurrenceSet<f64>;
pub type InvariantReport64 = invariants::InvariantReport<f64>;
pub type DeathReport64 = dissipation::DeathReport<f64>;
