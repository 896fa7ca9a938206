//! Floating-point abstraction for the model math.
//!
//! Everything downstream is written against [`Scalar`] so the same code runs
//! at `f32` or `f64`. Tolerances are attached to the scalar type because a
//! meaningful threshold at `f64` is below the round-off floor of `f32`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar type underlying all state amplitudes and parameters.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
    /// Acceptance tolerance for state-vector and coefficient normalization.
    fn norm_tol() -> Self;

    /// Magnitude threshold below which an off-pattern density-matrix entry
    /// still counts as zero when detecting X-form structure.
    fn x_form_tol() -> Self;

    /// Floor for clamping small negative eigenvalues of positive-semidefinite
    /// matrices before taking square roots.
    fn eigen_clamp() -> Self;

    /// Relative off-diagonal threshold at which the Jacobi eigensolver stops.
    fn jacobi_tol() -> Self;

    /// Shorthand for embedding an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal conversion")
    }

    /// `2` as a scalar; division by two shows up everywhere in the detuning
    /// algebra.
    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Scalar for f64 {
    fn norm_tol() -> Self {
        1e-12
    }

    fn x_form_tol() -> Self {
        1e-10
    }

    fn eigen_clamp() -> Self {
        1e-10
    }

    fn jacobi_tol() -> Self {
        1e-14
    }
}

impl Scalar for f32 {
    fn norm_tol() -> Self {
        1e-5
    }

    fn x_form_tol() -> Self {
        1e-4
    }

    fn eigen_clamp() -> Self {
        1e-4
    }

    fn jacobi_tol() -> Self {
        1e-6
    }
}
