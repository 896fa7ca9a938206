//! Mapping of the coherent exchange onto a dissipative-decay picture, and
//! location of entanglement sudden-death and revival times.
//!
//! While excitation flows monotonically into the field (Omega t up to pi/2),
//! the pair behaves like an atom decaying into a reservoir with rate gamma
//! under the identification exp(-gamma t') = cos^2(Omega t). The mapping is
//! exposed only on that window; outside it the exchange reverses and the
//! analogy has no meaning.

use crate::entanglement::{concurrence_x_margin, reduced_density};
use crate::error::{Error, Result};
use crate::model::{embed, Bipartition, GenericCoefficients, ModelParams};
use crate::propagator::evolve_closed_form;
use crate::scalar::Scalar;

/// Dissipative clock t' with exp(-gamma t') = cos^2(Omega t).
///
/// Errors for Omega t at or past pi/2, where t' diverges, and for
/// non-positive gamma.
pub fn jc_to_dissipative_time<T: Scalar>(t: T, omega_rabi: T, gamma: T) -> Result<T> {
    if gamma <= T::zero() || !gamma.is_finite() {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma.to_f64().unwrap_or(f64::NAN),
        });
    }
    let phase = omega_rabi * t;
    if phase < T::zero() || phase >= T::FRAC_PI_2() {
        return Err(Error::DissipativeDomain {
            omega_t: phase.to_f64().unwrap_or(f64::NAN),
        });
    }
    let c = phase.cos();
    Ok((T::one() / (c * c)).ln() / gamma)
}

/// Time at which the atom-atom entanglement of a phi-family state first
/// vanishes, on resonance with identical couplings.
///
/// The dead zone opens when tan(alpha) < sin^2(Omega t); for tan(alpha) >= 1
/// that never happens before the exchange reverses and there is no sudden
/// death, only isolated zeros.
pub fn sudden_death_onset<T: Scalar>(alpha: T, omega_rabi: T) -> Result<Option<T>> {
    if !(alpha >= T::zero() && alpha <= T::FRAC_PI_2()) {
        return Err(Error::AngleOutOfRange {
            name: "alpha",
            value: alpha.to_f64().unwrap_or(f64::NAN),
            min: 0.0,
            max: std::f64::consts::FRAC_PI_2,
        });
    }
    if omega_rabi <= T::zero() {
        return Err(Error::InvalidParameter {
            name: "omega_rabi",
            value: omega_rabi.to_f64().unwrap_or(f64::NAN),
        });
    }
    // tan(alpha) < 1 iff alpha < pi/4; comparing angles directly avoids the
    // boundary rounding of tan at alpha = pi/4.
    if alpha >= T::FRAC_PI_4() {
        return Ok(None);
    }
    Ok(Some(alpha.tan().sqrt().asin() / omega_rabi))
}

/// Sudden-death and revival times located on a sampled trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct DeathReport<T> {
    /// Times at which the atom-atom concurrence reaches zero and stays
    /// there, ascending and interleaved with `revival_times`.
    pub death_times: Vec<T>,
    /// Times at which it becomes positive again.
    pub revival_times: Vec<T>,
    /// Death times inside the first monotone-transfer window, mapped to the
    /// dissipative clock with gamma = 1.
    pub death_times_dissipative: Vec<T>,
}

/// Scan the atom-atom concurrence along the closed-form trajectory and
/// refine every zero crossing by bisection.
///
/// The root function is the signed X-form argument of the reduced atom
/// matrix rather than the concurrence itself: past a death point the
/// concurrence is identically zero, so bisection on it would be ill-posed
/// when approaching the revival edge from inside the dead zone. Brackets are
/// refined to |dt| below 1e-9 of the subsystem-A coupling time.
pub fn death_revival_scan<T: Scalar>(
    coeffs: &GenericCoefficients<T>,
    params: &ModelParams<T>,
    t_max: T,
    n_samples: usize,
) -> Result<DeathReport<T>> {
    const MIN_SAMPLES: usize = 100;
    if n_samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: n_samples,
        });
    }
    if t_max <= T::zero() || t_max.is_nan() {
        return Err(Error::InvalidParameter {
            name: "t_max",
            value: t_max.to_f64().unwrap_or(f64::NAN),
        });
    }

    let margin_at = |t: T| -> T {
        let state = embed(&evolve_closed_form(coeffs, params, t));
        let rho = reduced_density(&state, Bipartition::atoms());
        concurrence_x_margin(&rho)
    };

    let step = t_max / T::from_usize(n_samples - 1).expect("sample count fits");
    let g_a = params.sub_a.g;
    let time_scale = if g_a > T::zero() {
        T::one() / g_a
    } else {
        t_max
    };
    let tol = T::lit(1e-9) * time_scale;

    let mut death = Vec::new();
    let mut revival = Vec::new();
    let mut prev_t = T::zero();
    let mut prev_s = margin_at(prev_t);
    for k in 1..n_samples {
        let t = step * T::from_usize(k).expect("sample index fits");
        let s = margin_at(t);
        if (prev_s > T::zero() && s < T::zero()) || (prev_s < T::zero() && s > T::zero()) {
            let (mut lo, mut hi) = (prev_t, t);
            let mut s_lo = prev_s;
            while hi - lo > tol {
                let mid = (lo + hi) / T::two();
                let s_mid = margin_at(mid);
                if (s_lo > T::zero()) == (s_mid > T::zero()) {
                    lo = mid;
                    s_lo = s_mid;
                } else {
                    hi = mid;
                }
            }
            let root = (lo + hi) / T::two();
            if prev_s > T::zero() {
                death.push(root);
            } else {
                revival.push(root);
            }
        }
        prev_t = t;
        prev_s = s;
    }

    let omega_a = params.sub_a.rabi();
    let mut dissipative = Vec::new();
    for &tau in &death {
        if omega_a * tau < T::FRAC_PI_2() {
            dissipative.push(jc_to_dissipative_time(tau, omega_a, T::one())?);
        }
    }

    Ok(DeathReport {
        death_times: death,
        revival_times: revival,
        death_times_dissipative: dissipative,
    })
}
