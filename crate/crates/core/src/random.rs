//! Reproducible random states and parameters for randomized checks.
//!
//! Results must be byte-identical across runs and reproducible from a short
//! description, so the whole stack is pinned here: ChaCha8 keyed by the
//! 64-bit seed, uniform doubles from the top 53 bits of each output word,
//! and normal deviates by the Box-Muller transform. Nothing depends on a
//! distribution library's sampling internals.

use num_complex::Complex;

use crate::model::{GenericCoefficients, ModelParams, SubsystemParams};
use crate::scalar::Scalar;

pub use rand_chacha::ChaCha8Rng;
pub use rand_core::{RngCore, SeedableRng};

/// Uniform in [0, 1): the top 53 bits of one ChaCha word.
pub fn uniform_01<T: Scalar>(rng: &mut impl RngCore) -> T {
    let u = rng.next_u64() >> 11;
    T::lit(u as f64 * (1.0 / 9_007_199_254_740_992.0))
}

/// Uniform in [lo, hi).
pub fn uniform_in<T: Scalar>(rng: &mut impl RngCore, lo: T, hi: T) -> T {
    lo + (hi - lo) * uniform_01(rng)
}

/// A pair of independent standard normals via Box-Muller.
pub fn standard_normal_pair<T: Scalar>(rng: &mut impl RngCore) -> (T, T) {
    // Guard the log: shift u1 away from zero.
    let tiny = T::lit(1e-300);
    let u1 = uniform_01::<T>(rng).max(tiny);
    let u2 = uniform_01::<T>(rng);
    let r = (-T::two() * u1.ln()).sqrt();
    let theta = T::two() * T::PI() * u2;
    (r * theta.cos(), r * theta.sin())
}

/// A state drawn uniformly from the unit sphere of the nine-amplitude
/// space: nine complex standard normals, normalized.
pub fn random_coefficients<T: Scalar>(rng: &mut impl RngCore) -> GenericCoefficients<T> {
    loop {
        let mut amps = [Complex::new(T::zero(), T::zero()); 9];
        for slot in amps.iter_mut() {
            let (re, im) = standard_normal_pair(rng);
            *slot = Complex::new(re, im);
        }
        let norm = amps
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt();
        if norm < T::lit(1e-6) {
            continue; // essentially impossible, but the retry is free
        }
        for slot in amps.iter_mut() {
            *slot /= norm;
        }
        let c = [amps[0], amps[1], amps[2], amps[3], amps[4]];
        let d = [amps[5], amps[6], amps[7], amps[8]];
        return GenericCoefficients::new(c, d).expect("normalized by construction");
    }
}

/// Non-identical parameters covering the randomized-check ranges:
/// g_A uniform in [0.5, 2], g_B/g_A in [0.2, 5], detuning-to-coupling
/// ratios in [-2, 2], field frequencies in [0.1, 5].
pub fn random_params<T: Scalar>(rng: &mut impl RngCore) -> ModelParams<T> {
    let g_a = uniform_in(rng, T::lit(0.5), T::two());
    let ratio = uniform_in(rng, T::lit(0.2), T::lit(5.0));
    let g_b = g_a * ratio;
    let mut sub = |g: T| {
        let nu = uniform_in(rng, T::lit(0.1), T::lit(5.0));
        let delta = g * uniform_in(rng, T::lit(-2.0), T::two());
        SubsystemParams::new(nu, nu + delta, g).expect("coupling is positive")
    };
    let sub_a = sub(g_a);
    let sub_b = sub(g_b);
    ModelParams::new(sub_a, sub_b)
}

/// A full randomized case: state, parameters, and a time up to ten coupling
/// periods of the slower subsystem.
pub fn random_case<T: Scalar>(
    rng: &mut impl RngCore,
) -> (GenericCoefficients<T>, ModelParams<T>, T) {
    let coeffs = random_coefficients(rng);
    let params: ModelParams<T> = random_params(rng);
    let g_min = params.sub_a.g.min(params.sub_b.g);
    let t = uniform_in(rng, T::zero(), T::lit(10.0) / g_min);
    (coeffs, params, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (x, _, tx) = random_case::<f64>(&mut a);
            let (y, _, ty) = random_case::<f64>(&mut b);
            assert_eq!(x.as_array(), y.as_array());
            assert_eq!(tx, ty);
        }
    }

    #[test]
    fn coefficients_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let c = random_coefficients::<f64>(&mut rng);
            assert!((c.norm_sqr().sqrt() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn params_respect_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let p = random_params::<f64>(&mut rng);
            let ratio = p.sub_b.g / p.sub_a.g;
            assert!((0.2..=5.0).contains(&ratio));
            for sub in [p.sub_a, p.sub_b] {
                assert!(sub.g > 0.0);
                let rel = sub.delta() / sub.g;
                assert!((-2.0..=2.0).contains(&rel));
            }
        }
    }

    #[test]
    fn normals_have_sane_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 20_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n / 2 {
            let (a, b): (f64, f64) = standard_normal_pair(&mut rng);
            sum += a + b;
            sum_sq += a * a + b * b;
        }
        let mean = sum / n as f64;
        let var = sum_sq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((var - 1.0).abs() < 0.05, "variance {var}");
    }
}
