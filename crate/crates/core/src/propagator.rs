//! Time evolution of the nine-amplitude state under the product of the two
//! independent pair propagators, by closed-form coefficient maps and by an
//! independent Hamiltonian-diagonalization reference path.
//!
//! Each atom-cavity pair evolves inside the three-level subspace
//! (|up 0>, |dn 1>, |dn 0>). On that subspace the propagator is
//!
//! ```text
//!         [ f   g   0 ]
//! U(t) =  [ g   f~  0 ]        f  = e^{-i nu t} [cos(Om t) - i (D/2Om) sin(Om t)]
//!         [ 0   0   h ]        g  = -i (g/Om) e^{-i nu t} sin(Om t)
//!                              h  = e^{i D t / 2}
//! ```
//!
//! with detuning D, Rabi frequency Om, and f~ the branch with the sign of the
//! detuning term flipped. Global phases are kept; nothing here strips them.

use num_complex::Complex;

use crate::linalg::{expm_minus_i_hermitian, CMat};
use crate::model::{GenericCoefficients, ModelParams, SubsystemParams};
use crate::scalar::Scalar;

/// Amplitude for an initially excited atom to still be excited at `t`.
///
/// Falls back to the bare field phase e^{-i nu t} when both `g` and the
/// detuning vanish (the Rabi frequency is zero and the manifold does not
/// evolve).
pub fn f_amp<T: Scalar>(p: &SubsystemParams<T>, t: T) -> Complex<T> {
    let om = p.rabi();
    let field_phase = Complex::from_polar(T::one(), -p.nu * t);
    if om == T::zero() {
        return field_phase;
    }
    let (s, c) = (om * t).sin_cos();
    let detuning_part = p.delta() / (T::two() * om) * s;
    field_phase * Complex::new(c, -detuning_part)
}

/// Amplitude for the excitation to have transferred into the field at `t`.
/// Zero by continuity when `g` is zero.
pub fn g_amp<T: Scalar>(p: &SubsystemParams<T>, t: T) -> Complex<T> {
    let om = p.rabi();
    if p.g == T::zero() || om == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let s = (om * t).sin();
    let field_phase = Complex::from_polar(T::one(), -p.nu * t);
    field_phase * Complex::new(T::zero(), -(p.g / om) * s)
}

/// Phase picked up by the unexcited pair state, e^{i delta t / 2}. Always
/// unit modulus.
pub fn h_amp<T: Scalar>(p: &SubsystemParams<T>, t: T) -> Complex<T> {
    Complex::from_polar(T::one(), p.delta() * t / T::two())
}

/// The conjugate-detuning branch pairing with [`f_amp`]: the same expression
/// with the sign of the detuning term flipped. It propagates the one-photon
/// state back onto itself.
fn f_bar_amp<T: Scalar>(p: &SubsystemParams<T>, t: T) -> Complex<T> {
    let om = p.rabi();
    let field_phase = Complex::from_polar(T::one(), -p.nu * t);
    if om == T::zero() {
        return field_phase;
    }
    let (s, c) = (om * t).sin_cos();
    let detuning_part = p.delta() / (T::two() * om) * s;
    field_phase * Complex::new(c, detuning_part)
}

/// Closed-form propagator of one pair over the basis (|up 0>, |dn 1>,
/// |dn 0>).
#[derive(Clone, Debug, PartialEq)]
pub struct SubsystemUnitary<T> {
    m: [[Complex<T>; 3]; 3],
}

impl<T: Scalar> SubsystemUnitary<T> {
    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.m[row][col]
    }

    pub fn matrix(&self) -> &[[Complex<T>; 3]; 3] {
        &self.m
    }

    /// Max elementwise deviation of U^dagger U from the identity.
    pub fn unitarity_error(&self) -> T {
        let mut worst = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..3 {
                    acc += self.m[k][i].conj() * self.m[k][j];
                }
                let expect = if i == j { T::one() } else { T::zero() };
                let dev = (acc - Complex::new(expect, T::zero())).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }
}

/// Assemble the closed-form pair propagator at time `t`.
///
/// The entries coupling |dn 0> to the one-excitation manifold are exactly
/// zero: excitation number is conserved pair by pair.
pub fn subsystem_unitary<T: Scalar>(p: &SubsystemParams<T>, t: T) -> SubsystemUnitary<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let f = f_amp(p, t);
    let g = g_amp(p, t);
    SubsystemUnitary {
        m: [
            [f, g, zero],
            [g, f_bar_amp(p, t), zero],
            [zero, zero, h_amp(p, t)],
        ],
    }
}

/// Evolve by the closed-form maps: amplitudes as a 3x3 matrix `C` transform
/// as `U_A C U_B^T`.
pub fn evolve_closed_form<T: Scalar>(
    coeffs: &GenericCoefficients<T>,
    params: &ModelParams<T>,
    t: T,
) -> GenericCoefficients<T> {
    let ua = subsystem_unitary(&params.sub_a, t);
    let ub = subsystem_unitary(&params.sub_b, t);
    let c = coeffs.to_matrix();
    let zero = Complex::new(T::zero(), T::zero());

    let mut tmp = [[zero; 3]; 3]; // U_A C
    for (i, row) in tmp.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = (0..3).map(|k| ua.entry(i, k) * c[k][j]).sum();
        }
    }
    let mut out = [[zero; 3]; 3]; // (U_A C) U_B^T
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = (0..3).map(|k| tmp[i][k] * ub.entry(j, k)).sum();
        }
    }
    GenericCoefficients::from_matrix(&out)
}

/// The full pair Hamiltonian restricted to (|up 0>, |dn 1>, |dn 0>):
/// diagonal (nu/2 + omega/2, 3 nu/2 - omega/2, nu/2 - omega/2), coupling `g`
/// between the first two.
pub fn subsystem_hamiltonian<T: Scalar>(p: &SubsystemParams<T>) -> CMat<T> {
    let half = T::one() / T::two();
    let mut h = CMat::zeros(3);
    h[(0, 0)] = Complex::new(half * (p.nu + p.omega), T::zero());
    h[(1, 1)] = Complex::new(T::lit(1.5) * p.nu - half * p.omega, T::zero());
    h[(2, 2)] = Complex::new(half * (p.nu - p.omega), T::zero());
    h[(0, 1)] = Complex::new(p.g, T::zero());
    h[(1, 0)] = Complex::new(p.g, T::zero());
    h
}

/// Reference propagation: exponentiate each pair Hamiltonian by Hermitian
/// eigendecomposition and apply the 9x9 tensor product to the amplitude
/// vector.
///
/// This path never touches the closed-form expressions, which is what makes
/// the agreement between the two a meaningful check.
pub fn oracle_evolve<T: Scalar>(
    coeffs: &GenericCoefficients<T>,
    params: &ModelParams<T>,
    t: T,
) -> GenericCoefficients<T> {
    let ua = expm_minus_i_hermitian(&subsystem_hamiltonian(&params.sub_a), t);
    let ub = expm_minus_i_hermitian(&subsystem_hamiltonian(&params.sub_b), t);
    let u = ua.kron(&ub);

    // Flatten row-major over (Aa index, Bb index), matching the kron layout.
    let m = coeffs.to_matrix();
    let mut v = Vec::with_capacity(9);
    for row in &m {
        v.extend_from_slice(row);
    }
    let w = u.mul_vec(&v);
    let out = [
        [w[0], w[1], w[2]],
        [w[3], w[4], w[5]],
        [w[6], w[7], w[8]],
    ];
    GenericCoefficients::from_matrix(&out)
}

/// Per-pair excitation number expectation values (atom excited plus photon
/// present), used to check that evolution conserves them.
pub fn excitation_expectations<T: Scalar>(coeffs: &GenericCoefficients<T>) -> (T, T) {
    let m = coeffs.to_matrix();
    let mut ex_a = T::zero();
    let mut ex_b = T::zero();
    for (i, row) in m.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let w = z.norm_sqr();
            // Three-level index 2 is the unexcited pair state.
            if i < 2 {
                ex_a += w;
            }
            if j < 2 {
                ex_b += w;
            }
        }
    }
    (ex_a, ex_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_bell_phi, make_bell_psi};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    type C64 = Complex<f64>;

    fn amp_dev(a: &GenericCoefficients<f64>, b: &GenericCoefficients<f64>) -> f64 {
        a.as_array()
            .iter()
            .zip(b.as_array().iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn f_amp_reference_points() {
        let p = SubsystemParams::new(1.3, 1.3, 0.7).unwrap();
        assert!((f_amp(&p, 0.0) - C64::new(1.0, 0.0)).norm() < 1e-15);

        // Resonance: |f| = |cos(g t)|, zero at t = pi/(2g).
        let t = FRAC_PI_2 / p.g;
        assert!(f_amp(&p, t).norm() < 1e-15);

        // Detuned: delta = 2g makes Om = sqrt(2) g; at Om t = pi/2 the
        // cosine dies and |f|^2 = (delta/2Om)^2 = 1/2.
        let g = 0.9;
        let p = SubsystemParams::new(1.0, 1.0 + 2.0 * g, g).unwrap();
        let t = PI / (2.0 * 2.0f64.sqrt() * g);
        assert!((f_amp(&p, t).norm_sqr() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn g_amp_reference_points() {
        let p = SubsystemParams::new(0.8, 0.8, 1.1).unwrap();
        assert_eq!(g_amp(&p, 0.0), C64::new(0.0, 0.0));

        // Full transfer on resonance.
        let t = FRAC_PI_2 / p.g;
        assert!((g_amp(&p, t).norm() - 1.0).abs() < 1e-15);

        // |f|^2 + |g|^2 = 1 on resonance for arbitrary times.
        for &t in &[0.3, 1.7, 4.1, 9.9] {
            let total = f_amp(&p, t).norm_sqr() + g_amp(&p, t).norm_sqr();
            assert!((total - 1.0).abs() < 1e-14);
        }

        // Uncoupled pair never transfers.
        let free = SubsystemParams::new(0.8, 1.9, 0.0).unwrap();
        assert_eq!(g_amp(&free, 2.2), C64::new(0.0, 0.0));
    }

    #[test]
    fn h_amp_reference_points() {
        let p = SubsystemParams::new(1.0, 1.0, 0.4).unwrap();
        assert_eq!(h_amp(&p, 0.0), C64::new(1.0, 0.0));
        assert_eq!(h_amp(&p, 5.3), C64::new(1.0, 0.0)); // resonant: delta = 0

        // delta = pi at t = 1 gives e^{i pi/2} = i.
        let p = SubsystemParams::new(1.0, 1.0 + PI, 0.4).unwrap();
        assert!((h_amp(&p, 1.0) - C64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn unitary_structure() {
        let p = SubsystemParams::new(1.7, 2.4, 0.6).unwrap();
        let u0 = subsystem_unitary(&p, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((u0.entry(i, j) - C64::new(expect, 0.0)).norm() < 1e-15);
            }
        }

        // Half Rabi period on resonance: diag(-e^{-i nu pi/g}, same, 1).
        let p = SubsystemParams::new(1.3, 1.3, 0.9).unwrap();
        let t = PI / p.g;
        let u = subsystem_unitary(&p, t);
        let expect = -Complex::from_polar(1.0, -p.nu * t);
        assert!((u.entry(0, 0) - expect).norm() < 1e-13);
        assert!((u.entry(1, 1) - expect).norm() < 1e-13);
        assert!((u.entry(2, 2) - C64::new(1.0, 0.0)).norm() < 1e-13);
        assert!(u.entry(0, 1).norm() < 1e-13);

        // The ground column never mixes with the one-excitation block.
        for &t in &[0.1, 0.9, 3.3] {
            let u = subsystem_unitary(&p, t);
            assert_eq!(u.entry(0, 2), C64::new(0.0, 0.0));
            assert_eq!(u.entry(2, 0), C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn unitarity_and_block_orthogonality() {
        // |f|^2 + |g|^2 = 1 and f g* + g fbar* = 0 hold off resonance too.
        for &(nu, om, g) in &[(1.0, 1.8, 0.6), (2.0, 1.1, 1.4), (0.5, 0.5, 0.0)] {
            let p = SubsystemParams::new(nu, om, g).unwrap();
            for &t in &[0.0, 0.37, 1.44, 6.02] {
                let u = subsystem_unitary(&p, t);
                assert!(u.unitarity_error() < 1e-13, "nu={nu} om={om} g={g} t={t}");
                let cross = u.entry(0, 0) * u.entry(0, 1).conj()
                    + u.entry(0, 1) * u.entry(1, 1).conj();
                assert!(cross.norm() < 1e-14);
            }
        }
    }

    #[test]
    fn unitary_matches_hamiltonian_exponential() {
        // Matrix-level agreement with the diagonalization route.
        use crate::linalg::expm_minus_i_hermitian;
        for &(nu, om, g) in &[(1.3, 2.0, 0.8), (0.9, 0.9, 1.6), (2.1, 1.4, 0.3)] {
            let p = SubsystemParams::new(nu, om, g).unwrap();
            for &t in &[0.2, 1.1, 4.7] {
                let u = subsystem_unitary(&p, t);
                let reference = expm_minus_i_hermitian(&subsystem_hamiltonian(&p), t);
                for i in 0..3 {
                    for j in 0..3 {
                        let dev = (u.entry(i, j) - reference[(i, j)]).norm();
                        assert!(dev < 1e-12, "({i},{j}) dev {dev:e} at t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn hamiltonian_commutes_with_excitation_number() {
        // diag(1, 1, 0) counts the pair excitation; the commutator vanishes
        // entry by entry.
        let p = SubsystemParams::new(1.1, 1.9, 0.7).unwrap();
        let h = subsystem_hamiltonian(&p);
        let mut n_op = crate::linalg::CMat::<f64>::zeros(3);
        n_op[(0, 0)] = C64::new(1.0, 0.0);
        n_op[(1, 1)] = C64::new(1.0, 0.0);
        let comm_a = h.mul(&n_op);
        let comm_b = n_op.mul(&h);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(comm_a[(i, j)], comm_b[(i, j)]);
            }
        }
    }

    #[test]
    fn closed_form_matches_oracle_on_fixed_cases() {
        let params = ModelParams::new(
            SubsystemParams::new(1.1, 1.7, 0.8).unwrap(),
            SubsystemParams::new(0.9, 0.4, 1.3).unwrap(),
        );
        for (coeffs, t) in [
            (make_bell_phi(0.6, 1.9).unwrap(), 2.3),
            (make_bell_psi(1.1, 0.2).unwrap(), 0.77),
            (make_bell_phi(FRAC_PI_4, 0.0).unwrap(), 5.5),
        ] {
            let closed = evolve_closed_form(&coeffs, &params, t);
            let oracle = oracle_evolve(&coeffs, &params, t);
            assert!(amp_dev(&closed, &oracle) < 1e-12);
        }
    }

    #[test]
    fn oracle_identity_at_zero_time() {
        let coeffs = make_bell_psi(0.9, 2.0).unwrap();
        let params = ModelParams::new(
            SubsystemParams::new(1.0, 2.0, 0.7).unwrap(),
            SubsystemParams::new(1.5, 1.1, 0.2).unwrap(),
        );
        let out = oracle_evolve(&coeffs, &params, 0.0);
        assert!(amp_dev(&coeffs, &out) < 1e-13);
    }

    #[test]
    fn uncoupled_evolution_is_pure_phase() {
        let coeffs = make_bell_phi(0.8f64, 0.3).unwrap();
        let params = ModelParams::new(
            SubsystemParams::new(1.0, 2.4, 0.0).unwrap(),
            SubsystemParams::new(0.7, 0.1, 0.0).unwrap(),
        );
        let out = oracle_evolve(&coeffs, &params, 3.9);
        for (x, y) in coeffs.as_array().iter().zip(out.as_array().iter()) {
            assert!((x.norm() - y.norm()).abs() < 1e-13);
        }
    }

    #[test]
    fn bell_phi_half_transfer_point() {
        // Phi(pi/4) on resonance with equal couplings at t = pi/(2g):
        // everything in the excited branch lands on |dn dn 1 1>.
        let g = 1.0;
        let params = ModelParams::new(
            SubsystemParams::new(1.2, 1.2, g).unwrap(),
            SubsystemParams::new(0.8, 0.8, g).unwrap(),
        );
        let t = FRAC_PI_2 / g;
        let out = evolve_closed_form(&make_bell_phi(FRAC_PI_4, 0.0).unwrap(), &params, t);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let expect_c4 = -Complex::from_polar(r, -(params.sub_a.nu + params.sub_b.nu) * t);
        assert!((out.c4 - expect_c4).norm() < 1e-13);
        assert!((out.c5 - C64::new(r, 0.0)).norm() < 1e-13);
        for z in [out.c1, out.c2, out.c3, out.d1, out.d2, out.d3, out.d4] {
            assert!(z.norm() < 1e-13);
        }
    }

    #[test]
    fn bell_psi_coefficient_magnitudes() {
        let g: f64 = 0.75;
        let alpha: f64 = 0.5;
        let params = ModelParams::symmetric_resonant(1.0, g).unwrap();
        let coeffs = make_bell_psi(alpha, 0.0).unwrap();
        for &t in &[0.0, 0.4, 1.9, 3.0] {
            let out = evolve_closed_form(&coeffs, &params, t);
            let envelope = (g * t).cos().abs();
            assert!((out.d1.norm() - alpha.cos() * envelope).abs() < 1e-13);
            assert!((out.d2.norm() - alpha.sin() * envelope).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_time_is_identity_for_closed_form() {
        let coeffs = make_bell_psi(0.3, 1.0).unwrap();
        let params = ModelParams::new(
            SubsystemParams::new(1.0, 1.9, 0.5).unwrap(),
            SubsystemParams::new(2.0, 1.2, 0.8).unwrap(),
        );
        let out = evolve_closed_form(&coeffs, &params, 0.0);
        assert!(amp_dev(&coeffs, &out) < 1e-15);
    }

    #[test]
    fn excitation_numbers_conserved() {
        let coeffs = make_bell_phi(0.7f64, 0.9).unwrap();
        let params = ModelParams::new(
            SubsystemParams::new(1.4, 0.6, 1.1).unwrap(),
            SubsystemParams::new(0.9, 1.8, 0.4).unwrap(),
        );
        let (ex_a0, ex_b0) = excitation_expectations(&coeffs);
        for &t in &[0.21, 1.3, 4.8, 11.0] {
            for out in [
                evolve_closed_form(&coeffs, &params, t),
                oracle_evolve(&coeffs, &params, t),
            ] {
                let (ex_a, ex_b) = excitation_expectations(&out);
                assert!((ex_a - ex_a0).abs() < 1e-12);
                assert!((ex_b - ex_b0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_agrees_at_f32() {
        let params = ModelParams::new(
            SubsystemParams::new(1.0f32, 1.4, 0.8).unwrap(),
            SubsystemParams::new(0.9f32, 0.9, 1.2).unwrap(),
        );
        let coeffs = make_bell_phi(0.6f32, 0.0).unwrap();
        let closed = evolve_closed_form(&coeffs, &params, 1.9);
        let oracle = oracle_evolve(&coeffs, &params, 1.9);
        let dev = closed
            .as_array()
            .iter()
            .zip(oracle.as_array().iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0f32, f32::max);
        assert!(dev < 1e-4);
    }
}
