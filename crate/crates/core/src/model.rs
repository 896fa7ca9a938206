//! System parameters, basis conventions, state containers, and initial-state
//! constructors.
//!
//! # Basis conventions
//!
//! The four qubits are, in order of significance, atom `A`, atom `B`, field
//! `a`, and field `b`. A product basis state maps to the index
//!
//! ```text
//! index = 8*A + 4*B + 2*a + b
//! ```
//!
//! where an excited atom or an occupied field mode contributes a 1 bit. With
//! at most one excitation per atom-cavity pair, each pair lives in the
//! three-level subspace spanned by (excited atom, empty field), (ground atom,
//! one photon), (ground atom, empty field) - ordered exactly so throughout
//! the crate. All angles are radians.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// One atom-cavity pair: field frequency `nu`, atomic transition frequency
/// `omega`, and coupling constant `g`, all angular frequencies (hbar = 1).
///
/// Detuning and Rabi frequency are derived on demand so they can never drift
/// out of sync with the stored parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SubsystemParams<T> {
    pub nu: T,
    pub omega: T,
    pub g: T,
}

impl<T: Scalar> SubsystemParams<T> {
    pub fn new(nu: T, omega: T, g: T) -> Result<Self> {
        for (name, v) in [("nu", nu), ("omega", omega), ("g", g)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value: v.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        if g < T::zero() {
            return Err(Error::InvalidParameter {
                name: "g",
                value: g.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { nu, omega, g })
    }

    /// Detuning between atom and cavity, omega - nu.
    pub fn delta(&self) -> T {
        self.omega - self.nu
    }

    /// Rabi frequency sqrt(g^2 + delta^2/4) on the one-excitation manifold.
    pub fn rabi(&self) -> T {
        let d = self.delta();
        (self.g * self.g + d * d / T::lit(4.0)).sqrt()
    }

    /// Exact resonance, `omega == nu`.
    pub fn resonant(nu: T, g: T) -> Result<Self> {
        Self::new(nu, nu, g)
    }
}

/// Parameters for both pairs. The two systems need not be identical.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams<T> {
    pub sub_a: SubsystemParams<T>,
    pub sub_b: SubsystemParams<T>,
}

impl<T: Scalar> ModelParams<T> {
    pub fn new(sub_a: SubsystemParams<T>, sub_b: SubsystemParams<T>) -> Self {
        Self { sub_a, sub_b }
    }

    /// Both systems resonant with coupling `g` and field frequency `nu`.
    pub fn symmetric_resonant(nu: T, g: T) -> Result<Self> {
        let p = SubsystemParams::resonant(nu, g)?;
        Ok(Self { sub_a: p, sub_b: p })
    }
}

/// The nine complex amplitudes spanning the in-scope two-excitation-at-most
/// subspace:
///
/// ```text
/// c1 |up up 0 0>   c2 |dn up 1 0>   c3 |up dn 0 1>   c4 |dn dn 1 1>
/// c5 |dn dn 0 0>   d1 |up dn 0 0>   d2 |dn up 0 0>   d3 |dn dn 1 0>
/// d4 |dn dn 0 1>
/// ```
///
/// Normalized on construction; evolution preserves the norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenericCoefficients<T> {
    pub c1: Complex<T>,
    pub c2: Complex<T>,
    pub c3: Complex<T>,
    pub c4: Complex<T>,
    pub c5: Complex<T>,
    pub d1: Complex<T>,
    pub d2: Complex<T>,
    pub d3: Complex<T>,
    pub d4: Complex<T>,
}

impl<T: Scalar> GenericCoefficients<T> {
    /// Build from the `c` and `d` amplitude groups, rejecting non-normalized
    /// input.
    pub fn new(c: [Complex<T>; 5], d: [Complex<T>; 4]) -> Result<Self> {
        let coeffs = Self {
            c1: c[0],
            c2: c[1],
            c3: c[2],
            c4: c[3],
            c5: c[4],
            d1: d[0],
            d2: d[1],
            d3: d[2],
            d4: d[3],
        };
        let dev = (coeffs.norm_sqr().sqrt() - T::one()).abs();
        if dev > T::norm_tol() {
            return Err(Error::NotNormalized {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(coeffs)
    }

    pub(crate) fn from_matrix(m: &[[Complex<T>; 3]; 3]) -> Self {
        Self {
            c1: m[0][0],
            c3: m[0][1],
            d1: m[0][2],
            c2: m[1][0],
            c4: m[1][1],
            d3: m[1][2],
            d2: m[2][0],
            d4: m[2][1],
            c5: m[2][2],
        }
    }

    /// Amplitudes arranged as a 3x3 matrix over the per-pair three-level
    /// bases: rows index subsystem Aa, columns subsystem Bb.
    pub(crate) fn to_matrix(self) -> [[Complex<T>; 3]; 3] {
        [
            [self.c1, self.c3, self.d1],
            [self.c2, self.c4, self.d3],
            [self.d2, self.d4, self.c5],
        ]
    }

    /// Amplitudes in declaration order c1..c5, d1..d4.
    pub fn as_array(&self) -> [Complex<T>; 9] {
        [
            self.c1, self.c2, self.c3, self.c4, self.c5, self.d1, self.d2, self.d3, self.d4,
        ]
    }

    pub fn norm_sqr(&self) -> T {
        self.as_array()
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }
}

/// Angle-range guard shared by the Bell-like constructors.
fn check_angles<T: Scalar>(alpha: T, beta: T) -> Result<()> {
    let half_pi = T::FRAC_PI_2();
    if !(alpha >= T::zero() && alpha <= half_pi) {
        return Err(Error::AngleOutOfRange {
            name: "alpha",
            value: alpha.to_f64().unwrap_or(f64::NAN),
            min: 0.0,
            max: std::f64::consts::FRAC_PI_2,
        });
    }
    if !(beta >= T::zero() && beta <= T::PI()) {
        return Err(Error::AngleOutOfRange {
            name: "beta",
            value: beta.to_f64().unwrap_or(f64::NAN),
            min: 0.0,
            max: std::f64::consts::PI,
        });
    }
    Ok(())
}

/// Bell-like state cos(alpha) |up up> + sin(alpha) e^{i beta} |dn dn> with
/// both fields empty.
///
/// Angles outside 0 <= alpha <= pi/2, 0 <= beta <= pi are rejected rather
/// than wrapped, to surface caller bugs.
pub fn make_bell_phi<T: Scalar>(alpha: T, beta: T) -> Result<GenericCoefficients<T>> {
    check_angles(alpha, beta)?;
    let zero = Complex::new(T::zero(), T::zero());
    let mut c = [zero; 5];
    let d = [zero; 4];
    c[0] = Complex::new(alpha.cos(), T::zero());
    c[4] = Complex::from_polar(alpha.sin(), beta);
    GenericCoefficients::new(c, d)
}

/// Bell-like state cos(alpha) |up dn> + sin(alpha) e^{i beta} |dn up> with
/// both fields empty.
pub fn make_bell_psi<T: Scalar>(alpha: T, beta: T) -> Result<GenericCoefficients<T>> {
    check_angles(alpha, beta)?;
    let zero = Complex::new(T::zero(), T::zero());
    let c = [zero; 5];
    let mut d = [zero; 4];
    d[0] = Complex::new(alpha.cos(), T::zero());
    d[1] = Complex::from_polar(alpha.sin(), beta);
    GenericCoefficients::new(c, d)
}

/// Pure state of the full four-qubit register, 16 amplitudes indexed by
/// `8*A + 4*B + 2*a + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct FourQubitState<T> {
    amp: [Complex<T>; 16],
}

/// Basis-state indices of the nine in-scope amplitudes, in c1..c5, d1..d4
/// order.
pub(crate) const COEFF_INDICES: [usize; 9] = [
    0b1100, // c1 |up up 0 0>
    0b0110, // c2 |dn up 1 0>
    0b1001, // c3 |up dn 0 1>
    0b0011, // c4 |dn dn 1 1>
    0b0000, // c5 |dn dn 0 0>
    0b1000, // d1 |up dn 0 0>
    0b0100, // d2 |dn up 0 0>
    0b0010, // d3 |dn dn 1 0>
    0b0001, // d4 |dn dn 0 1>
];

impl<T: Scalar> FourQubitState<T> {
    /// Build from raw amplitudes, rejecting non-normalized input.
    pub fn new(amp: [Complex<T>; 16]) -> Result<Self> {
        let state = Self { amp };
        let dev = (state.norm() - T::one()).abs();
        if dev > T::norm_tol() {
            return Err(Error::NotNormalized {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(state)
    }

    /// Index of the basis state with the given occupation bits.
    pub fn basis_index(atom_a: bool, atom_b: bool, field_a: bool, field_b: bool) -> usize {
        ((atom_a as usize) << 3) | ((atom_b as usize) << 2) | ((field_a as usize) << 1)
            | (field_b as usize)
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amp[index]
    }

    pub fn amplitudes(&self) -> &[Complex<T>; 16] {
        &self.amp
    }

    pub fn norm(&self) -> T {
        self.amp
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// |<self|other>|, the fidelity between two pure states.
    pub fn fidelity(&self, other: &Self) -> T {
        self.amp
            .iter()
            .zip(other.amp.iter())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| {
                acc + x.conj() * *y
            })
            .norm()
    }

    /// Read the nine in-scope amplitudes back out, or `None` if the state
    /// has support outside that subspace.
    pub fn coefficients(&self) -> Option<GenericCoefficients<T>> {
        let mut leak = T::zero();
        for (i, z) in self.amp.iter().enumerate() {
            if !COEFF_INDICES.contains(&i) {
                leak += z.norm_sqr();
            }
        }
        if leak.sqrt() > T::norm_tol() {
            return None;
        }
        let g = |k: usize| self.amp[COEFF_INDICES[k]];
        Some(GenericCoefficients {
            c1: g(0),
            c2: g(1),
            c3: g(2),
            c4: g(3),
            c5: g(4),
            d1: g(5),
            d2: g(6),
            d3: g(7),
            d4: g(8),
        })
    }
}

/// Place the nine coefficients at their four-qubit basis indices; the other
/// seven amplitudes are exactly zero.
pub fn embed<T: Scalar>(coeffs: &GenericCoefficients<T>) -> FourQubitState<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let mut amp = [zero; 16];
    for (k, z) in coeffs.as_array().into_iter().enumerate() {
        amp[COEFF_INDICES[k]] = z;
    }
    FourQubitState { amp }
}

/// One of the four physical subsystems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsystem {
    AtomA,
    AtomB,
    FieldA,
    FieldB,
}

impl Subsystem {
    /// Bit position in the basis index.
    pub fn bit(self) -> u32 {
        match self {
            Subsystem::AtomA => 3,
            Subsystem::AtomB => 2,
            Subsystem::FieldA => 1,
            Subsystem::FieldB => 0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Subsystem::AtomA => "A",
            Subsystem::AtomB => "B",
            Subsystem::FieldA => "a",
            Subsystem::FieldB => "b",
        }
    }

    pub const ALL: [Subsystem; 4] = [
        Subsystem::AtomA,
        Subsystem::AtomB,
        Subsystem::FieldA,
        Subsystem::FieldB,
    ];
}

/// A split of {A, B, a, b} into one named part and its complement.
///
/// Entanglement across a bipartition is symmetric under complement, so seven
/// canonical values cover all fourteen nonempty proper subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    mask: u8,
}

impl Bipartition {
    pub fn new(members: &[Subsystem]) -> Result<Self> {
        let mut mask = 0u8;
        for m in members {
            mask |= 1 << m.bit();
        }
        Self::from_mask(mask)
    }

    pub fn from_mask(mask: u8) -> Result<Self> {
        if mask == 0 || mask >= 0b1111 {
            return Err(Error::InvalidBipartition);
        }
        Ok(Self { mask })
    }

    pub fn mask(&self) -> u8 {
        self.mask
    }

    pub fn complement(&self) -> Self {
        Self {
            mask: !self.mask & 0b1111,
        }
    }

    pub fn contains(&self, s: Subsystem) -> bool {
        self.mask & (1 << s.bit()) != 0
    }

    /// Members in A, B, a, b order.
    pub fn members(&self) -> Vec<Subsystem> {
        Subsystem::ALL
            .into_iter()
            .filter(|s| self.contains(*s))
            .collect()
    }

    /// Hilbert-space dimension of the named part.
    pub fn dim(&self) -> usize {
        1 << self.mask.count_ones()
    }

    pub fn label(&self) -> String {
        self.members().iter().map(|s| s.label()).collect()
    }

    /// The seven canonical partitions: {A}, {B}, {a}, {b}, {A,a}, {A,b},
    /// {A,B}.
    pub fn canonical() -> [Bipartition; 7] {
        [
            Bipartition { mask: 0b1000 },
            Bipartition { mask: 0b0100 },
            Bipartition { mask: 0b0010 },
            Bipartition { mask: 0b0001 },
            Bipartition { mask: 0b1010 },
            Bipartition { mask: 0b1001 },
            Bipartition { mask: 0b1100 },
        ]
    }

    /// The atom-field pair Aa, the partition whose entanglement is conserved.
    pub fn pair_aa() -> Bipartition {
        Bipartition { mask: 0b1010 }
    }

    /// The two atoms.
    pub fn atoms() -> Bipartition {
        Bipartition { mask: 0b1100 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    type C64 = Complex<f64>;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn derived_detuning_and_rabi() {
        let p = SubsystemParams::new(1.0, 1.6, 0.9).unwrap();
        assert!(close(p.delta(), 0.6, 1e-15));
        // rabi is defined by exactly this expression of the derived detuning.
        let d = p.delta();
        assert_eq!(p.rabi(), (p.g * p.g + d * d / 4.0).sqrt());
        assert!((p.rabi() * p.rabi() - p.g * p.g - d * d / 4.0).abs() < 1e-15);
        assert!(p.rabi() >= p.g);

        let res = SubsystemParams::resonant(2.0, 0.5).unwrap();
        assert_eq!(res.delta(), 0.0);
        assert_eq!(res.rabi(), res.g);
    }

    #[test]
    fn negative_coupling_rejected() {
        assert!(SubsystemParams::new(1.0, 1.0, -0.1).is_err());
        assert!(SubsystemParams::new(f64::NAN, 1.0, 0.1).is_err());
    }

    #[test]
    fn bell_phi_amplitudes() {
        // alpha = pi/4 recovers the Bell state.
        let b = make_bell_phi(FRAC_PI_4, 0.0).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b.c1 - C64::new(r, 0.0)).norm() < 1e-15);
        assert!((b.c5 - C64::new(r, 0.0)).norm() < 1e-15);
        assert_eq!(b.c2, C64::new(0.0, 0.0));

        // alpha = 0 is a product state.
        let p = make_bell_phi(0.0, 1.0).unwrap();
        assert_eq!(p.c1, C64::new(1.0, 0.0));
        assert_eq!(p.c5, C64::new(0.0, 0.0));

        let t = make_bell_phi(FRAC_PI_6, 0.0).unwrap();
        assert!((t.c1.re - 3.0f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((t.c5.re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn bell_psi_amplitudes() {
        let b = make_bell_psi(FRAC_PI_4, 0.0).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((b.d1 - C64::new(r, 0.0)).norm() < 1e-15);
        assert!((b.d2 - C64::new(r, 0.0)).norm() < 1e-15);

        let full = make_bell_psi(FRAC_PI_2, 0.0).unwrap();
        assert!(full.d1.norm() < 1e-15);
        assert!((full.d2 - C64::new(1.0, 0.0)).norm() < 1e-15);

        let phased = make_bell_psi(FRAC_PI_3, FRAC_PI_2).unwrap();
        assert!((phased.d1 - C64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((phased.d2 - C64::new(0.0, 3.0f64.sqrt() / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn angle_ranges_enforced() {
        assert!(make_bell_phi(-0.01, 0.0).is_err());
        assert!(make_bell_phi(FRAC_PI_2 + 0.01, 0.0).is_err());
        assert!(make_bell_phi(0.3, -0.01).is_err());
        assert!(make_bell_phi(0.3, PI + 0.01).is_err());
        assert!(make_bell_psi(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn embedding_indices() {
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);

        let mut c = [zero; 5];
        c[0] = one;
        let s = embed(&GenericCoefficients::new(c, [zero; 4]).unwrap());
        assert_eq!(s.amplitude(0b1100), one); // |up up 0 0>

        let mut d = [zero; 4];
        d[0] = one;
        let s = embed(&GenericCoefficients::new([zero; 5], d).unwrap());
        assert_eq!(s.amplitude(0b1000), one); // |up dn 0 0>

        let mut c = [zero; 5];
        c[3] = one;
        let s = embed(&GenericCoefficients::new(c, [zero; 4]).unwrap());
        assert_eq!(s.amplitude(0b0011), one); // |dn dn 1 1>
    }

    #[test]
    fn embed_round_trips_and_preserves_norm() {
        let coeffs = make_bell_phi(0.9, 2.1).unwrap();
        let state = embed(&coeffs);
        assert!(close(state.norm(), 1.0, 1e-15));
        let back = state.coefficients().expect("in-scope support");
        for (x, y) in coeffs.as_array().iter().zip(back.as_array().iter()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn off_manifold_state_has_no_coefficients() {
        let zero = C64::new(0.0, 0.0);
        let mut amp = [zero; 16];
        amp[0b1111] = C64::new(1.0, 0.0); // two excitations in each pair
        let s = FourQubitState::new(amp).unwrap();
        assert!(s.coefficients().is_none());
    }

    #[test]
    fn non_normalized_rejected() {
        let zero = C64::new(0.0, 0.0);
        let mut c = [zero; 5];
        c[0] = C64::new(0.9, 0.0);
        assert!(matches!(
            GenericCoefficients::new(c, [zero; 4]),
            Err(Error::NotNormalized { .. })
        ));

        let mut amp = [zero; 16];
        amp[3] = C64::new(1.1, 0.0);
        assert!(FourQubitState::new(amp).is_err());
    }

    #[test]
    fn bipartition_canonical_set() {
        let canon = Bipartition::canonical();
        assert_eq!(canon.len(), 7);
        let labels: Vec<String> = canon.iter().map(|p| p.label()).collect();
        assert_eq!(labels, vec!["A", "B", "a", "b", "Aa", "Ab", "AB"]);

        // Complements cover the remaining subsets.
        assert_eq!(Bipartition::pair_aa().complement().label(), "Bb");
        assert_eq!(canon[0].complement().label(), "Bab");
    }

    #[test]
    fn bipartition_rejects_empty_and_full() {
        assert!(Bipartition::new(&[]).is_err());
        assert!(Bipartition::new(&Subsystem::ALL).is_err());
        assert!(Bipartition::from_mask(0b1111).is_err());
        assert!(Bipartition::from_mask(0).is_err());
    }

    #[test]
    fn basis_index_convention() {
        assert_eq!(FourQubitState::<f64>::basis_index(true, true, false, false), 12);
        assert_eq!(FourQubitState::<f64>::basis_index(true, false, false, true), 9);
        assert_eq!(FourQubitState::<f64>::basis_index(false, false, false, false), 0);
    }

    #[test]
    fn bell_constructors_normalized_at_f32() {
        let b = make_bell_phi(0.6f32, 0.4f32).unwrap();
        assert!((b.norm_sqr().sqrt() - 1.0).abs() < f32::norm_tol());
    }
}
