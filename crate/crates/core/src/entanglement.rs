//! Bipartite entanglement of the pure four-qubit state: the wedge-product
//! measure for any bipartition, reduced density matrices by partial trace,
//! and pairwise concurrences.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::model::{Bipartition, FourQubitState, Subsystem};
use crate::scalar::Scalar;

/// Reduced state of one, two, or three subsystems. Hermitian and unit trace
/// by construction from [`reduced_density`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    m: CMat<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Wrap a raw matrix. Intended for tests and callers that build reduced
    /// states by hand; no validation beyond squareness is performed here,
    /// use [`DensityMatrix::check_valid`] for that.
    pub fn from_matrix(m: CMat<T>) -> Self {
        Self { m }
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex<T> {
        self.m[(i, j)]
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.m
    }

    /// Tr rho^2, real by Hermiticity.
    pub fn purity(&self) -> T {
        let n = self.dim();
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                // (rho^2)_ii summed: rho_ij rho_ji = |rho_ij|^2 for Hermitian rho.
                acc += (self.m[(i, j)] * self.m[(j, i)]).re;
            }
        }
        acc
    }

    /// Verify Hermiticity, unit trace, and eigenvalue positivity within the
    /// scalar's tolerances.
    pub fn check_valid(&self) -> Result<()> {
        let herm = self.m.hermiticity_error();
        if herm > T::norm_tol() {
            return Err(Error::InvalidParameter {
                name: "hermiticity",
                value: herm.to_f64().unwrap_or(f64::NAN),
            });
        }
        let tr = self.m.trace();
        let tr_dev = (tr - Complex::new(T::one(), T::zero())).norm();
        if tr_dev > T::norm_tol() {
            return Err(Error::NotNormalized {
                deviation: tr_dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (w, _) = self.m.hermitian_eigen();
        if let Some(min) = w.first() {
            if *min < -T::eigen_clamp() {
                return Err(Error::InvalidParameter {
                    name: "eigenvalue",
                    value: min.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }
}

/// The six pairwise concurrences, each clamped to [0, 1].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcurrenceSet<T> {
    /// C_AB, between the two atoms.
    pub atoms: T,
    /// C_Aa, atom A with its own field.
    pub atom_a_field_a: T,
    /// C_Bb, atom B with its own field.
    pub atom_b_field_b: T,
    /// C_ab, between the two fields.
    pub fields: T,
    /// C_Ab, atom A with the other pair's field.
    pub atom_a_field_b: T,
    /// C_Ba, atom B with the other pair's field.
    pub atom_b_field_a: T,
}

impl<T: Scalar> ConcurrenceSet<T> {
    pub fn zero() -> Self {
        Self {
            atoms: T::zero(),
            atom_a_field_a: T::zero(),
            atom_b_field_b: T::zero(),
            fields: T::zero(),
            atom_a_field_b: T::zero(),
            atom_b_field_a: T::zero(),
        }
    }

    /// Values in the fixed order AB, Aa, Bb, ab, Ab, Ba.
    pub fn as_array(&self) -> [T; 6] {
        [
            self.atoms,
            self.atom_a_field_a,
            self.atom_b_field_b,
            self.fields,
            self.atom_a_field_b,
            self.atom_b_field_a,
        ]
    }
}

/// Partial trace over the complement of `keep`.
///
/// Basis enumeration for the kept part follows the crate bit convention:
/// members in A, B, a, b order, most significant first. Empty or full
/// subsets cannot be expressed by [`Bipartition`], so they are rejected at
/// construction rather than here.
pub fn reduced_density<T: Scalar>(
    state: &FourQubitState<T>,
    keep: Bipartition,
) -> DensityMatrix<T> {
    let kept: Vec<u32> = keep.members().iter().map(|s| s.bit()).collect();
    let traced: Vec<u32> = keep
        .complement()
        .members()
        .iter()
        .map(|s| s.bit())
        .collect();
    let dim = keep.dim();
    let n_env = 1usize << traced.len();

    let compose = |sub: usize, env: usize| -> usize {
        let mut idx = 0usize;
        for (pos, bit) in kept.iter().enumerate() {
            if sub & (1 << (kept.len() - 1 - pos)) != 0 {
                idx |= 1 << bit;
            }
        }
        for (pos, bit) in traced.iter().enumerate() {
            if env & (1 << (traced.len() - 1 - pos)) != 0 {
                idx |= 1 << bit;
            }
        }
        idx
    };

    let mut rho = CMat::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex::new(T::zero(), T::zero());
            for env in 0..n_env {
                acc += state.amplitude(compose(i, env)) * state.amplitude(compose(j, env)).conj();
            }
            rho[(i, j)] = acc;
        }
    }
    DensityMatrix { m: rho }
}

/// Entanglement between the two parts of `part`, from the squared areas
/// spanned by the projections of the state onto the basis of the named part:
///
/// ```text
/// E = 1/2 sum_{m,l} [ <psi_m|psi_m><psi_l|psi_l> - |<psi_m|psi_l>|^2 ]
/// ```
///
/// Zero exactly when the state is a product across the bipartition, and
/// symmetric under complementing the partition.
pub fn wedge_entanglement<T: Scalar>(state: &FourQubitState<T>, part: Bipartition) -> T {
    let kept: Vec<u32> = part.members().iter().map(|s| s.bit()).collect();
    let traced: Vec<u32> = part
        .complement()
        .members()
        .iter()
        .map(|s| s.bit())
        .collect();
    let m_dim = part.dim();
    let n_dim = 1usize << traced.len();

    // psi_m = <m|psi>, unnormalized vectors over the complement.
    let mut proj = vec![vec![Complex::new(T::zero(), T::zero()); n_dim]; m_dim];
    for (m, row) in proj.iter_mut().enumerate() {
        for (n, slot) in row.iter_mut().enumerate() {
            let mut idx = 0usize;
            for (pos, bit) in kept.iter().enumerate() {
                if m & (1 << (kept.len() - 1 - pos)) != 0 {
                    idx |= 1 << bit;
                }
            }
            for (pos, bit) in traced.iter().enumerate() {
                if n & (1 << (traced.len() - 1 - pos)) != 0 {
                    idx |= 1 << bit;
                }
            }
            *slot = state.amplitude(idx);
        }
    }

    let gram = |x: &[Complex<T>], y: &[Complex<T>]| -> Complex<T> {
        x.iter()
            .zip(y.iter())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * *b
            })
    };

    let norms: Vec<T> = proj.iter().map(|v| gram(v, v).re).collect();
    let mut e = T::zero();
    for m in 0..m_dim {
        for l in (m + 1)..m_dim {
            let overlap = gram(&proj[m], &proj[l]).norm_sqr();
            e += norms[m] * norms[l] - overlap;
        }
    }
    // The m = l terms vanish and each unordered pair was counted once, so
    // the 1/2 in the definition is already absorbed.
    if e < T::zero() {
        T::zero()
    } else {
        e
    }
}

/// Signed argument of the X-form concurrence before the final clamp:
/// max(|rho_03| - sqrt(rho_11 rho_22), |rho_12| - sqrt(rho_00 rho_33)).
///
/// Continuous through zero where the concurrence itself flattens, which is
/// what root-bracketing needs.
pub(crate) fn concurrence_x_margin<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    let corner = rho.entry(0, 3).norm() - (rho.entry(1, 1).re * rho.entry(2, 2).re).max(T::zero()).sqrt();
    let inner = rho.entry(1, 2).norm() - (rho.entry(0, 0).re * rho.entry(3, 3).re).max(T::zero()).sqrt();
    corner.max(inner)
}

/// Largest magnitude among entries off the main diagonal and anti-diagonal.
fn x_form_deviation<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    let mut worst = T::zero();
    for i in 0..4 {
        for j in 0..4 {
            if i == j || i + j == 3 {
                continue;
            }
            let mag = rho.entry(i, j).norm();
            if mag > worst {
                worst = mag;
            }
        }
    }
    worst
}

/// Closed-form concurrence for a two-qubit X-form density matrix:
/// C = 2 max(0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44)).
///
/// Rejects matrices with off-pattern entries; those need the general
/// spin-flip construction in [`concurrence_wootters`].
pub fn concurrence_x<T: Scalar>(rho: &DensityMatrix<T>) -> Result<T> {
    assert_eq!(rho.dim(), 4, "X-form concurrence is a two-qubit quantity");
    let dev = x_form_deviation(rho);
    if dev > T::x_form_tol() {
        return Err(Error::NotXForm {
            magnitude: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    let c = T::two() * concurrence_x_margin(rho).max(T::zero());
    Ok(clamp_unit(c))
}

/// Wootters concurrence of an arbitrary two-qubit density matrix:
/// C = max(0, l1 - l2 - l3 - l4) with l_i the decreasing square roots of the
/// eigenvalues of rho rho~, rho~ the spin-flipped conjugate.
///
/// The eigenvalues are taken from the Hermitian positive-semidefinite
/// product sqrt(rho) rho~ sqrt(rho), which has the same spectrum as rho rho~
/// but keeps the whole computation inside the Hermitian eigensolver.
pub fn concurrence_wootters<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    assert_eq!(rho.dim(), 4, "concurrence is a two-qubit quantity");

    // Spin flip: rho~ = (sy x sy) rho* (sy x sy). In the product basis the
    // flip matrix is anti-diagonal (-1, 1, 1, -1).
    let flip_sign = |i: usize| -> T {
        if i == 0 || i == 3 {
            -T::one()
        } else {
            T::one()
        }
    };
    let rho_tilde = CMat::from_fn(4, |i, j| {
        // (F rho* F)_ij = s_i s_j conj(rho_{3-i,3-j})
        rho.entry(3 - i, 3 - j).conj() * Complex::new(flip_sign(i) * flip_sign(j), T::zero())
    });

    // sqrt(rho) by eigendecomposition, clamping round-off negatives.
    let (w, v) = rho.matrix().hermitian_eigen();
    let sqrt_rho = CMat::from_fn(4, |i, j| {
        let mut acc = Complex::new(T::zero(), T::zero());
        for k in 0..4 {
            let lam = clamp_floor(w[k]);
            acc += v[(i, k)] * v[(j, k)].conj() * Complex::new(lam.sqrt(), T::zero());
        }
        acc
    });

    let prod = sqrt_rho.mul(&rho_tilde).mul(&sqrt_rho);
    // Hermitize against accumulated round-off before the final solve.
    let half = T::one() / T::two();
    let herm = CMat::from_fn(4, |i, j| {
        (prod[(i, j)] + prod[(j, i)].conj()) * Complex::new(half, T::zero())
    });
    let (mut mu, _) = herm.hermitian_eigen();
    mu.reverse(); // decreasing
    let lam: Vec<T> = mu.into_iter().map(|m| clamp_floor(m).sqrt()).collect();
    let c = lam[0] - lam[1] - lam[2] - lam[3];
    clamp_unit(c.max(T::zero()))
}

fn clamp_floor<T: Scalar>(x: T) -> T {
    if x < T::zero() {
        debug_assert!(x > -T::eigen_clamp(), "eigenvalue {x:?} below clamp floor");
        T::zero()
    } else {
        x
    }
}

fn clamp_unit<T: Scalar>(c: T) -> T {
    c.min(T::one())
}

const PAIRS: [(Subsystem, Subsystem); 6] = [
    (Subsystem::AtomA, Subsystem::AtomB),
    (Subsystem::AtomA, Subsystem::FieldA),
    (Subsystem::AtomB, Subsystem::FieldB),
    (Subsystem::FieldA, Subsystem::FieldB),
    (Subsystem::AtomA, Subsystem::FieldB),
    (Subsystem::AtomB, Subsystem::FieldA),
];

/// Concurrence of each of the six subsystem pairs: partial trace, then the
/// X-form fast path when the reduced matrix has X structure, the Wootters
/// construction otherwise.
pub fn pairwise_concurrences<T: Scalar>(state: &FourQubitState<T>) -> ConcurrenceSet<T> {
    let mut vals = [T::zero(); 6];
    for (slot, (x, y)) in vals.iter_mut().zip(PAIRS.iter()) {
        let keep = Bipartition::new(&[*x, *y]).expect("pair is a proper subset");
        let rho = reduced_density(state, keep);
        *slot = match concurrence_x(&rho) {
            Ok(c) => c,
            Err(_) => concurrence_wootters(&rho),
        };
    }
    ConcurrenceSet {
        atoms: vals[0],
        atom_a_field_a: vals[1],
        atom_b_field_b: vals[2],
        fields: vals[3],
        atom_a_field_b: vals[4],
        atom_b_field_a: vals[5],
    }
}
