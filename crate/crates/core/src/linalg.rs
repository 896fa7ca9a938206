//! Dense complex matrices just large enough for this crate (dimensions 2-9),
//! plus a cyclic Jacobi eigensolver for Hermitian input.
//!
//! The matrices that appear here are 3x3 subsystem unitaries, 9x9 tensor
//! products, and reduced density matrices up to 8x8, so nothing is tuned for
//! size. The eigensolver works on the Hermitian form directly: each rotation
//! first strips the phase of the pivot entry and then applies a real Givens
//! rotation, which keeps the iteration unconditionally stable.

use num_complex::Complex;

use crate::scalar::Scalar;

/// Square complex matrix in row-major storage.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat<T> {
    n: usize,
    a: Vec<Complex<T>>,
}

impl<T: Scalar> CMat<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            a: vec![Complex::new(T::zero(), T::zero()); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Build from a closure over (row, column).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik.norm_sqr() == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
                    acc + self[(i, j)] * v[j]
                })
            })
            .collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self[(i, i)]
        })
    }

    /// Kronecker product; `self` supplies the coarse block index.
    pub fn kron(&self, rhs: &Self) -> Self {
        let (n, m) = (self.n, rhs.n);
        CMat::from_fn(n * m, |i, j| self[(i / m, j / m)] * rhs[(i % m, j % m)])
    }

    pub fn frobenius_norm(&self) -> T {
        self.a
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    /// Largest magnitude among |a_ij - conj(a_ji)|; zero for exactly
    /// Hermitian input.
    pub fn hermiticity_error(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let dev = (self[(i, j)] - self[(j, i)].conj()).norm();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }

    fn off_diag_norm(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    acc += self[(i, j)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in ascending order and the unitary matrix whose
    /// columns are the matching eigenvectors, so that
    /// `self = V diag(w) V^dagger` up to round-off.
    pub fn hermitian_eigen(&self) -> (Vec<T>, CMat<T>) {
        let n = self.n;
        let mut a = self.clone();
        let mut v = CMat::identity(n);
        let scale = a.frobenius_norm();
        if scale == T::zero() {
            return (vec![T::zero(); n], v);
        }

        const MAX_SWEEPS: usize = 64;
        for _ in 0..MAX_SWEEPS {
            if a.off_diag_norm() <= T::jacobi_tol() * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let mag = apq.norm();
                    if mag <= T::min_positive_value() {
                        continue;
                    }
                    // Unit phase of the pivot; dividing it out reduces the
                    // 2x2 block to the real symmetric case.
                    let phase = apq / mag;
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let tau = (aqq - app) / (T::two() * mag);
                    let t = if tau >= T::zero() {
                        T::one() / (tau + (T::one() + tau * tau).sqrt())
                    } else {
                        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;

                    // Plane rotation J: J[p][p] = c, J[p][q] = s,
                    // J[q][p] = -s * conj(phase), J[q][q] = c * conj(phase).
                    let jqp = -phase.conj() * s;
                    let jqq = phase.conj() * c;

                    // A <- A J (columns p, q), then A <- J^dagger A (rows).
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * c + akq * jqp;
                        a[(k, q)] = akp * s + akq * jqq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = apk * c + aqk * jqp.conj();
                        a[(q, k)] = apk * s + aqk * jqq.conj();
                    }
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c + vkq * jqp;
                        v[(k, q)] = vkp * s + vkq * jqq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a[(i, i)]
                .re
                .partial_cmp(&a[(j, j)].re)
                .expect("eigenvalues are finite")
        });
        let w: Vec<T> = order.iter().map(|&i| a[(i, i)].re).collect();
        let vs = CMat::from_fn(n, |i, j| v[(i, order[j])]);
        (w, vs)
    }
}

impl<T> std::ops::Index<(usize, usize)> for CMat<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.a[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.a[i * self.n + j]
    }
}

/// exp(-i H t) for Hermitian `h`, via eigendecomposition.
///
/// Exact to round-off; there is no step-size or truncation-order choice to
/// make, which is the point of using it as a reference propagator.
pub fn expm_minus_i_hermitian<T: Scalar>(h: &CMat<T>, t: T) -> CMat<T> {
    let n = h.dim();
    let (w, v) = h.hermitian_eigen();
    let phases: Vec<Complex<T>> = w
        .iter()
        .map(|&wk| Complex::from_polar(T::one(), -wk * t))
        .collect();
    // V diag(e^{-i w t}) V^dagger
    let mut out = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                acc += v[(i, k)] * phases[k] * v[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type C64 = Complex<f64>;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn assert_mat_close(a: &CMat<f64>, b: &CMat<f64>, tol: f64) {
        assert_eq!(a.dim(), b.dim());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let dev = (a[(i, j)] - b[(i, j)]).norm();
                assert!(
                    dev <= tol,
                    "entry ({i}, {j}): {:?} vs {:?} (dev {dev:e})",
                    a[(i, j)],
                    b[(i, j)]
                );
            }
        }
    }

    #[test]
    fn identity_multiplication() {
        let m = CMat::from_fn(3, |i, j| c((i * 3 + j) as f64, (i + j) as f64));
        let id = CMat::identity(3);
        assert_mat_close(&m.mul(&id), &m, 0.0);
        assert_mat_close(&id.mul(&m), &m, 0.0);
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let a = CMat::<f64>::identity(3);
        let b = CMat::<f64>::identity(3);
        assert_mat_close(&a.kron(&b), &CMat::identity(9), 0.0);
    }

    #[test]
    fn eigen_of_diagonal() {
        let mut m = CMat::zeros(3);
        m[(0, 0)] = c(2.0, 0.0);
        m[(1, 1)] = c(-1.0, 0.0);
        m[(2, 2)] = c(0.5, 0.0);
        let (w, _) = m.hermitian_eigen();
        assert_eq!(w, vec![-1.0, 0.5, 2.0]);
    }

    #[test]
    fn eigen_reconstructs_hermitian_matrix() {
        // Fixed Hermitian 4x4 with complex off-diagonals.
        let mut h = CMat::zeros(4);
        let entries = [
            (0, 0, 1.5, 0.0),
            (1, 1, -0.25, 0.0),
            (2, 2, 0.75, 0.0),
            (3, 3, 2.0, 0.0),
            (0, 1, 0.3, -0.7),
            (0, 2, -0.1, 0.2),
            (0, 3, 0.9, 0.4),
            (1, 2, 0.05, -0.6),
            (1, 3, -0.8, 0.1),
            (2, 3, 0.2, 0.2),
        ];
        for &(i, j, re, im) in &entries {
            h[(i, j)] = c(re, im);
            if i != j {
                h[(j, i)] = c(re, -im);
            }
        }
        let (w, v) = h.hermitian_eigen();

        // V is unitary.
        let vtv = v.adjoint().mul(&v);
        assert_mat_close(&vtv, &CMat::identity(4), 1e-12);

        // V diag(w) V^dagger recovers H.
        let mut d = CMat::zeros(4);
        for i in 0..4 {
            d[(i, i)] = c(w[i], 0.0);
        }
        let rec = v.mul(&d).mul(&v.adjoint());
        assert_mat_close(&rec, &h, 1e-12);

        // Eigenvalues ascend.
        for k in 1..4 {
            assert!(w[k] >= w[k - 1]);
        }
    }

    #[test]
    fn expm_zero_time_is_identity() {
        let mut h = CMat::zeros(3);
        h[(0, 1)] = c(0.0, 1.0);
        h[(1, 0)] = c(0.0, -1.0);
        h[(2, 2)] = c(3.0, 0.0);
        let u = expm_minus_i_hermitian(&h, 0.0);
        assert_mat_close(&u, &CMat::identity(3), 1e-14);
    }

    #[test]
    fn expm_two_level_matches_rabi_formula() {
        // H = g sigma_x on a two-level system: exp(-iHt) has cos/sin entries.
        let g = 0.83;
        let t = 1.7;
        let mut h = CMat::zeros(2);
        h[(0, 1)] = c(g, 0.0);
        h[(1, 0)] = c(g, 0.0);
        let u = expm_minus_i_hermitian(&h, t);
        let expect_diag = (g * t).cos();
        let expect_off = -(g * t).sin();
        assert!((u[(0, 0)] - c(expect_diag, 0.0)).norm() < 1e-13);
        assert!((u[(0, 1)] - c(0.0, expect_off)).norm() < 1e-13);

        // Unitarity.
        let utu = u.adjoint().mul(&u);
        assert_mat_close(&utu, &CMat::identity(2), 1e-13);
    }

    #[test]
    fn eigen_handles_zero_matrix() {
        let z = CMat::<f64>::zeros(3);
        let (w, v) = z.hermitian_eigen();
        assert_eq!(w, vec![0.0; 3]);
        assert_mat_close(&v, &CMat::identity(3), 0.0);
    }

    #[test]
    fn eigen_works_at_f32() {
        let mut h = CMat::<f32>::zeros(2);
        h[(0, 0)] = Complex::new(1.0, 0.0);
        h[(0, 1)] = Complex::new(0.5, -0.25);
        h[(1, 0)] = Complex::new(0.5, 0.25);
        h[(1, 1)] = Complex::new(-1.0, 0.0);
        let (w, v) = h.hermitian_eigen();
        assert!(w[0] < w[1]);
        let vtv = v.adjoint().mul(&v);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((vtv[(i, j)].re - expect).abs() < 1e-5);
                assert!(vtv[(i, j)].im.abs() < 1e-5);
            }
        }
    }
}
