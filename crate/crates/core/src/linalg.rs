//! Eigendecomposition of small dense complex matrices, wrapped behind the
//! crate's tensor type with deterministic ordering and phase conventions.

use ndarray::Array2;
use ndarray_linalg::{Eig, Eigh, Inverse, UPLO};
use num_complex::Complex64;

use crate::error::{AkltError, Result};
use crate::tensor::{matmul, square_dim, DenseTensor};

/// Residual tolerance for eigenpair checks, relative to the matrix norm.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Eigenvalues with matching unit-norm right eigenvectors.
///
/// The pair order is fixed by the routine that produced the decomposition:
/// [`eig_general`] sorts by descending real part (ties by descending
/// magnitude, then lexicographically on the vector entries), while
/// [`eig_hermitian`] returns real eigenvalues in ascending order. Each
/// eigenvector's largest-magnitude component is rotated to be real positive
/// so repeated runs emit identical output.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<Complex64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
    pub dimension: usize,
}

impl SpectralDecomposition {
    /// Largest residual ‖Av − λv‖ over all pairs.
    #[allow(clippy::needless_range_loop)] // row-major kernel; indices mirror i*n+j
    pub fn max_residual(&self, a: &DenseTensor) -> f64 {
        let n = self.dimension;
        let mut worst = 0.0f64;
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let mut res = 0.0f64;
            for i in 0..n {
                let mut av = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    av += a.entries()[i * n + j] * v[j];
                }
                res += (av - lambda * v[i]).norm_sqr();
            }
            worst = worst.max(res.sqrt());
        }
        worst
    }
}

fn to_array(a: &DenseTensor) -> Result<Array2<Complex64>> {
    let n = square_dim(a)?;
    Array2::from_shape_vec((n, n), a.entries().to_vec())
        .map_err(|e| AkltError::Argument(format!("matrix conversion failed: {e}")))
}

fn from_array(a: &Array2<Complex64>) -> DenseTensor {
    let (r, c) = a.dim();
    DenseTensor::new(vec![r, c], a.iter().copied().collect()).expect("shape consistent")
}

/// Rotate the largest-magnitude component of `v` to be real positive.
fn canonical_phase(v: &mut [Complex64]) {
    let mut best = 0usize;
    let mut best_norm = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        let n = z.norm();
        if n > best_norm + 1e-14 {
            best_norm = n;
            best = i;
        }
    }
    if best_norm > 0.0 {
        let phase = v[best] / best_norm;
        let rot = phase.conj();
        for z in v.iter_mut() {
            *z *= rot;
        }
    }
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}

fn check_residual(a: &DenseTensor, dec: &SpectralDecomposition, routine: &str) -> Result<()> {
    let scale = a.norm().max(1e-300);
    let res = dec.max_residual(a);
    if res <= RESIDUAL_TOL * scale {
        Ok(())
    } else {
        Err(AkltError::Numeric(format!(
            "{routine} residual {res:.3e} exceeds {:.1e} × ‖A‖",
            RESIDUAL_TOL
        )))
    }
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order with orthonormal eigenvectors. Rejects non-Hermitian input.
pub fn eig_hermitian(a: &DenseTensor) -> Result<SpectralDecomposition> {
    let n = square_dim(a)?;
    let scale = a.norm().max(1e-300);
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((a.entries()[i * n + j] - a.entries()[j * n + i].conj()).norm());
        }
    }
    if dev > RESIDUAL_TOL * scale {
        return Err(AkltError::Argument(format!(
            "matrix is not Hermitian: max |A - A†| entry {dev:.3e}"
        )));
    }
    let arr = to_array(a)?;
    let (vals, vecs) = arr
        .eigh(UPLO::Lower)
        .map_err(|e| AkltError::Numeric(format!("hermitian eigensolve failed: {e}")))?;
    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for (k, &w) in vals.iter().enumerate() {
        eigenvalues.push(Complex64::new(w, 0.0));
        // The backend solves the column-major view of the row-major buffer,
        // i.e. Aᵀ = conj(A); its eigenvectors are the conjugates of A's. The
        // residual check below guards this assumption.
        let mut v: Vec<Complex64> = vecs.column(k).iter().map(|z| z.conj()).collect();
        normalize(&mut v);
        canonical_phase(&mut v);
        eigenvectors.push(v);
    }
    let dec = SpectralDecomposition {
        eigenvalues,
        eigenvectors,
        dimension: n,
    };
    check_residual(a, &dec, "eig_hermitian")?;
    Ok(dec)
}

/// Right eigendecomposition of a general square matrix, sorted by descending
/// real part, ties broken by descending magnitude and then lexicographically
/// on the eigenvector entries.
pub fn eig_general(a: &DenseTensor) -> Result<SpectralDecomposition> {
    let n = square_dim(a)?;
    let arr = to_array(a)?;
    let (vals, vecs) = arr
        .eig()
        .map_err(|e| AkltError::Numeric(format!("general eigensolve failed: {e}")))?;
    let mut pairs: Vec<(Complex64, Vec<Complex64>)> = (0..n)
        .map(|k| {
            let mut v: Vec<Complex64> = vecs.column(k).iter().copied().collect();
            normalize(&mut v);
            canonical_phase(&mut v);
            (vals[k], v)
        })
        .collect();
    pairs.sort_by(|(la, va), (lb, vb)| {
        lb.re
            .partial_cmp(&la.re)
            .unwrap()
            .then(lb.norm().partial_cmp(&la.norm()).unwrap())
            .then_with(|| {
                for (za, zb) in va.iter().zip(vb) {
                    let ord = za
                        .re
                        .partial_cmp(&zb.re)
                        .unwrap()
                        .then(za.im.partial_cmp(&zb.im).unwrap());
                    if ord != std::cmp::Ordering::Equal {
                        return ord;
                    }
                }
                std::cmp::Ordering::Equal
            })
    });
    let dec = SpectralDecomposition {
        eigenvalues: pairs.iter().map(|(l, _)| *l).collect(),
        eigenvectors: pairs.into_iter().map(|(_, v)| v).collect(),
        dimension: n,
    };
    check_residual(a, &dec, "eig_general")?;
    Ok(dec)
}

/// Matrix power through a spectral decomposition: V diag(λⁿ) V⁻¹. The
/// independent check path against repeated squaring.
pub fn matrix_power_via_spectrum(a: &DenseTensor, n: usize) -> Result<DenseTensor> {
    let dim = square_dim(a)?;
    let dec = eig_general(a)?;
    let mut v = DenseTensor::zeros(vec![dim, dim]);
    for (k, vec) in dec.eigenvectors.iter().enumerate() {
        for (i, value) in vec.iter().enumerate() {
            v.entries_mut()[i * dim + k] = *value;
        }
    }
    let v_inv = from_array(
        &to_array(&v)?
            .inv()
            .map_err(|e| AkltError::Numeric(format!("eigenbasis inversion failed: {e}")))?,
    );
    let mut lam = DenseTensor::zeros(vec![dim, dim]);
    for (k, l) in dec.eigenvalues.iter().enumerate() {
        lam.entries_mut()[k * dim + k] = l.powu(n as u32);
    }
    matmul(&matmul(&v, &lam)?, &v_inv)
}

/// Σ λ v v† reconstruction for Hermitian decompositions.
pub fn reconstruct_hermitian(dec: &SpectralDecomposition) -> DenseTensor {
    let n = dec.dimension;
    let mut out = DenseTensor::zeros(vec![n, n]);
    for (lambda, v) in dec.eigenvalues.iter().zip(&dec.eigenvectors) {
        for i in 0..n {
            for j in 0..n {
                out.entries_mut()[i * n + j] += lambda * v[i] * v[j].conj();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(values: &[f64]) -> DenseTensor {
        let n = values.len();
        let mut t = DenseTensor::zeros(vec![n, n]);
        for (i, &v) in values.iter().enumerate() {
            t.entries_mut()[i * n + i] = c(v, 0.0);
        }
        t
    }

    #[test]
    fn hermitian_diagonal_sorted_ascending() {
        let dec = eig_hermitian(&diag(&[3.0, 1.0, 2.0])).unwrap();
        let got: Vec<f64> = dec.eigenvalues.iter().map(|l| l.re).collect();
        assert_abs_diff_eq!(got[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(got[1], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(got[2], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn hermitian_pauli_x() {
        let sx = DenseTensor::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let dec = eig_hermitian(&sx).unwrap();
        assert_abs_diff_eq!(dec.eigenvalues[0].re, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.eigenvalues[1].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn hermitian_rejects_general_matrix() {
        let a = DenseTensor::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(eig_hermitian(&a).is_err());
    }

    #[test]
    fn general_identity_all_ones() {
        let dec = eig_general(&DenseTensor::identity(4)).unwrap();
        for l in &dec.eigenvalues {
            assert_abs_diff_eq!(l.re, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(l.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn general_sorts_descending_real_part() {
        let dec = eig_general(&diag(&[-0.25, 0.75, -0.25, -0.25])).unwrap();
        assert_abs_diff_eq!(dec.eigenvalues[0].re, 0.75, epsilon = 1e-12);
        for l in &dec.eigenvalues[1..] {
            assert_abs_diff_eq!(l.re, -0.25, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigenvector_phase_is_canonical() {
        let sx = DenseTensor::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let dec = eig_general(&sx).unwrap();
        for v in &dec.eigenvectors {
            let mut best = v[0];
            for z in v {
                if z.norm() > best.norm() + 1e-14 {
                    best = *z;
                }
            }
            assert!(best.re > 0.0);
            assert_abs_diff_eq!(best.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn complex_hermitian_eigenpairs_satisfy_the_eigenequation() {
        let a = DenseTensor::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.25), c(0.0, -1.0)],
            vec![c(0.5, -0.25), c(-2.0, 0.0), c(0.75, 0.0)],
            vec![c(0.0, 1.0), c(0.75, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        let dec = eig_hermitian(&a).unwrap();
        assert!(dec.max_residual(&a) < 1e-12);
    }

    #[test]
    fn complex_general_eigenpairs_satisfy_the_eigenequation() {
        let a = DenseTensor::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0), c(2.0, 0.0)],
        ])
        .unwrap();
        let dec = eig_general(&a).unwrap();
        assert!(dec.max_residual(&a) < 1e-12);
        assert_abs_diff_eq!(dec.eigenvalues[0].re, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dec.eigenvalues[1].re, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn hermitian_reconstruction_matches_input() {
        let a = DenseTensor::from_rows(&[
            vec![c(1.0, 0.0), c(0.5, 0.25), c(0.0, -1.0)],
            vec![c(0.5, -0.25), c(-2.0, 0.0), c(0.75, 0.0)],
            vec![c(0.0, 1.0), c(0.75, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        let dec = eig_hermitian(&a).unwrap();
        let back = reconstruct_hermitian(&dec);
        assert!(back.max_abs_diff(&a) <= 1e-10 * a.norm());
    }

    #[test]
    fn power_paths_agree_on_random_hermitian() {
        let a = DenseTensor::from_rows(&[
            vec![c(0.25, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
            vec![c(0.0, 0.0), c(-0.25, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(-0.25, 0.0), c(0.0, 0.0)],
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.25, 0.0)],
        ])
        .unwrap();
        for n in 0..8 {
            let direct = crate::tensor::matrix_power(&a, n).unwrap();
            let spectral = matrix_power_via_spectrum(&a, n).unwrap();
            assert!(direct.max_abs_diff(&spectral) < 1e-12);
        }
    }
}
