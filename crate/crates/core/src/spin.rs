//! Dense spin operator triples for spin 1 and spin 1/2, plus the two-site
//! interaction blocks assembled from them.

use num_complex::Complex64;

use crate::error::Result;
use crate::tensor::{kron, matmul, DenseTensor};

/// Spin-1 basis order is (m = +1, 0, −1); spin-1/2 order is (up, down).
#[derive(Debug, Clone)]
pub struct SpinOperatorSet {
    /// (Sˣ, Sʸ, Sᶻ) as 3×3 complex matrices.
    pub spin1: [DenseTensor; 3],
    /// (sˣ, sʸ, sᶻ) as 2×2 complex matrices.
    pub spin_half: [DenseTensor; 3],
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Builds both operator triples. Satisfies [Sˣ,Sʸ] = iSᶻ (cyclic) and the
/// Casimir identities S⃗·S⃗ = 2·I₃ and s⃗·s⃗ = (3/4)·I₂.
pub fn build_spin_operators() -> SpinOperatorSet {
    let s = 1.0 / 2.0_f64.sqrt();
    let sx1 = DenseTensor::from_rows(&[
        vec![c(0.0, 0.0), c(s, 0.0), c(0.0, 0.0)],
        vec![c(s, 0.0), c(0.0, 0.0), c(s, 0.0)],
        vec![c(0.0, 0.0), c(s, 0.0), c(0.0, 0.0)],
    ])
    .expect("static shape");
    let sy1 = DenseTensor::from_rows(&[
        vec![c(0.0, 0.0), c(0.0, -s), c(0.0, 0.0)],
        vec![c(0.0, s), c(0.0, 0.0), c(0.0, -s)],
        vec![c(0.0, 0.0), c(0.0, s), c(0.0, 0.0)],
    ])
    .expect("static shape");
    let sz1 = DenseTensor::from_rows(&[
        vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
    ])
    .expect("static shape");
    let sxh = DenseTensor::from_rows(&[
        vec![c(0.0, 0.0), c(0.5, 0.0)],
        vec![c(0.5, 0.0), c(0.0, 0.0)],
    ])
    .expect("static shape");
    let syh = DenseTensor::from_rows(&[
        vec![c(0.0, 0.0), c(0.0, -0.5)],
        vec![c(0.0, 0.5), c(0.0, 0.0)],
    ])
    .expect("static shape");
    let szh = DenseTensor::from_rows(&[
        vec![c(0.5, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(-0.5, 0.0)],
    ])
    .expect("static shape");
    SpinOperatorSet {
        spin1: [sx1, sy1, sz1],
        spin_half: [sxh, syh, szh],
    }
}

/// Two-site bulk interaction S⃗·S⃗ + (1/3)(S⃗·S⃗)² on spin-1 ⊗ spin-1.
/// Eigenvalues are {−2/3 (×4), 4/3 (×5)}.
pub fn bond_operator(ops: &SpinOperatorSet) -> Result<DenseTensor> {
    let mut ss = DenseTensor::zeros(vec![9, 9]);
    for a in 0..3 {
        ss = ss.add(&kron(&ops.spin1[a], &ops.spin1[a])?)?;
    }
    let ss2 = matmul(&ss, &ss)?;
    ss.add(&ss2.scale(c(1.0 / 3.0, 0.0)))
}

/// Boundary projector (2/3)(1 + s⃗·S⃗) on spin-1/2 ⊗ spin-1 (left edge).
/// Projects onto the total-spin-3/2 subspace: eigenvalues {0 (×2), 1 (×4)}.
pub fn boundary_projector_left(ops: &SpinOperatorSet) -> Result<DenseTensor> {
    let mut sdot = DenseTensor::zeros(vec![6, 6]);
    for a in 0..3 {
        sdot = sdot.add(&kron(&ops.spin_half[a], &ops.spin1[a])?)?;
    }
    DenseTensor::identity(6)
        .add(&sdot)
        .map(|t| t.scale(c(2.0 / 3.0, 0.0)))
}

/// Boundary projector (2/3)(1 + S⃗·s⃗) on spin-1 ⊗ spin-1/2 (right edge).
pub fn boundary_projector_right(ops: &SpinOperatorSet) -> Result<DenseTensor> {
    let mut sdot = DenseTensor::zeros(vec![6, 6]);
    for a in 0..3 {
        sdot = sdot.add(&kron(&ops.spin1[a], &ops.spin_half[a])?)?;
    }
    DenseTensor::identity(6)
        .add(&sdot)
        .map(|t| t.scale(c(2.0 / 3.0, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig_hermitian;
    use approx::assert_abs_diff_eq;

    fn commutator(a: &DenseTensor, b: &DenseTensor) -> DenseTensor {
        let ab = matmul(a, b).unwrap();
        let ba = matmul(b, a).unwrap();
        ab.add(&ba.scale(c(-1.0, 0.0))).unwrap()
    }

    #[test]
    fn commutation_relations_hold() {
        let ops = build_spin_operators();
        for triple in [&ops.spin1, &ops.spin_half] {
            for k in 0..3 {
                let (a, b, target) = (&triple[k], &triple[(k + 1) % 3], &triple[(k + 2) % 3]);
                let lhs = commutator(a, b);
                let rhs = target.scale(c(0.0, 1.0));
                assert!(lhs.max_abs_diff(&rhs) < 1e-15);
            }
        }
    }

    #[test]
    fn casimir_values() {
        let ops = build_spin_operators();
        let mut s1 = DenseTensor::zeros(vec![3, 3]);
        for a in 0..3 {
            s1 = s1.add(&matmul(&ops.spin1[a], &ops.spin1[a]).unwrap()).unwrap();
        }
        assert!(s1.max_abs_diff(&DenseTensor::identity(3).scale(c(2.0, 0.0))) < 1e-15);
        let mut sh = DenseTensor::zeros(vec![2, 2]);
        for a in 0..3 {
            sh = sh
                .add(&matmul(&ops.spin_half[a], &ops.spin_half[a]).unwrap())
                .unwrap();
        }
        assert!(sh.max_abs_diff(&DenseTensor::identity(2).scale(c(0.75, 0.0))) < 1e-15);
    }

    #[test]
    fn bond_operator_eigenvalues() {
        let ops = build_spin_operators();
        let bond = bond_operator(&ops).unwrap();
        let dec = eig_hermitian(&bond).unwrap();
        for l in &dec.eigenvalues[..4] {
            assert_abs_diff_eq!(l.re, -2.0 / 3.0, epsilon = 1e-12);
        }
        for l in &dec.eigenvalues[4..] {
            assert_abs_diff_eq!(l.re, 4.0 / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn boundary_terms_are_projectors() {
        let ops = build_spin_operators();
        for proj in [
            boundary_projector_left(&ops).unwrap(),
            boundary_projector_right(&ops).unwrap(),
        ] {
            let sq = matmul(&proj, &proj).unwrap();
            assert!(sq.max_abs_diff(&proj) < 1e-12);
            let dec = eig_hermitian(&proj).unwrap();
            for l in &dec.eigenvalues[..2] {
                assert_abs_diff_eq!(l.re, 0.0, epsilon = 1e-12);
            }
            for l in &dec.eigenvalues[2..] {
                assert_abs_diff_eq!(l.re, 1.0, epsilon = 1e-12);
            }
        }
    }
}
