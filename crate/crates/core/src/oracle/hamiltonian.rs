//! Parent Hamiltonian of the valence-bond-solid chain on small systems: the
//! bilinear-biquadratic bond term on every adjacent spin-1 pair, plus the two
//! boundary projectors that pin the open chain's edge spin-1/2 sites. Dense
//! diagonalization gives the ground-state checks.

use num_complex::Complex64;

use crate::error::{AkltError, Result};
use crate::linalg::eig_hermitian;
use crate::oracle::state::{build_vbs_state, DenseState};
use crate::spin::{
    bond_operator, boundary_projector_left, boundary_projector_right, build_spin_operators,
};
use crate::tensor::DenseTensor;
use crate::{Boundary, MAX_DENSE_DIM};

/// Eigenvalues closer than this are counted as one degenerate level.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Residual bound for accepting a state as an exact eigenstate.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// Summary of a dense ground-state computation.
#[derive(Debug, Clone)]
pub struct GroundStateReport {
    pub boundary: Boundary,
    pub sites: usize,
    pub dimension: usize,
    pub energy: f64,
    /// ⟨H⟩ on the candidate state divided by its norm.
    pub candidate_energy: f64,
    /// ‖(H − ⟨H⟩)ψ‖ / ‖ψ‖ for the candidate state.
    pub residual: f64,
    pub degeneracy: usize,
    /// First eigenvalue above the ground multiplet minus the ground energy.
    pub gap: f64,
}

/// Add a two-site operator into the dense Hamiltonian by digit embedding.
/// `op` acts on sites `a` then `b` (row index r_a·d_b + r_b); the sites need
/// not be adjacent in the layout, which is how the ring's wrap bond enters.
fn embed_pair(
    h: &mut DenseTensor,
    op: &DenseTensor,
    dims: &[usize],
    a: usize,
    b: usize,
) -> Result<()> {
    if a == b || a >= dims.len() || b >= dims.len() {
        return Err(AkltError::Argument(format!(
            "invalid site pair ({a}, {b}) for {} sites",
            dims.len()
        )));
    }
    let (da, db) = (dims[a], dims[b]);
    if op.dims() != [da * db, da * db] {
        return Err(AkltError::Argument(format!(
            "pair operator dims {:?} do not match site dimensions ({da}, {db})",
            op.dims()
        )));
    }
    let total: usize = dims.iter().product();
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    for col in 0..total {
        let ca = (col / strides[a]) % da;
        let cb = (col / strides[b]) % db;
        let base = col - ca * strides[a] - cb * strides[b];
        for ra in 0..da {
            for rb in 0..db {
                let v = op.entries()[(ra * db + rb) * da * db + (ca * db + cb)];
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let row = base + ra * strides[a] + rb * strides[b];
                let idx = row * total + col;
                h.entries_mut()[idx] += v;
            }
        }
    }
    Ok(())
}

/// Dense Hamiltonian matrix for `n` spin-1 sites with the chosen boundary.
/// Open chains include the two spin-1/2 edge sites and their projector terms,
/// so the matrix dimension is 4·3ⁿ; rings are 3ⁿ.
pub fn build_hamiltonian(n: usize, boundary: Boundary) -> Result<DenseTensor> {
    if n < 2 {
        return Err(AkltError::Argument(
            "the Hamiltonian needs at least two spin-1 sites".into(),
        ));
    }
    let dims: Vec<usize> = match boundary {
        Boundary::Open => {
            let mut d = vec![2];
            d.extend(std::iter::repeat_n(3, n));
            d.push(2);
            d
        }
        Boundary::Periodic => vec![3; n],
    };
    // Saturating: 3^n exceeds u128 past n = 80.
    let total: u128 = dims
        .iter()
        .fold(1u128, |acc, &d| acc.saturating_mul(d as u128));
    if total > MAX_DENSE_DIM as u128 {
        return Err(AkltError::Capacity {
            what: "dense Hamiltonian dimension",
            needed: total,
            limit: MAX_DENSE_DIM,
        });
    }
    let total = total as usize;
    let mut h = DenseTensor::zeros(vec![total, total]);
    let ops = build_spin_operators();
    let bond = bond_operator(&ops)?;
    match boundary {
        Boundary::Open => {
            for k in 1..n {
                embed_pair(&mut h, &bond, &dims, k, k + 1)?;
            }
            embed_pair(&mut h, &boundary_projector_left(&ops)?, &dims, 0, 1)?;
            embed_pair(&mut h, &boundary_projector_right(&ops)?, &dims, n, n + 1)?;
        }
        Boundary::Periodic => {
            for k in 0..n {
                embed_pair(&mut h, &bond, &dims, k, (k + 1) % n)?;
            }
        }
    }
    Ok(h)
}

fn apply_matrix(h: &DenseTensor, v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (row, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        let offset = row * n;
        for (col, x) in v.iter().enumerate() {
            acc += h.entries()[offset + col] * x;
        }
        *slot = acc;
    }
    out
}

/// Energy expectation and eigenstate residual of a candidate state.
#[derive(Debug, Clone, Copy)]
pub struct CandidateEnergy {
    /// ⟨H⟩ on the candidate state divided by its norm.
    pub energy: f64,
    /// ‖(H − ⟨H⟩)ψ‖ / ‖ψ‖ for the candidate state.
    pub residual: f64,
}

fn expectation_and_residual(h: &DenseTensor, psi: &DenseState) -> Result<CandidateEnergy> {
    let norm_sqr = psi.norm_sqr();
    if norm_sqr < 1e-300 {
        return Err(AkltError::Numeric("candidate state has zero norm".into()));
    }
    let h_psi = apply_matrix(h, psi.amplitudes());
    let mut expect = Complex64::new(0.0, 0.0);
    for (a, b) in psi.amplitudes().iter().zip(&h_psi) {
        expect += a.conj() * b;
    }
    let energy = expect.re / norm_sqr;
    let mut residual_sqr = 0.0;
    for (a, b) in psi.amplitudes().iter().zip(&h_psi) {
        residual_sqr += (b - a * Complex64::new(energy, 0.0)).norm_sqr();
    }
    Ok(CandidateEnergy {
        energy,
        residual: (residual_sqr / norm_sqr).sqrt(),
    })
}

/// Energy and residual of the bond construction at size `n` from H·ψ alone —
/// no diagonalization, so it reaches every size whose Hamiltonian fits in
/// memory. Gap and degeneracy need the spectrum; see [`ground_state_report`].
pub fn candidate_energy(n: usize, boundary: Boundary) -> Result<CandidateEnergy> {
    let h = build_hamiltonian(n, boundary)?;
    let psi = build_vbs_state(n, boundary)?;
    if h.dims() != [psi.dimension(), psi.dimension()] {
        return Err(AkltError::Argument(format!(
            "Hamiltonian dims {:?} do not match state dimension {}",
            h.dims(),
            psi.dimension()
        )));
    }
    expectation_and_residual(&h, &psi)
}

/// Diagonalize the Hamiltonian and measure the candidate state against it.
pub fn ground_state_report(n: usize, boundary: Boundary) -> Result<GroundStateReport> {
    let h = build_hamiltonian(n, boundary)?;
    let psi = build_vbs_state(n, boundary)?;
    report_for_state(&h, &psi, n, boundary)
}

fn report_for_state(
    h: &DenseTensor,
    psi: &DenseState,
    n: usize,
    boundary: Boundary,
) -> Result<GroundStateReport> {
    let dimension = psi.dimension();
    if h.dims() != [dimension, dimension] {
        return Err(AkltError::Argument(format!(
            "Hamiltonian dims {:?} do not match state dimension {dimension}",
            h.dims()
        )));
    }
    let candidate = expectation_and_residual(h, psi)?;

    let dec = eig_hermitian(h)?;
    let energy = dec.eigenvalues[0].re;
    let mut degeneracy = 1;
    while degeneracy < dimension
        && (dec.eigenvalues[degeneracy].re - energy).abs() < DEGENERACY_TOL
    {
        degeneracy += 1;
    }
    let gap = if degeneracy < dimension {
        dec.eigenvalues[degeneracy].re - energy
    } else {
        0.0
    };

    Ok(GroundStateReport {
        boundary,
        sites: n,
        dimension,
        energy,
        candidate_energy: candidate.energy,
        residual: candidate.residual,
        degeneracy,
        gap,
    })
}

/// Full verification: the constructed state must be an exact eigenstate at
/// the bottom of the spectrum, the spectrum must be gapped, and on the open
/// chain the ground level must be unique. Ring ground spaces may be
/// degenerate on tiny systems; the report records the multiplicity.
pub fn verify_ground_state(n: usize, boundary: Boundary) -> Result<GroundStateReport> {
    let report = ground_state_report(n, boundary)?;
    if report.residual > RESIDUAL_TOL {
        return Err(AkltError::Verification(format!(
            "candidate state is not an eigenstate: residual {:.3e} exceeds {RESIDUAL_TOL:.1e}",
            report.residual
        )));
    }
    if (report.candidate_energy - report.energy).abs() > RESIDUAL_TOL {
        return Err(AkltError::Verification(format!(
            "candidate energy {:.12} does not match the spectrum bottom {:.12}",
            report.candidate_energy, report.energy
        )));
    }
    if report.gap <= 0.0 {
        return Err(AkltError::Verification(format!(
            "spectrum above the ground multiplet is not gapped (gap {:.3e})",
            report.gap
        )));
    }
    if boundary == Boundary::Open && report.degeneracy != 1 {
        return Err(AkltError::Verification(format!(
            "open-chain ground state should be unique, found multiplicity {}",
            report.degeneracy
        )));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn open_chain_ground_state_checks_out() {
        for n in 2..=5 {
            let report = verify_ground_state(n, Boundary::Open).unwrap();
            let expect = -2.0 * (n as f64 - 1.0) / 3.0;
            assert_abs_diff_eq!(report.energy, expect, epsilon = 1e-10);
            assert_abs_diff_eq!(report.candidate_energy, expect, epsilon = 1e-10);
            assert!(report.residual <= 1e-10, "N={n}: {}", report.residual);
            assert_eq!(report.degeneracy, 1);
            assert!(report.gap > 0.5, "N={n}: gap {}", report.gap);
        }
    }

    #[test]
    fn ring_ground_state_checks_out() {
        for n in 2..=6 {
            let report = verify_ground_state(n, Boundary::Periodic).unwrap();
            let expect = -2.0 * n as f64 / 3.0;
            assert_abs_diff_eq!(report.energy, expect, epsilon = 1e-10);
            assert!(report.residual <= 1e-10, "N={n}: {}", report.residual);
            assert!(report.gap > 0.0, "N={n}");
            if n == 2 {
                assert_eq!(report.degeneracy, 4);
                assert_abs_diff_eq!(report.gap, 4.0, epsilon = 1e-10);
            } else {
                assert_eq!(report.degeneracy, 1, "N={n}");
            }
        }
    }

    #[test]
    fn candidate_energy_skips_the_eigensolve_but_matches_it() {
        let fast = candidate_energy(4, Boundary::Open).unwrap();
        let full = ground_state_report(4, Boundary::Open).unwrap();
        assert_abs_diff_eq!(fast.energy, full.candidate_energy, epsilon = 1e-13);
        assert_abs_diff_eq!(fast.residual, full.residual, epsilon = 1e-13);

        // Sizes where the full spectrum is out of patience still check out.
        let big = candidate_energy(6, Boundary::Open).unwrap();
        assert_abs_diff_eq!(big.energy, -10.0 / 3.0, epsilon = 1e-10);
        assert!(big.residual <= 1e-10, "residual {}", big.residual);
        let ring = candidate_energy(7, Boundary::Periodic).unwrap();
        assert_abs_diff_eq!(ring.energy, -14.0 / 3.0, epsilon = 1e-10);
        assert!(ring.residual <= 1e-10, "residual {}", ring.residual);
    }

    #[test]
    fn two_site_ring_spectrum_is_two_levels() {
        let h = build_hamiltonian(2, Boundary::Periodic).unwrap();
        let dec = eig_hermitian(&h).unwrap();
        for v in &dec.eigenvalues[..4] {
            assert_abs_diff_eq!(v.re, -4.0 / 3.0, epsilon = 1e-12);
        }
        for v in &dec.eigenvalues[4..] {
            assert_abs_diff_eq!(v.re, 8.0 / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        for bc in [Boundary::Open, Boundary::Periodic] {
            let h = build_hamiltonian(3, bc).unwrap();
            let n = h.dims()[0];
            for r in 0..n {
                for c in 0..n {
                    let a = h.entries()[r * n + c];
                    let b = h.entries()[c * n + r].conj();
                    assert!((a - b).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn capacity_guard_rejects_large_dense_systems() {
        assert!(matches!(
            build_hamiltonian(8, Boundary::Open),
            Err(AkltError::Capacity { .. })
        ));
        assert!(matches!(
            build_hamiltonian(9, Boundary::Periodic),
            Err(AkltError::Capacity { .. })
        ));
    }

    #[test]
    fn perturbed_state_fails_verification() {
        let h = build_hamiltonian(3, Boundary::Periodic).unwrap();
        let psi = build_vbs_state(3, Boundary::Periodic).unwrap();
        let mut amps = psi.amplitudes().to_vec();
        amps[0] += Complex64::new(0.05, 0.0);
        let bumped = DenseState::new(psi.site_dims().to_vec(), amps).unwrap();
        let report = report_for_state(&h, &bumped, 3, Boundary::Periodic).unwrap();
        assert!(report.residual > 1e-3);
    }

    #[test]
    fn wrap_bond_direction_does_not_matter() {
        let dims = vec![3usize; 3];
        let bond = bond_operator(&build_spin_operators()).unwrap();
        let mut h1 = DenseTensor::zeros(vec![27, 27]);
        embed_pair(&mut h1, &bond, &dims, 2, 0).unwrap();
        let mut h2 = DenseTensor::zeros(vec![27, 27]);
        embed_pair(&mut h2, &bond, &dims, 0, 2).unwrap();
        assert!(h1.max_abs_diff(&h2) < 1e-14);
    }
}
