//! Full state vectors of the valence-bond-solid chain on small systems,
//! built two independent ways: directly from the singlet chain with on-site
//! triplet projections, and from the site-tensor products. Open chains keep
//! the two boundary spin-1/2 sites as physical sites, so their site layout is
//! [2, 3, ..., 3, 2]; periodic chains are plain spin-1 rings.

use num_complex::Complex64;

use crate::error::{AkltError, Result};
use crate::mps::{build_isometry, build_singlet_factors, build_site_tensor, singlet_matrix};
use crate::tensor::{contract, DenseTensor};
use crate::{Boundary, MAX_STATE_AMPLITUDES};

/// Dense state vector over an ordered list of sites.
#[derive(Debug, Clone)]
pub struct DenseState {
    site_dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl DenseState {
    pub fn new(site_dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let expect: u128 = site_dims
            .iter()
            .fold(1u128, |acc, &d| acc.saturating_mul(d as u128));
        if expect != amplitudes.len() as u128 {
            return Err(AkltError::Argument(format!(
                "amplitude count {} does not match site dimensions {:?}",
                amplitudes.len(),
                site_dims
            )));
        }
        Ok(Self {
            site_dims,
            amplitudes,
        })
    }

    pub fn site_dims(&self) -> &[usize] {
        &self.site_dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// ⟨self|other⟩ with the conjugate on self.
    pub fn inner(&self, other: &DenseState) -> Result<Complex64> {
        if self.site_dims != other.site_dims {
            return Err(AkltError::Argument(format!(
                "site layouts differ: {:?} vs {:?}",
                self.site_dims, other.site_dims
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Unit-norm copy; fails on the zero vector (the one-site ring).
    pub fn normalized(&self) -> Result<DenseState> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(AkltError::Numeric(
                "cannot normalize a zero state vector".into(),
            ));
        }
        let inv = Complex64::new(1.0 / n, 0.0);
        Ok(DenseState {
            site_dims: self.site_dims.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a * inv).collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &DenseState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn check_capacity(site_dims: &[usize]) -> Result<()> {
    // Saturating: dimension counts can exceed even u128 (3^n past n = 80).
    let total: u128 = site_dims
        .iter()
        .fold(1u128, |acc, &d| acc.saturating_mul(d as u128));
    if total > MAX_STATE_AMPLITUDES as u128 {
        return Err(AkltError::Capacity {
            what: "state amplitudes",
            needed: total,
            limit: MAX_STATE_AMPLITUDES,
        });
    }
    Ok(())
}

fn obc_site_dims(n: usize) -> Vec<usize> {
    let mut dims = Vec::with_capacity(n + 2);
    dims.push(2);
    dims.extend(std::iter::repeat_n(3, n));
    dims.push(2);
    dims
}

/// State built from the defining picture: a chain of bond singlets with every
/// pair of virtual spin-1/2 on a site projected onto the triplet. Open chains
/// keep the outermost singlet halves as physical spin-1/2 sites; rings close
/// the singlet chain on itself.
pub fn build_vbs_state(n: usize, boundary: Boundary) -> Result<DenseState> {
    if n == 0 {
        return Err(AkltError::Argument("chain needs at least one site".into()));
    }
    let w = build_isometry().tensor;
    let d = singlet_matrix(&build_singlet_factors());
    match boundary {
        Boundary::Open => {
            let dims = obc_site_dims(n);
            check_capacity(&dims)?;
            // (a0', a1) then alternately absorb W over the open bond index
            // and d over the fresh right half.
            let mut t = d.clone();
            for _ in 0..n {
                let last = t.rank() - 1;
                t = contract(&t, &w, &[(last, 1)])?;
                let last = t.rank() - 1;
                t = contract(&t, &d, &[(last, 0)])?;
            }
            DenseState::new(dims, t.into_entries())
        }
        Boundary::Periodic => {
            let dims = vec![3; n];
            check_capacity(&dims)?;
            let mut total: Option<DenseTensor> = None;
            for a1 in 0..2 {
                // Pin the first site's left virtual index and walk the ring.
                let mut t = w.select_axis(1, a1)?;
                let last = t.rank() - 1;
                t = contract(&t, &d, &[(last, 0)])?;
                for _ in 1..n {
                    let last = t.rank() - 1;
                    t = contract(&t, &w, &[(last, 1)])?;
                    let last = t.rank() - 1;
                    t = contract(&t, &d, &[(last, 0)])?;
                }
                let closed = t.select_axis(t.rank() - 1, a1)?;
                total = Some(match total {
                    None => closed,
                    Some(acc) => acc.add(&closed)?,
                });
            }
            DenseState::new(dims, total.expect("two closure terms").into_entries())
        }
    }
}

/// The same states from the site-tensor route: boundary factors, a product of
/// bulk site tensors, and either open ends or a virtual trace.
pub fn vbs_mps_amplitudes(n: usize, boundary: Boundary) -> Result<DenseState> {
    if n == 0 {
        return Err(AkltError::Argument("chain needs at least one site".into()));
    }
    let m = build_site_tensor().tensor;
    let f = build_singlet_factors();
    match boundary {
        Boundary::Open => {
            let dims = obc_site_dims(n);
            check_capacity(&dims)?;
            // (a', α) then chain site tensors over the right virtual index.
            let mut t = f.p.clone();
            for _ in 0..n {
                let last = t.rank() - 1;
                t = contract(&t, &m, &[(last, 1)])?;
            }
            let last = t.rank() - 1;
            t = contract(&t, &f.q, &[(last, 1)])?;
            DenseState::new(dims, t.into_entries())
        }
        Boundary::Periodic => {
            let dims = vec![3; n];
            check_capacity(&dims)?;
            // (α0, i1, α1) then chain, then trace the virtual pair.
            let mut t = m.transpose(&[1, 0, 2])?;
            for _ in 1..n {
                let last = t.rank() - 1;
                t = contract(&t, &m, &[(last, 1)])?;
            }
            let t = t.trace_axes(0, t.rank() - 1)?;
            DenseState::new(dims, t.into_entries())
        }
    }
}

/// Apply a one-site operator in place of site `site`, returning the new
/// state. The operator must be square with the site's dimension.
pub fn apply_site_operator(
    state: &DenseState,
    site: usize,
    op: &DenseTensor,
) -> Result<DenseState> {
    let dims = state.site_dims();
    if site >= dims.len() {
        return Err(AkltError::Argument(format!(
            "site {site} out of range for {} sites",
            dims.len()
        )));
    }
    let d = dims[site];
    if op.dims() != [d, d] {
        return Err(AkltError::Argument(format!(
            "operator dims {:?} do not match site dimension {d}",
            op.dims()
        )));
    }
    let right: usize = dims[site + 1..].iter().product();
    let left: usize = dims[..site].iter().product();
    let mut out = vec![Complex64::new(0.0, 0.0); state.dimension()];
    for l in 0..left {
        for r_out in 0..d {
            for c in 0..d {
                let o = op.entries()[r_out * d + c];
                if o == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let src = (l * d + c) * right;
                let dst = (l * d + r_out) * right;
                for rr in 0..right {
                    out[dst + rr] += o * state.amplitudes[src + rr];
                }
            }
        }
    }
    DenseState::new(dims.to_vec(), out)
}

/// Reduced density matrix of the contiguous site range [start, end), traced
/// against everything else and normalized to unit trace. The range must be a
/// proper nonempty subchain.
pub fn reduced_density_matrix(
    state: &DenseState,
    start: usize,
    end: usize,
) -> Result<DenseTensor> {
    let dims = state.site_dims();
    if start >= end || end > dims.len() {
        return Err(AkltError::Argument(format!(
            "invalid site range [{start}, {end}) for {} sites",
            dims.len()
        )));
    }
    if start == 0 && end == dims.len() {
        return Err(AkltError::Argument(
            "range covers the whole chain; a reduced density matrix needs a complement".into(),
        ));
    }
    let mid: usize = dims[start..end].iter().product();
    let needed = (mid as u128) * (mid as u128);
    if needed > MAX_STATE_AMPLITUDES as u128 {
        return Err(AkltError::Capacity {
            what: "reduced density matrix entries",
            needed,
            limit: MAX_STATE_AMPLITUDES,
        });
    }
    let left: usize = dims[..start].iter().product();
    let right: usize = dims[end..].iter().product();
    let norm_sqr = state.norm_sqr();
    if norm_sqr < 1e-300 {
        return Err(AkltError::Numeric(
            "cannot reduce a zero state vector".into(),
        ));
    }
    let amp = &state.amplitudes;
    let mut rho = DenseTensor::zeros(vec![mid, mid]);
    for l in 0..left {
        for r in 0..right {
            for m_row in 0..mid {
                let a = amp[(l * mid + m_row) * right + r];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for m_col in 0..mid {
                    let b = amp[(l * mid + m_col) * right + r];
                    let cur = rho.entries()[m_row * mid + m_col];
                    rho.entries_mut()[m_row * mid + m_col] = cur + a * b.conj();
                }
            }
        }
    }
    Ok(rho.scale(Complex64::new(1.0 / norm_sqr, 0.0)))
}

/// ⟨S⃗_i · S⃗_j⟩ on the normalized state, for spin-1 sites i and j. Coinciding
/// sites give the Casimir S(S+1) = 2.
pub fn exact_correlator(state: &DenseState, i: usize, j: usize) -> Result<f64> {
    let dims = state.site_dims();
    for site in [i, j] {
        if site >= dims.len() {
            return Err(AkltError::Argument(format!(
                "site {site} out of range for {} sites",
                dims.len()
            )));
        }
        if dims[site] != 3 {
            return Err(AkltError::Argument(format!(
                "site {site} has dimension {}, the correlator needs spin-1 sites",
                dims[site]
            )));
        }
    }
    let norm_sqr = state.norm_sqr();
    if norm_sqr < 1e-300 {
        return Err(AkltError::Numeric(
            "cannot evaluate a correlator on a zero state vector".into(),
        ));
    }
    let ops = crate::spin::build_spin_operators();
    let mut total = Complex64::new(0.0, 0.0);
    for op in &ops.spin1 {
        let ket = apply_site_operator(state, j, op)?;
        let bra = apply_site_operator(state, i, op)?;
        total += bra.inner(&ket)?;
    }
    Ok(total.re / norm_sqr)
}
