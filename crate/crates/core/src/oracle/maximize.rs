//! Alternating maximization of |⟨Φ|ψ⟩| over block product states Φ on the
//! full state vector. The chain is cut into contiguous blocks of equal
//! spin-1 length; on open chains the two edge spin-1/2 sites are absorbed
//! into the outermost blocks so the product structure covers every site.
//!
//! Each restart seeds the block vectors from a counter-mode generator, sweeps
//! block by block (every update is the exact one-block optimum, so the
//! overlap never decreases), and stops when a full sweep gains less than
//! [`crate::ALS_TOL`].

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{AkltError, Result};
use crate::mps::{build_singlet_factors, build_site_tensor};
use crate::oracle::state::DenseState;
use crate::tensor::{contract, DenseTensor};
use crate::{Boundary, ALS_MAX_SWEEPS, ALS_TOL};

/// One unit vector per block.
#[derive(Debug, Clone)]
pub struct BlockProductAnsatz {
    pub blocks: Vec<Vec<Complex64>>,
}

impl BlockProductAnsatz {
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }
}

/// Result of the maximization.
#[derive(Debug, Clone)]
pub struct ExactGeomEnt {
    pub boundary: Boundary,
    pub block_length: usize,
    pub n_blocks: usize,
    /// max |⟨Φ|ψ⟩|² / ⟨ψ|ψ⟩ over the restarts.
    pub lambda_squared: f64,
    /// −log λ².
    pub e_total: f64,
    /// −log λ² / n_blocks.
    pub e_per_block: f64,
    /// Spread of λ² across restarts; large values flag distinct local optima.
    pub spread: f64,
    pub restarts: usize,
    /// Sweeps used by the best restart.
    pub sweeps: usize,
    pub best_ansatz: BlockProductAnsatz,
}

/// Block dimensions for a chain cut into blocks of `l` spin-1 sites.
/// Open layouts [2, 3, ..., 3, 2] fold the edge spin-1/2 factors into the
/// first and last blocks.
pub fn partition_dims(site_dims: &[usize], boundary: Boundary, l: usize) -> Result<Vec<usize>> {
    if l == 0 {
        return Err(AkltError::Argument("block length must be at least 1".into()));
    }
    let spin1 = match boundary {
        Boundary::Open => {
            if site_dims.len() < 3
                || site_dims[0] != 2
                || site_dims[site_dims.len() - 1] != 2
                || site_dims[1..site_dims.len() - 1].iter().any(|&d| d != 3)
            {
                return Err(AkltError::Argument(format!(
                    "open layout must be [2, 3, ..., 3, 2], got {site_dims:?}"
                )));
            }
            site_dims.len() - 2
        }
        Boundary::Periodic => {
            if site_dims.iter().any(|&d| d != 3) {
                return Err(AkltError::Argument(format!(
                    "ring layout must be all spin-1 sites, got {site_dims:?}"
                )));
            }
            site_dims.len()
        }
    };
    if spin1 % l != 0 {
        return Err(AkltError::Argument(format!(
            "block length {l} does not divide the {spin1} spin-1 sites"
        )));
    }
    let n_blocks = spin1 / l;
    let inner = 3usize.pow(l as u32);
    let mut dims = vec![inner; n_blocks];
    if boundary == Boundary::Open {
        dims[0] *= 2;
        dims[n_blocks - 1] *= 2;
    }
    Ok(dims)
}

fn random_unit(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        v[0] = Complex64::new(1.0, 0.0);
        return v;
    }
    for c in &mut v {
        *c /= norm;
    }
    v
}

fn as_vector_tensor(v: &[Complex64]) -> DenseTensor {
    DenseTensor::new(vec![v.len()], v.to_vec()).expect("vector tensor")
}

/// Contract ψ with the conjugates of every block vector except block `k`;
/// the result is the unnormalized optimal block-k vector, whose norm is the
/// overlap after the update.
fn environment(psi: &DenseTensor, blocks: &[Vec<Complex64>], k: usize) -> Result<Vec<Complex64>> {
    let mut g = psi.clone();
    for j in (0..blocks.len()).rev() {
        if j == k {
            continue;
        }
        let phi = as_vector_tensor(&blocks[j]).conj();
        g = contract(&g, &phi, &[(j, 0)])?;
    }
    Ok(g.into_entries())
}

struct RunOutcome {
    overlap: f64,
    blocks: Vec<Vec<Complex64>>,
    sweeps: usize,
}

fn als_run(psi: &DenseTensor, init: Vec<Vec<Complex64>>) -> Result<RunOutcome> {
    let mut blocks = init;
    let n_blocks = blocks.len();
    let mut prev = f64::NEG_INFINITY;
    let mut prev_sweep_end = f64::NEG_INFINITY;
    let mut sweeps = 0;
    for sweep in 1..=ALS_MAX_SWEEPS {
        sweeps = sweep;
        for k in 0..n_blocks {
            let g = environment(psi, &blocks, k)?;
            let norm: f64 = g.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-300 {
                return Err(AkltError::Numeric(
                    "alternating maximization hit a zero environment".into(),
                ));
            }
            for (slot, val) in blocks[k].iter_mut().zip(&g) {
                *slot = val / norm;
            }
            // Each block update is the exact optimum given the others, so
            // the overlap may only grow up to roundoff.
            if prev.is_finite() && norm < prev - 1e-12 * (1.0 + prev.abs()) {
                return Err(AkltError::Numeric(format!(
                    "overlap decreased during a sweep: {norm:.15e} after {prev:.15e}"
                )));
            }
            prev = norm;
        }
        if prev_sweep_end.is_finite() && prev - prev_sweep_end < ALS_TOL {
            break;
        }
        prev_sweep_end = prev;
    }
    Ok(RunOutcome {
        overlap: prev,
        blocks,
        sweeps,
    })
}

/// Maximize the product-state overlap on `state` cut into blocks of `l`
/// spin-1 sites, with `restarts` independently seeded starting points.
pub fn exact_geometric_entanglement(
    state: &DenseState,
    boundary: Boundary,
    l: usize,
    seed: u64,
    restarts: usize,
) -> Result<ExactGeomEnt> {
    if restarts == 0 {
        return Err(AkltError::Argument("need at least one restart".into()));
    }
    let dims = partition_dims(state.site_dims(), boundary, l)?;
    let norm = state.norm();
    if norm < 1e-300 {
        return Err(AkltError::Numeric(
            "cannot maximize overlap with a zero state vector".into(),
        ));
    }
    let psi = DenseTensor::new(dims.clone(), state.amplitudes().to_vec())?;
    let mut best: Option<RunOutcome> = None;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
        let init: Vec<Vec<Complex64>> =
            dims.iter().map(|&d| random_unit(&mut rng, d)).collect();
        let outcome = als_run(&psi, init)?;
        let lam_sq = (outcome.overlap / norm).powi(2);
        lo = lo.min(lam_sq);
        hi = hi.max(lam_sq);
        let better = match &best {
            None => true,
            Some(b) => outcome.overlap > b.overlap,
        };
        if better {
            best = Some(outcome);
        }
    }
    let best = best.expect("at least one restart");
    let n_blocks = dims.len();
    let lambda_squared = (best.overlap / norm).powi(2);
    let e_total = -lambda_squared.ln();
    Ok(ExactGeomEnt {
        boundary,
        block_length: l,
        n_blocks,
        lambda_squared,
        e_total,
        e_per_block: e_total / n_blocks as f64,
        spread: hi - lo,
        restarts,
        sweeps: best.sweeps,
        best_ansatz: BlockProductAnsatz {
            blocks: best.blocks,
        },
    })
}

/// ⟨Φ|ψ⟩ by direct dense contraction of the blocked state vector.
pub fn product_overlap_dense(
    state: &DenseState,
    boundary: Boundary,
    l: usize,
    ansatz: &BlockProductAnsatz,
) -> Result<Complex64> {
    let dims = partition_dims(state.site_dims(), boundary, l)?;
    if ansatz.block_dims() != dims {
        return Err(AkltError::Argument(format!(
            "ansatz block dims {:?} do not match partition {:?}",
            ansatz.block_dims(),
            dims
        )));
    }
    let psi = DenseTensor::new(dims, state.amplitudes().to_vec())?;
    let mut g = psi;
    for j in (0..ansatz.blocks.len()).rev() {
        let phi = as_vector_tensor(&ansatz.blocks[j]).conj();
        g = contract(&g, &phi, &[(j, 0)])?;
    }
    debug_assert_eq!(g.rank(), 0);
    Ok(g.entries()[0])
}

/// ⟨Φ|ψ⟩ through the site-tensor route: each block is compressed to a 2×2
/// virtual map G_k = Σ over the block's physical indices of conj(φ_k) times
/// the matching product of site tensors, and the maps are chained with the
/// boundary factors (open) or traced (ring). Independent of the dense path.
pub fn product_overlap_mps(
    n: usize,
    boundary: Boundary,
    l: usize,
    ansatz: &BlockProductAnsatz,
) -> Result<Complex64> {
    if l == 0 || n == 0 || !n.is_multiple_of(l) {
        return Err(AkltError::Argument(format!(
            "block length {l} does not divide the {n} spin-1 sites"
        )));
    }
    let n_blocks = n / l;
    if ansatz.blocks.len() != n_blocks {
        return Err(AkltError::Argument(format!(
            "ansatz has {} blocks, partition needs {n_blocks}",
            ansatz.blocks.len()
        )));
    }
    let m = build_site_tensor().tensor;
    let f = build_singlet_factors();
    let inner = 3usize.pow(l as u32);

    // Per-block virtual maps. For open chains the first block carries the
    // left spin-1/2 factor (index a'·3^L + phys) and the last block carries
    // the right one (index phys·2 + a).
    let mut maps: Vec<DenseTensor> = Vec::with_capacity(n_blocks);
    for (k, phi) in ansatz.blocks.iter().enumerate() {
        let absorb_left = boundary == Boundary::Open && k == 0;
        let absorb_right = boundary == Boundary::Open && k == n_blocks - 1;
        let mut expect = inner;
        if absorb_left {
            expect *= 2;
        }
        if absorb_right {
            expect *= 2;
        }
        if phi.len() != expect {
            return Err(AkltError::Argument(format!(
                "block {k} has dimension {}, expected {expect}",
                phi.len()
            )));
        }
        let mut map = DenseTensor::zeros(vec![2, 2]);
        for flat in 0..phi.len() {
            let weight = phi[flat].conj();
            if weight == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (a_left, rest) = if absorb_left {
                (Some(flat / (phi.len() / 2)), flat % (phi.len() / 2))
            } else {
                (None, flat)
            };
            let (phys, a_right) = if absorb_right {
                (rest / 2, Some(rest % 2))
            } else {
                (rest, None)
            };
            // Chain the site tensors for this physical combination.
            let mut digits = vec![0usize; l];
            let mut x = phys;
            for slot in digits.iter_mut().rev() {
                *slot = x % 3;
                x /= 3;
            }
            let mut prod = DenseTensor::identity(2);
            for &i in &digits {
                let m_i = m.select_axis(0, i)?;
                prod = crate::tensor::matmul(&prod, &m_i)?;
            }
            // P^{a'}_α scales the left virtual index, Q^{a}_β the right one.
            for alpha in 0..2 {
                for beta in 0..2 {
                    let mut val = prod.get(&[alpha, beta]);
                    if let Some(a) = a_left {
                        val *= f.p.get(&[a, alpha]);
                    }
                    if let Some(a) = a_right {
                        val *= f.q.get(&[a, beta]);
                    }
                    let cur = map.get(&[alpha, beta]);
                    map.set(&[alpha, beta], cur + weight * val);
                }
            }
        }
        maps.push(map);
    }

    let mut chain = DenseTensor::identity(2);
    for map in &maps {
        chain = crate::tensor::matmul(&chain, map)?;
    }
    let mut out = Complex64::new(0.0, 0.0);
    match boundary {
        Boundary::Open => {
            // Both outer virtual indices are summed freely: the boundary
            // factors absorbed into the end maps already closed the chain.
            for alpha in 0..2 {
                for beta in 0..2 {
                    out += chain.get(&[alpha, beta]);
                }
            }
        }
        Boundary::Periodic => {
            for alpha in 0..2 {
                out += chain.get(&[alpha, alpha]);
            }
        }
    }
    Ok(out)
}
