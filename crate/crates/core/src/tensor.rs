//! Minimal dense complex tensor algebra: flat row-major storage, pairwise
//! contraction, Kronecker products, and integer matrix powers. Everything in
//! this crate is small enough that simplicity beats cleverness.

use num_complex::Complex64;

use crate::error::{AkltError, Result};

/// Dense complex tensor with an explicit list of axis lengths and row-major
/// entries. `entries.len()` always equals the product of `dims`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    dims: Vec<usize>,
    entries: Vec<Complex64>,
}

impl DenseTensor {
    pub fn new(dims: Vec<usize>, entries: Vec<Complex64>) -> Result<Self> {
        let expect: usize = dims.iter().product();
        if entries.len() != expect {
            return Err(AkltError::Argument(format!(
                "entry count {} does not match dims {:?} (product {})",
                entries.len(),
                dims,
                expect
            )));
        }
        Ok(Self { dims, entries })
    }

    pub fn zeros(dims: Vec<usize>) -> Self {
        let len = dims.iter().product();
        Self {
            dims,
            entries: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut t = Self::zeros(vec![n, n]);
        for i in 0..n {
            t.entries[i * n + i] = Complex64::new(1.0, 0.0);
        }
        t
    }

    /// Rank-2 tensor from a nested row list; rows must have equal lengths.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(AkltError::Argument("ragged rows".into()));
        }
        let entries = rows.iter().flatten().copied().collect();
        Self::new(vec![nrows, ncols], entries)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    /// Row-major strides for the current dims.
    pub fn strides(&self) -> Vec<usize> {
        strides_of(&self.dims)
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        idx.iter()
            .zip(self.strides())
            .map(|(i, s)| i * s)
            .sum()
    }

    pub fn get(&self, idx: &[usize]) -> Complex64 {
        self.entries[self.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Complex64) {
        let k = self.flat_index(idx);
        self.entries[k] = value;
    }

    pub fn conj(&self) -> Self {
        Self {
            dims: self.dims.clone(),
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dims: self.dims.clone(),
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(AkltError::Argument(format!(
                "shape mismatch in add: {:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            dims: self.dims.clone(),
            entries,
        })
    }

    /// Reinterpret the entries under new axis lengths with the same product.
    pub fn reshape(&self, dims: Vec<usize>) -> Result<Self> {
        let expect: usize = dims.iter().product();
        if expect != self.entries.len() {
            return Err(AkltError::Argument(format!(
                "reshape to {:?} changes entry count {} -> {}",
                dims,
                self.entries.len(),
                expect
            )));
        }
        Ok(Self {
            dims,
            entries: self.entries.clone(),
        })
    }

    /// Permute axes; `perm[k]` names the old axis that becomes new axis `k`.
    pub fn transpose(&self, perm: &[usize]) -> Result<Self> {
        let r = self.rank();
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true)) {
            return Err(AkltError::Argument(format!(
                "invalid axis permutation {:?} for rank {}",
                perm, r
            )));
        }
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let old_strides = self.strides();
        let new_strides: Vec<usize> = perm.iter().map(|&p| old_strides[p]).collect();
        let mut out = Self::zeros(new_dims.clone());
        let mut idx = vec![0usize; r];
        for entry in out.entries.iter_mut() {
            let src: usize = idx.iter().zip(&new_strides).map(|(i, s)| i * s).sum();
            *entry = self.entries[src];
            for ax in (0..r).rev() {
                idx[ax] += 1;
                if idx[ax] < new_dims[ax] {
                    break;
                }
                idx[ax] = 0;
            }
        }
        out
            .assert_finite("transpose")
            .map(|_| out)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dims, other.dims);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Trace over two equal-length axes, removing both.
    pub fn trace_axes(&self, ax1: usize, ax2: usize) -> Result<Self> {
        let r = self.rank();
        if ax1 == ax2 || ax1 >= r || ax2 >= r {
            return Err(AkltError::Argument(format!(
                "trace axes ({ax1}, {ax2}) invalid for rank {r}"
            )));
        }
        if self.dims[ax1] != self.dims[ax2] {
            return Err(AkltError::Argument(format!(
                "trace axes have different lengths {} vs {}",
                self.dims[ax1], self.dims[ax2]
            )));
        }
        let (lo, hi) = if ax1 < ax2 { (ax1, ax2) } else { (ax2, ax1) };
        let keep: Vec<usize> = (0..r).filter(|&a| a != lo && a != hi).collect();
        let new_dims: Vec<usize> = keep.iter().map(|&a| self.dims[a]).collect();
        let old_strides = self.strides();
        let keep_strides: Vec<usize> = keep.iter().map(|&a| old_strides[a]).collect();
        let diag_stride = old_strides[lo] + old_strides[hi];
        let d = self.dims[lo];
        let mut out = Self::zeros(new_dims.clone());
        let mut idx = vec![0usize; keep.len()];
        for entry in out.entries.iter_mut() {
            let base: usize = idx.iter().zip(&keep_strides).map(|(i, s)| i * s).sum();
            let mut sum = Complex64::new(0.0, 0.0);
            for k in 0..d {
                sum += self.entries[base + k * diag_stride];
            }
            *entry = sum;
            for ax in (0..keep.len()).rev() {
                idx[ax] += 1;
                if idx[ax] < new_dims[ax] {
                    break;
                }
                idx[ax] = 0;
            }
        }
        Ok(out)
    }

    /// Fix one axis to a given index, removing it.
    pub fn select_axis(&self, axis: usize, index: usize) -> Result<Self> {
        let r = self.rank();
        if axis >= r || index >= self.dims[axis] {
            return Err(AkltError::Argument(format!(
                "select axis {axis} index {index} out of range for dims {:?}",
                self.dims
            )));
        }
        let new_dims: Vec<usize> = self
            .dims
            .iter()
            .enumerate()
            .filter(|(a, _)| *a != axis)
            .map(|(_, &d)| d)
            .collect();
        let old_strides = self.strides();
        let keep: Vec<usize> = (0..r).filter(|&a| a != axis).collect();
        let keep_strides: Vec<usize> = keep.iter().map(|&a| old_strides[a]).collect();
        let offset = index * old_strides[axis];
        let mut out = Self::zeros(new_dims.clone());
        let mut idx = vec![0usize; keep.len()];
        for entry in out.entries.iter_mut() {
            let src: usize = offset + idx.iter().zip(&keep_strides).map(|(i, s)| i * s).sum::<usize>();
            *entry = self.entries[src];
            for ax in (0..keep.len()).rev() {
                idx[ax] += 1;
                if idx[ax] < new_dims[ax] {
                    break;
                }
                idx[ax] = 0;
            }
        }
        Ok(out)
    }

    fn assert_finite(&self, what: &str) -> Result<()> {
        if self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(AkltError::Numeric(format!("non-finite entry after {what}")))
        }
    }
}

pub(crate) fn strides_of(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    strides
}

/// Sum over paired axes of `a` and `b`. Free axes of `a` come first in the
/// result, in their original order, followed by the free axes of `b`.
pub fn contract(a: &DenseTensor, b: &DenseTensor, pairs: &[(usize, usize)]) -> Result<DenseTensor> {
    let mut used_a = vec![false; a.rank()];
    let mut used_b = vec![false; b.rank()];
    for &(ax_a, ax_b) in pairs {
        if ax_a >= a.rank() || ax_b >= b.rank() {
            return Err(AkltError::Argument(format!(
                "contraction pair ({ax_a}, {ax_b}) out of range for ranks ({}, {})",
                a.rank(),
                b.rank()
            )));
        }
        if used_a[ax_a] || used_b[ax_b] {
            return Err(AkltError::Argument(format!(
                "axis repeated in contraction pairs at ({ax_a}, {ax_b})"
            )));
        }
        used_a[ax_a] = true;
        used_b[ax_b] = true;
        if a.dims()[ax_a] != b.dims()[ax_b] {
            return Err(AkltError::ContractMismatch {
                axis_a: ax_a,
                len_a: a.dims()[ax_a],
                axis_b: ax_b,
                len_b: b.dims()[ax_b],
            });
        }
    }

    let free_a: Vec<usize> = (0..a.rank()).filter(|&ax| !used_a[ax]).collect();
    let free_b: Vec<usize> = (0..b.rank()).filter(|&ax| !used_b[ax]).collect();
    let sum_dims: Vec<usize> = pairs.iter().map(|&(ax, _)| a.dims()[ax]).collect();

    let strides_a = a.strides();
    let strides_b = b.strides();
    let free_a_dims: Vec<usize> = free_a.iter().map(|&ax| a.dims()[ax]).collect();
    let free_b_dims: Vec<usize> = free_b.iter().map(|&ax| b.dims()[ax]).collect();
    let free_a_strides: Vec<usize> = free_a.iter().map(|&ax| strides_a[ax]).collect();
    let free_b_strides: Vec<usize> = free_b.iter().map(|&ax| strides_b[ax]).collect();
    let sum_a_strides: Vec<usize> = pairs.iter().map(|&(ax, _)| strides_a[ax]).collect();
    let sum_b_strides: Vec<usize> = pairs.iter().map(|&(_, bx)| strides_b[bx]).collect();

    let mut out_dims = free_a_dims.clone();
    out_dims.extend(&free_b_dims);
    let mut out = DenseTensor::zeros(out_dims);

    // Precompute base offsets for every free-index combination on each side,
    // then accumulate the paired sums once per output entry.
    let offsets_a = axis_offsets(&free_a_dims, &free_a_strides);
    let offsets_b = axis_offsets(&free_b_dims, &free_b_strides);
    let offsets_sum_a = axis_offsets(&sum_dims, &sum_a_strides);
    let offsets_sum_b = axis_offsets(&sum_dims, &sum_b_strides);

    let nb = offsets_b.len();
    for (ia, &off_a) in offsets_a.iter().enumerate() {
        for (ib, &off_b) in offsets_b.iter().enumerate() {
            let mut sum = Complex64::new(0.0, 0.0);
            for (&sa, &sb) in offsets_sum_a.iter().zip(&offsets_sum_b) {
                sum += a.entries()[off_a + sa] * b.entries()[off_b + sb];
            }
            out.entries_mut()[ia * nb + ib] = sum;
        }
    }
    out.assert_finite("contract")?;
    Ok(out)
}

/// Flat offsets of every index combination over `dims` using `strides`.
fn axis_offsets(dims: &[usize], strides: &[usize]) -> Vec<usize> {
    let total: usize = dims.iter().product();
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0usize; dims.len()];
    for _ in 0..total {
        out.push(idx.iter().zip(strides).map(|(i, s)| i * s).sum());
        for ax in (0..dims.len()).rev() {
            idx[ax] += 1;
            if idx[ax] < dims[ax] {
                break;
            }
            idx[ax] = 0;
        }
    }
    out
}

/// Kronecker product of two square matrices; entry ((i,k),(j,l)) = a(i,j)·b(k,l).
pub fn kron(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    let (na, nb) = (square_dim(a)?, square_dim(b)?);
    let n = na * nb;
    let mut out = DenseTensor::zeros(vec![n, n]);
    for i in 0..na {
        for j in 0..na {
            let aij = a.entries()[i * na + j];
            for k in 0..nb {
                for l in 0..nb {
                    out.entries_mut()[(i * nb + k) * n + (j * nb + l)] =
                        aij * b.entries()[k * nb + l];
                }
            }
        }
    }
    Ok(out)
}

/// Matrix product of two rank-2 tensors.
pub fn matmul(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    if a.rank() != 2 || b.rank() != 2 {
        return Err(AkltError::Argument("matmul expects rank-2 tensors".into()));
    }
    contract(a, b, &[(1, 0)])
}

/// `a` raised to the integer power `n` by repeated squaring; `a⁰` is the identity.
pub fn matrix_power(a: &DenseTensor, n: usize) -> Result<DenseTensor> {
    let dim = square_dim(a)?;
    let mut result = DenseTensor::identity(dim);
    let mut base = a.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = matmul(&result, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = matmul(&base, &base)?;
        }
    }
    Ok(result)
}

pub(crate) fn square_dim(a: &DenseTensor) -> Result<usize> {
    if a.rank() == 2 && a.dims()[0] == a.dims()[1] {
        Ok(a.dims()[0])
    } else {
        Err(AkltError::Argument(format!(
            "expected a square matrix, got dims {:?}",
            a.dims()
        )))
    }
}
