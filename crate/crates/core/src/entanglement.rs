//! Closed-form and numerically maximized geometric entanglement per block of
//! the valence-bond-solid chain, together with the companion observables:
//! block Rényi/von Neumann entropies and the two-point spin correlator.
//!
//! Everything here works in the thermodynamic limit through the transfer
//! operator; the dense-state oracle in [`crate::oracle`] provides the
//! independent finite-chain route.

use num_complex::Complex64;

use crate::error::{AkltError, Result};
use crate::mps::{
    block_transfer, build_site_tensor, operator_transfer, transfer_matrix, TransferOperator,
};
use crate::tensor::DenseTensor;

/// Natural log of 2, the saturation value of the entanglement per block.
pub const LN_2: f64 = std::f64::consts::LN_2;

/// Single-site product ansatz r = (α, β) on the doubled bond space,
/// normalized to |α|² + |β|² = 1.
#[derive(Debug, Clone)]
pub struct ProductAnsatz {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl ProductAnsatz {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !norm.is_finite() || norm < 1e-300 {
            return Err(AkltError::Argument(
                "product ansatz must have nonzero finite norm".into(),
            ));
        }
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    /// Bloch-sphere parametrization (θ, φ): r = (cos(θ/2), e^{iφ} sin(θ/2)).
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            alpha: Complex64::new((theta / 2.0).cos(), 0.0),
            beta: Complex64::from_polar((theta / 2.0).sin(), phi),
        }
    }

    /// Doubled vector s = r ⊗ conj(r) in the basis 00, 01, 10, 11.
    pub fn doubled(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.alpha.norm_sqr(), 0.0),
            self.alpha * self.beta.conj(),
            self.alpha.conj() * self.beta,
            Complex64::new(self.beta.norm_sqr(), 0.0),
        ]
    }
}

/// How a reported d² value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaximizationMethod {
    ClosedForm,
    GridPolish,
}

impl MaximizationMethod {
    pub fn label(self) -> &'static str {
        match self {
            MaximizationMethod::ClosedForm => "closed",
            MaximizationMethod::GridPolish => "maximized",
        }
    }
}

/// One row of geometric-entanglement output.
#[derive(Debug, Clone)]
pub struct GeomEntReport {
    pub block_length: usize,
    pub d_squared: f64,
    pub e_per_block: f64,
    pub method: MaximizationMethod,
    /// Maximizing ansatz when a numerical search produced the value.
    pub ansatz: Option<ProductAnsatz>,
    /// Spread of the objective across the search grid; the maximization is
    /// r-independent, so this doubles as a flatness diagnostic.
    pub spread: Option<f64>,
}

/// |s† A(L) s| for the doubled ansatz vector s.
#[allow(clippy::needless_range_loop)] // row-major kernel; indices mirror i*4+j
pub fn eq_objective(a_block: &TransferOperator, ansatz: &ProductAnsatz) -> f64 {
    let s = ansatz.doubled();
    let m = &a_block.matrix;
    let mut out = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..4 {
            row += m.entries()[i * 4 + j] * s[j];
        }
        out += s[i].conj() * row;
    }
    out.norm()
}

/// Closed-form maximal squared overlap per block of length L:
/// d² = (1/2)((3/4)^L + (−1/4)^L).
pub fn d_squared_closed(l: usize) -> Result<f64> {
    if l == 0 {
        return Err(AkltError::Argument("block length must be at least 1".into()));
    }
    Ok(0.5 * (0.75_f64.powi(l as i32) + (-0.25_f64).powi(l as i32)))
}

/// d² by direct search: the objective is evaluated on a Fibonacci-spiral grid
/// over the Bloch sphere and the best point is polished by a short
/// Nelder-Mead descent in (θ, φ). The objective is exactly flat in the
/// ansatz, so the grid spread is reported as a diagnostic.
pub fn d_squared_maximized(l: usize, grid_points: usize) -> Result<GeomEntReport> {
    if l == 0 {
        return Err(AkltError::Argument("block length must be at least 1".into()));
    }
    if grid_points < 2 {
        return Err(AkltError::Argument("grid needs at least 2 points".into()));
    }
    let a = transfer_matrix(&build_site_tensor());
    let a_block = block_transfer(&a, l)?;

    let golden = std::f64::consts::PI * (3.0 - 5.0_f64.sqrt());
    let mut best = f64::NEG_INFINITY;
    let mut worst = f64::INFINITY;
    let mut best_angles = (0.0, 0.0);
    for k in 0..grid_points {
        let z = 1.0 - 2.0 * (k as f64 + 0.5) / grid_points as f64;
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = (golden * k as f64).rem_euclid(2.0 * std::f64::consts::PI);
        let val = eq_objective(&a_block, &ProductAnsatz::from_angles(theta, phi));
        if val > best {
            best = val;
            best_angles = (theta, phi);
        }
        if val < worst {
            worst = val;
        }
    }

    let f = |p: [f64; 2]| eq_objective(&a_block, &ProductAnsatz::from_angles(p[0], p[1]));
    let polished = nelder_mead_max(f, [best_angles.0, best_angles.1], 0.2, 200);
    let d_squared = polished.1.max(best);
    let ansatz = ProductAnsatz::from_angles(polished.0[0], polished.0[1]);

    Ok(GeomEntReport {
        block_length: l,
        d_squared,
        e_per_block: entanglement_from_d_squared(l, d_squared),
        method: MaximizationMethod::GridPolish,
        ansatz: Some(ansatz),
        spread: Some(best - worst),
    })
}

/// Maximize f over 2 parameters with a plain Nelder-Mead simplex.
fn nelder_mead_max<F: Fn([f64; 2]) -> f64>(
    f: F,
    start: [f64; 2],
    step: f64,
    max_iter: usize,
) -> ([f64; 2], f64) {
    let g = |p: [f64; 2]| -f(p);
    let mut simplex = [
        start,
        [start[0] + step, start[1]],
        [start[0], start[1] + step],
    ];
    let mut vals = simplex.map(&g);
    for _ in 0..max_iter {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());
        let (lo, mid, hi) = (order[0], order[1], order[2]);
        if (vals[hi] - vals[lo]).abs() < 1e-15 {
            break;
        }
        let centroid = [
            (simplex[lo][0] + simplex[mid][0]) / 2.0,
            (simplex[lo][1] + simplex[mid][1]) / 2.0,
        ];
        let reflect = [
            2.0 * centroid[0] - simplex[hi][0],
            2.0 * centroid[1] - simplex[hi][1],
        ];
        let fr = g(reflect);
        if fr < vals[lo] {
            let expand = [
                3.0 * centroid[0] - 2.0 * simplex[hi][0],
                3.0 * centroid[1] - 2.0 * simplex[hi][1],
            ];
            let fe = g(expand);
            if fe < fr {
                simplex[hi] = expand;
                vals[hi] = fe;
            } else {
                simplex[hi] = reflect;
                vals[hi] = fr;
            }
        } else if fr < vals[mid] {
            simplex[hi] = reflect;
            vals[hi] = fr;
        } else {
            let contract = [
                (centroid[0] + simplex[hi][0]) / 2.0,
                (centroid[1] + simplex[hi][1]) / 2.0,
            ];
            let fc = g(contract);
            if fc < vals[hi] {
                simplex[hi] = contract;
                vals[hi] = fc;
            } else {
                for i in [mid, hi] {
                    simplex[i] = [
                        (simplex[i][0] + simplex[lo][0]) / 2.0,
                        (simplex[i][1] + simplex[lo][1]) / 2.0,
                    ];
                    vals[i] = g(simplex[i]);
                }
            }
        }
    }
    let mut best = 0;
    for i in 1..3 {
        if vals[i] < vals[best] {
            best = i;
        }
    }
    (simplex[best], -vals[best])
}

/// E(L) = −log(d² / (3/4)^L) = log 2 − log1p((−1/3)^L), in nats.
/// The log1p form stays exact for large L where d²/(3/4)^L → 1/2.
pub fn geometric_entanglement_per_block(l: usize) -> Result<f64> {
    if l == 0 {
        return Err(AkltError::Argument("block length must be at least 1".into()));
    }
    Ok(LN_2 - (-1.0 / 3.0_f64).powi(l as i32).ln_1p())
}

/// E(L) from a numerically maximized d², normalizing by the block norm
/// (3/4)^L.
pub fn entanglement_from_d_squared(l: usize, d_squared: f64) -> f64 {
    -(d_squared / 0.75_f64.powi(l as i32)).ln()
}

/// Deviation of E(L) from its large-L limit log 2: −log1p((−1/3)^L),
/// evaluated directly so no precision is lost to the log 2 offset. The
/// deviations alternate in sign with successive ratio tending to −1/3.
pub fn saturation_deviation(l: usize) -> Result<f64> {
    if l == 0 {
        return Err(AkltError::Argument("block length must be at least 1".into()));
    }
    Ok(-(-1.0 / 3.0_f64).powi(l as i32).ln_1p())
}

/// Rows (L, E(L), E(L) − log 2) for L = 1..=l_max.
pub fn table_of_entanglement(l_max: usize) -> Result<Vec<(usize, f64, f64)>> {
    if l_max == 0 {
        return Err(AkltError::Argument("table needs l_max at least 1".into()));
    }
    (1..=l_max)
        .map(|l| {
            let e = geometric_entanglement_per_block(l)?;
            Ok((l, e, saturation_deviation(l)?))
        })
        .collect()
}

/// λ² after n blocks of length L: exp(n(log1p((−1/3)^L) − log 2)).
/// At n = 0 this is exactly 1.
pub fn lambda_squared_estimate(l: usize, n_blocks: usize) -> Result<f64> {
    if l == 0 {
        return Err(AkltError::Argument("block length must be at least 1".into()));
    }
    let per_block = (-1.0 / 3.0_f64).powi(l as i32).ln_1p() - LN_2;
    Ok((n_blocks as f64 * per_block).exp())
}

/// Eigenvalues of the reduced density matrix of a bulk block of length L:
/// {(1 + 3x)/4, (1 − x)/4 ×3} with x = (−1/3)^L, sorted descending.
pub fn rdm_eigenvalues_closed(l: usize) -> Result<[f64; 4]> {
    if l == 0 {
        return Err(AkltError::Argument("block length must be at least 1".into()));
    }
    let x = (-1.0 / 3.0_f64).powi(l as i32);
    let a = (1.0 + 3.0 * x) / 4.0;
    let b = (1.0 - x) / 4.0;
    let mut vals = [a, b, b, b];
    vals.sort_by(|p, q| q.partial_cmp(p).unwrap());
    Ok(vals)
}

/// Logarithm base for entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    Nat,
    Bit,
}

impl LogBase {
    pub fn label(self) -> &'static str {
        match self {
            LogBase::Nat => "nat",
            LogBase::Bit => "bit",
        }
    }

    fn convert(self, nats: f64) -> f64 {
        match self {
            LogBase::Nat => nats,
            LogBase::Bit => nats / LN_2,
        }
    }
}

/// Von Neumann entropy of a bulk block of length L,
/// S(L) = −Σ p log p over the closed-form spectrum. Saturates at log 4.
pub fn block_entropy(l: usize, base: LogBase) -> Result<f64> {
    let p = rdm_eigenvalues_closed(l)?;
    let nats = -p
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| v * v.ln())
        .sum::<f64>();
    Ok(base.convert(nats))
}

/// Companion diagnostic: the base-2 spectrum combination
/// 2 − (1/4)(1+3x)log₂(1+3x) + (3/4)(1−x)log₂(1−x) with x = (−1/3)^L, i.e.
/// the block entropy with the sign of the threefold branch flipped. Unlike
/// the entropy itself (whose deviation from 2 bits shrinks by 1/9 per step,
/// being quadratic in x), this combination deviates from 2 linearly in x, so
/// its deviations alternate with successive ratio −1/3.
pub fn entropy_variant_bits(l: usize) -> Result<f64> {
    if l == 0 {
        return Err(AkltError::Argument("block length must be at least 1".into()));
    }
    let x = (-1.0 / 3.0_f64).powi(l as i32);
    let plus = 1.0 + 3.0 * x;
    let plus_term = if plus > 0.0 {
        plus / 4.0 * plus.log2()
    } else {
        0.0
    };
    let minus_term = 0.75 * (1.0 - x) * (1.0 - x).log2();
    Ok(2.0 - plus_term + minus_term)
}

/// S(L) − 2 in bits without forming the difference of two near-equal numbers.
/// Regrouping −[(1+3x)ln(1+3x) + 3(1−x)ln(1−x)]/(4 ln 2) as
/// −[ln(1 − 6x² + 8x³ − 3x⁴) + 3x ln(1 + 4x/(1−x))]/(4 ln 2) keeps every
/// ln_1p argument small, so the O(x²) deviation survives at full precision
/// where the direct subtraction loses it to cancellation (x = (−1/3)^L).
pub fn entropy_deviation_bits(l: usize) -> Result<f64> {
    if l == 0 {
        return Err(AkltError::Argument("block length must be at least 1".into()));
    }
    if l == 1 {
        // x = −1/3 zeroes one eigenvalue; S(1) = log₂ 3 exactly.
        return Ok(3.0_f64.log2() - 2.0);
    }
    let x = (-1.0 / 3.0_f64).powi(l as i32);
    let even = (x * x * (-6.0 + x * (8.0 - 3.0 * x))).ln_1p();
    let odd = 3.0 * x * (4.0 * x / (1.0 - x)).ln_1p();
    Ok(-(even + odd) / (4.0 * LN_2))
}

/// The sign-flipped combination's deviation from 2 bits, regrouped the same
/// way: −[ln(1 + (6x − 3x² + x³)/(1−x)³) + 3x ln(1 + 2x − 3x²)]/(4 ln 2).
/// Linear in x at leading order, so successive deviations alternate with
/// ratio −1/3.
pub fn entropy_variant_deviation_bits(l: usize) -> Result<f64> {
    if l == 0 {
        return Err(AkltError::Argument("block length must be at least 1".into()));
    }
    if l == 1 {
        // x = −1/3 zeroes the first branch; the rest is log₂(4/3).
        return Ok((4.0_f64 / 3.0).log2());
    }
    let x = (-1.0 / 3.0_f64).powi(l as i32);
    let one_minus = 1.0 - x;
    let even = (x * (6.0 + x * (-3.0 + x)) / (one_minus * one_minus * one_minus)).ln_1p();
    let odd = 3.0 * x * (x * (2.0 - 3.0 * x)).ln_1p();
    Ok(-(even + odd) / (4.0 * LN_2))
}

/// Two-point correlator ⟨S⃗₁·S⃗_L⟩ between the first and last site of an
/// L-site window deep in the bulk, via operator-inserted transfer matrices:
/// Σ_a ⟨⟨e₁| A_{Sa} A(1)^{L−2} A_{Sa} |e₁⟩⟩ / (3/4)^L. Needs L ≥ 2; equals
/// 4(−1/3)^{L−1} exactly.
pub fn correlator(l: usize) -> Result<f64> {
    if l < 2 {
        return Err(AkltError::Argument(
            "correlator needs two distinct sites, so L must be at least 2".into(),
        ));
    }
    let m = build_site_tensor();
    let a = transfer_matrix(&m);
    let ops = crate::spin::build_spin_operators();
    let e1 = crate::mps::boundary_vectors();
    let mut total = 0.0;
    for op in &ops.spin1 {
        let a_op = operator_transfer(&m, op)?;
        // Applied to vectors, the chain stays inside the exactly scaled
        // invariant sectors, so the tiny subdominant channel survives
        // without the cancellation a dense matrix power would introduce.
        let mut w = matvec(&a_op.matrix, &e1.right);
        for _ in 0..l - 2 {
            w = matvec(&a.matrix, &w);
        }
        let w = matvec(&a_op.matrix, &w);
        let mut term = Complex64::new(0.0, 0.0);
        for (le, we) in e1.left.iter().zip(&w) {
            term += le.conj() * we;
        }
        total += term.re;
    }
    Ok(total / 0.75_f64.powi(l as i32))
}

fn matvec(a: &DenseTensor, v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, x) in v.iter().enumerate() {
            acc += a.entries()[i * n + j] * x;
        }
        *slot = acc;
    }
    out
}

/// Successive correlator ratio C(L+1)/C(L); exactly −1/3 at every L.
pub fn correlator_ratio(l: usize) -> Result<f64> {
    Ok(correlator(l + 1)? / correlator(l)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn closed_d_squared_small_blocks() {
        assert_abs_diff_eq!(d_squared_closed(1).unwrap(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(d_squared_closed(2).unwrap(), 5.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            d_squared_closed(3).unwrap(),
            0.5 * (27.0 / 64.0 - 1.0 / 64.0),
            epsilon = 1e-15
        );
    }

    #[test]
    fn normalized_d_squared_approaches_one_half() {
        for l in 1..=40 {
            let scaled = d_squared_closed(l).unwrap() / 0.75_f64.powi(l as i32);
            let expect = 0.5 * (1.0 + (-1.0 / 3.0_f64).powi(l as i32));
            assert_abs_diff_eq!(scaled, expect, epsilon = 1e-13);
        }
    }

    #[test]
    fn objective_is_ansatz_independent() {
        let a = transfer_matrix(&build_site_tensor());
        for l in [1usize, 2, 5] {
            let block = block_transfer(&a, l).unwrap();
            let expect = d_squared_closed(l).unwrap();
            for (theta, phi) in [
                (0.0, 0.0),
                (1.0, 2.0),
                (std::f64::consts::FRAC_PI_2, 0.7),
                (3.0, 5.5),
            ] {
                let val = eq_objective(&block, &ProductAnsatz::from_angles(theta, phi));
                assert_abs_diff_eq!(val, expect, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn maximized_matches_closed_form() {
        for l in 1..=6 {
            let report = d_squared_maximized(l, 233).unwrap();
            assert_abs_diff_eq!(
                report.d_squared,
                d_squared_closed(l).unwrap(),
                epsilon = 1e-12
            );
            assert!(report.spread.unwrap() < 1e-12);
            assert_abs_diff_eq!(
                report.e_per_block,
                geometric_entanglement_per_block(l).unwrap(),
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn entanglement_table_reference_values() {
        let table = table_of_entanglement(8).unwrap();
        let known = [
            1.0986122886681096,
            0.587786664902119,
            0.7308875085427923,
            0.680877087968131,
            0.6972708977438073,
            0.6917763784261666,
            0.6936045325002292,
            0.6929947763837758,
        ];
        for (row, want) in table.iter().zip(known) {
            assert_abs_diff_eq!(row.1, want, epsilon = 1e-13);
        }
        for row in &table {
            assert_abs_diff_eq!(row.2, row.1 - LN_2, epsilon = 1e-14);
        }
    }

    #[test]
    fn entanglement_saturates_at_log_two() {
        assert!((geometric_entanglement_per_block(14).unwrap() - LN_2).abs() < 5e-7);
        assert!((geometric_entanglement_per_block(40).unwrap() - LN_2).abs() < 1e-15);
    }

    #[test]
    fn deviation_ratio_approaches_minus_one_third() {
        // The deviation is −log1p((−1/3)^L), so the successive ratio misses
        // −1/3 by O(3^{-L}): within the 1e-6 band only from L = 12 on.
        let err = |l: usize| {
            let r = saturation_deviation(l + 1).unwrap() / saturation_deviation(l).unwrap();
            (r + 1.0 / 3.0).abs()
        };
        for l in 1..=20 {
            assert!(err(l) < 3.0 * 3.0_f64.powi(-(l as i32)), "L={l}");
            if l > 1 {
                assert!(err(l) < err(l - 1), "L={l} not shrinking");
            }
        }
        assert!(err(11) > 1e-6);
        assert!(err(12) < 5e-7);
    }

    #[test]
    fn lambda_estimate_matches_per_block_value() {
        assert_abs_diff_eq!(lambda_squared_estimate(1, 0).unwrap(), 1.0, epsilon = 0.0);
        let v = lambda_squared_estimate(2, 7).unwrap();
        assert_abs_diff_eq!(
            -v.ln() / 7.0,
            geometric_entanglement_per_block(2).unwrap(),
            epsilon = 1e-13
        );
        let direct = (d_squared_closed(2).unwrap() / 0.75_f64.powi(2)).powi(7);
        assert_abs_diff_eq!(v, direct, epsilon = 1e-15);
    }

    #[test]
    fn rdm_spectrum_closed_form() {
        let p1 = rdm_eigenvalues_closed(1).unwrap();
        for v in p1 {
            let ok = (v - 1.0 / 3.0).abs() < 1e-15 || v.abs() < 1e-15;
            assert!(ok, "unexpected eigenvalue {v}");
        }
        assert_abs_diff_eq!(p1.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
        let p2 = rdm_eigenvalues_closed(2).unwrap();
        assert_abs_diff_eq!(p2[0], 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p2[1], 2.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn entropy_reference_values() {
        assert_abs_diff_eq!(
            block_entropy(1, LogBase::Nat).unwrap(),
            3.0_f64.ln(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            block_entropy(2, LogBase::Nat).unwrap(),
            1.3689223607402192,
            epsilon = 1e-13
        );
        assert!((block_entropy(30, LogBase::Bit).unwrap() - 2.0).abs() < 1e-6);
        assert!((block_entropy(50, LogBase::Bit).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_variant_values_and_ratio() {
        assert_abs_diff_eq!(
            entropy_variant_bits(1).unwrap(),
            2.415037499278844,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            entropy_variant_bits(2).unwrap(),
            1.7483708326121772,
            epsilon = 1e-13
        );
        // Deviations from 2 alternate in sign and the ratio tends to −1/3.
        for l in 1..=12 {
            let dev = entropy_variant_bits(l).unwrap() - 2.0;
            let next = entropy_variant_bits(l + 1).unwrap() - 2.0;
            assert!(dev * next < 0.0, "L={l} deviations do not alternate");
            if l >= 2 {
                assert!((next / dev + 1.0 / 3.0).abs() < 0.1, "L={l}");
            }
        }
        let r12 = (entropy_variant_bits(13).unwrap() - 2.0)
            / (entropy_variant_bits(12).unwrap() - 2.0);
        assert!((r12 + 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn true_entropy_deviation_ratio_is_one_ninth() {
        let dev = |l: usize| block_entropy(l, LogBase::Nat).unwrap() - 4.0_f64.ln();
        let r = dev(13) / dev(12);
        assert!((r - 1.0 / 9.0).abs() < 1e-4, "ratio {r}");
    }

    #[test]
    fn stable_entropy_deviation_matches_direct_difference() {
        assert_abs_diff_eq!(
            entropy_deviation_bits(1).unwrap(),
            3.0_f64.log2() - 2.0,
            epsilon = 1e-15
        );
        for l in 2..=8 {
            let direct = block_entropy(l, LogBase::Bit).unwrap() - 2.0;
            let stable = entropy_deviation_bits(l).unwrap();
            assert_abs_diff_eq!(stable, direct, epsilon = 1e-12);
        }
        // The direct difference dies of cancellation near L = 17; the
        // regrouped form keeps the exact 1/9 decay arbitrarily far out.
        for l in 2..=24 {
            let r = entropy_deviation_bits(l + 1).unwrap() / entropy_deviation_bits(l).unwrap();
            assert!(
                (r - 1.0 / 9.0).abs() < 0.4 * 3.0_f64.powi(-(l as i32)),
                "L={l}: ratio {r:.15}"
            );
        }
    }

    #[test]
    fn stable_variant_deviation_matches_direct_difference() {
        assert_abs_diff_eq!(
            entropy_variant_deviation_bits(1).unwrap(),
            (4.0_f64 / 3.0).log2(),
            epsilon = 1e-15
        );
        for l in 2..=8 {
            let direct = entropy_variant_bits(l).unwrap() - 2.0;
            let stable = entropy_variant_deviation_bits(l).unwrap();
            assert_abs_diff_eq!(stable, direct, epsilon = 1e-12);
        }
        for l in 2..=24 {
            let r = entropy_variant_deviation_bits(l + 1).unwrap()
                / entropy_variant_deviation_bits(l).unwrap();
            assert!(
                (r + 1.0 / 3.0).abs() < 2.0 * 3.0_f64.powi(-(l as i32)),
                "L={l}: ratio {r:.15}"
            );
        }
    }

    #[test]
    fn correlator_reference_values() {
        assert_abs_diff_eq!(correlator(2).unwrap(), -4.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(correlator(3).unwrap(), 4.0 / 9.0, epsilon = 1e-14);
        assert_abs_diff_eq!(correlator(4).unwrap(), -4.0 / 27.0, epsilon = 1e-14);
        assert!(correlator(1).is_err());
    }

    #[test]
    fn correlator_ratio_is_exact() {
        for l in 2..=20 {
            assert_abs_diff_eq!(
                correlator_ratio(l).unwrap(),
                -1.0 / 3.0,
                epsilon = 1e-12
            );
        }
    }
}
