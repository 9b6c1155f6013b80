//! Foundational dense complex linear algebra.
//!
//! Everything downstream (polar factors, functional calculus, certificates)
//! is built from four primitives implemented here:
//!
//! * rank-truncated SVD with an explicit numerical-rank rule,
//! * Hermitian eigendecomposition with ascending eigenvalues,
//! * diagonalization of normal matrices via a unitary Schur decomposition
//!   followed by an off-diagonal check,
//! * Hermitian PSD square roots together with their pseudoinverses.
//!
//! A Schur-based eigendecomposition for general (non-normal) diagonalizable
//! matrices is also provided for the eigenvector-based functional calculus;
//! it is gated on the eigenvector condition number.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{OpError, Result};
use crate::matrix::{check_finite, check_square, cr, hermitian_defect, normality_defect, CMatrix};
use crate::tol;

/// Rank-truncated singular value decomposition M = U Σ V*.
#[derive(Debug, Clone)]
pub struct SVDResult {
    /// Left singular vectors, n×r with orthonormal columns.
    pub u_left: CMatrix,
    /// Nonzero singular values, descending, length r.
    pub singular_values: Vec<f64>,
    /// Right singular vectors, m×r with orthonormal columns.
    pub v_right: CMatrix,
    /// Numerical rank r: the number of σ_i above rank_tol·σ_max.
    pub numerical_rank: usize,
}

impl SVDResult {
    /// Reconstruct U Σ V*.
    pub fn reconstruct(&self) -> CMatrix {
        let sigma = CMatrix::from_diagonal(&DVector::from_iterator(
            self.numerical_rank,
            self.singular_values.iter().map(|&s| cr(s)),
        ));
        &self.u_left * sigma * self.v_right.adjoint()
    }
}

/// Eigendecomposition of a Hermitian or normal matrix: A = Q diag(λ) Q*
/// with unitary Q.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Eigenvalues; real (zero imaginary part) when `hermitian` is set.
    /// Ordering: ascending by value for Hermitian input, lexicographic by
    /// (real part, imaginary part) for normal input.
    pub eigenvalues: Vec<Complex64>,
    /// Unitary matrix of eigenvectors (columns).
    pub eigenvectors: CMatrix,
    /// Whether the source matrix was Hermitian.
    pub hermitian: bool,
}

impl SpectralDecomposition {
    /// Q diag(λ) Q*.
    pub fn reconstruct(&self) -> CMatrix {
        let d = CMatrix::from_diagonal(&DVector::from_vec(self.eigenvalues.clone()));
        &self.eigenvectors * d * self.eigenvectors.adjoint()
    }

    /// Real parts of the eigenvalues (exact eigenvalues for Hermitian input).
    pub fn real_eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|l| l.re).collect()
    }

    /// Dimension of the underlying space.
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// Eigendecomposition A = V diag(λ) V⁻¹ of a diagonalizable, possibly
/// non-normal matrix. V is generally not unitary; `cond_v` records its
/// 2-norm condition number.
#[derive(Debug, Clone)]
pub struct GeneralEig {
    /// Eigenvalues, lexicographic by (real part, imaginary part).
    pub eigenvalues: Vec<Complex64>,
    /// Eigenvector matrix (columns, unit norm).
    pub vectors: CMatrix,
    /// Inverse of the eigenvector matrix.
    pub vectors_inv: CMatrix,
    /// 2-norm condition number of the eigenvector matrix.
    pub cond_v: f64,
}

/// Effective rank threshold: explicit `rank_tol` or the default
/// max(m,n)·ε·8 when zero is passed.
fn effective_rank_tol(rank_tol: f64, dim: usize) -> f64 {
    if rank_tol > 0.0 {
        rank_tol
    } else {
        tol::default_rank_tol(dim)
    }
}

/// Rank-truncated SVD. Singular values are sorted descending and truncated
/// at σ_i > rank_tol·σ_max (`rank_tol` = 0 selects the default threshold).
pub fn svd(m: &CMatrix, rank_tol: f64) -> Result<SVDResult> {
    check_finite(m, "matrix")?;
    if rank_tol < 0.0 || !rank_tol.is_finite() {
        return Err(OpError::InvalidInput(format!(
            "rank_tol must be a finite nonnegative real, got {rank_tol}"
        )));
    }
    let (nr, nc) = (m.nrows(), m.ncols());
    let dec = m.clone().svd(true, true);
    let u = dec
        .u
        .ok_or_else(|| OpError::Internal("SVD did not return U".into()))?;
    let v_t = dec
        .v_t
        .ok_or_else(|| OpError::Internal("SVD did not return V*".into()))?;
    let k = dec.singular_values.len();

    // Sort descending; nalgebra does not guarantee an order.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| {
        dec.singular_values[j]
            .partial_cmp(&dec.singular_values[i])
            .expect("singular values are finite")
    });
    let sigma_max = order
        .first()
        .map(|&i| dec.singular_values[i])
        .unwrap_or(0.0);

    let threshold = effective_rank_tol(rank_tol, nr.max(nc)) * sigma_max;
    let rank = order
        .iter()
        .take_while(|&&i| dec.singular_values[i] > threshold)
        .count();

    let mut u_left = CMatrix::zeros(nr, rank);
    let mut v_right = CMatrix::zeros(nc, rank);
    let mut singular_values = Vec::with_capacity(rank);
    for (col, &i) in order.iter().take(rank).enumerate() {
        u_left.set_column(col, &u.column(i));
        // v_t rows are the conjugated right singular vectors.
        for r in 0..nc {
            v_right[(r, col)] = v_t[(i, r)].conj();
        }
        singular_values.push(dec.singular_values[i]);
    }

    Ok(SVDResult {
        u_left,
        singular_values,
        v_right,
        numerical_rank: rank,
    })
}

/// Hermitian eigendecomposition with eigenvalues ascending.
pub fn eig_hermitian(h: &CMatrix) -> Result<SpectralDecomposition> {
    check_finite(h, "matrix")?;
    check_square(h, "matrix")?;
    let defect = hermitian_defect(h);
    let htol = tol::HERMITIAN_REL * h.norm();
    if defect > htol.max(f64::EPSILON) {
        return Err(OpError::NotHermitian {
            residual: defect,
            tol: htol,
        });
    }
    // Symmetrize before factorizing so roundoff asymmetry cannot leak in.
    let hs = (h + h.adjoint()).map(|z| z * 0.5);
    let se = nalgebra::SymmetricEigen::new(hs);

    let n = h.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        se.eigenvalues[i]
            .partial_cmp(&se.eigenvalues[j])
            .expect("eigenvalues are finite")
    });
    let mut q = CMatrix::zeros(n, n);
    let mut vals = Vec::with_capacity(n);
    for (col, &i) in order.iter().enumerate() {
        q.set_column(col, &se.eigenvectors.column(i));
        vals.push(cr(se.eigenvalues[i]));
    }
    Ok(SpectralDecomposition {
        eigenvalues: vals,
        eigenvectors: q,
        hermitian: true,
    })
}

/// Lexicographic (real, imaginary) comparison used for deterministic
/// eigenvalue ordering of normal and diagonalizable matrices.
fn lex_cmp(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.partial_cmp(&b.re)
        .expect("finite")
        .then(a.im.partial_cmp(&b.im).expect("finite"))
}

/// Unitary diagonalization of a normal matrix via Schur decomposition.
///
/// A = Q T Q* with T upper triangular; for normal A the strict upper part of
/// T must vanish, which is checked explicitly — the diagonal then carries the
/// eigenvalues and Q the orthonormal eigenvectors.
pub fn diagonalize_normal(a: &CMatrix) -> Result<SpectralDecomposition> {
    check_finite(a, "matrix")?;
    check_square(a, "matrix")?;
    let n = a.nrows();
    let a_fro = a.norm();

    // Cheap commutator pre-check before the O(n³) factorization.
    let defect = normality_defect(a);
    let pre_tol = tol::NORMALITY_REL * a_fro * a_fro;
    if defect > pre_tol.max(f64::EPSILON) {
        return Err(OpError::NotNormal {
            residual: defect,
            tol: pre_tol,
        });
    }

    let schur = a
        .clone()
        .try_schur(f64::EPSILON, 100_000)
        .ok_or_else(|| OpError::Internal("Schur iteration did not converge".into()))?;
    let (q, t) = schur.unpack();

    // Off-diagonal check: for a normal matrix the Schur form is diagonal up
    // to roundoff. This is the authoritative normality gate.
    let mut off = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off += t[(i, j)].norm_sqr();
            }
        }
    }
    let off = off.sqrt();
    let off_tol = (1e-11 * a_fro).max(f64::EPSILON * n as f64);
    if off > off_tol {
        return Err(OpError::NotNormal {
            residual: off,
            tol: off_tol,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| lex_cmp(&t[(i, i)], &t[(j, j)]));
    let mut qq = CMatrix::zeros(n, n);
    let mut vals = Vec::with_capacity(n);
    for (col, &i) in order.iter().enumerate() {
        qq.set_column(col, &q.column(i));
        vals.push(t[(i, i)]);
    }
    Ok(SpectralDecomposition {
        eigenvalues: vals,
        eigenvectors: qq,
        hermitian: false,
    })
}

/// Hermitian PSD square root and the pseudoinverse of that square root.
///
/// Eigenvalues in [−clip, 0) with clip = NEG_EIG_CLIP_REL·‖H‖ are treated as
/// roundoff and clipped to zero; anything below −NEG_EIG_REJECT_REL·‖H‖ is a
/// genuine negativity and rejected. The pseudoinverse vanishes on the
/// numerical kernel (eigenvalues ≤ rank_tol·λ_max).
pub fn pinv_psd_sqrt(h: &CMatrix, rank_tol: f64) -> Result<(CMatrix, CMatrix)> {
    let dec = eig_hermitian(h)?;
    let n = dec.dim();
    let lam: Vec<f64> = dec.real_eigenvalues();
    let scale = lam.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let reject = -tol::NEG_EIG_REJECT_REL * scale;
    let clip = -tol::NEG_EIG_CLIP_REL * scale;
    let mut clipped = Vec::with_capacity(n);
    for &l in &lam {
        if l < reject - f64::EPSILON {
            return Err(OpError::NotPSD {
                eigenvalue: l,
                tol: reject,
            });
        }
        clipped.push(if l < clip { 0.0 } else { l.max(0.0) });
    }
    let lam_max = clipped.iter().cloned().fold(0.0f64, f64::max);
    let kernel_threshold = effective_rank_tol(rank_tol, n) * lam_max;

    let q = &dec.eigenvectors;
    let sqrt_diag = DVector::from_iterator(n, clipped.iter().map(|&l| cr(l.sqrt())));
    let pinv_diag = DVector::from_iterator(
        n,
        clipped.iter().map(|&l| {
            if l > kernel_threshold {
                cr(1.0 / l.sqrt())
            } else {
                cr(0.0)
            }
        }),
    );
    let sqrt = q * CMatrix::from_diagonal(&sqrt_diag) * q.adjoint();
    let pinv = q * CMatrix::from_diagonal(&pinv_diag) * q.adjoint();
    Ok((sqrt, pinv))
}

/// Eigendecomposition of a diagonalizable (possibly non-normal) matrix.
///
/// Route: Schur A = Q T Q*, then eigenvectors of the triangular factor by
/// back-substitution. Errors with `NotDiagonalizable` when the eigenvector
/// matrix condition number exceeds the gate (defective or nearly defective
/// input).
pub fn eig_general(a: &CMatrix) -> Result<GeneralEig> {
    check_finite(a, "matrix")?;
    check_square(a, "matrix")?;
    let n = a.nrows();
    let schur = a
        .clone()
        .try_schur(f64::EPSILON, 100_000)
        .ok_or_else(|| OpError::Internal("Schur iteration did not converge".into()))?;
    let (q, t) = schur.unpack();
    let t_norm = t.norm().max(f64::MIN_POSITIVE);

    // Eigenvectors of the upper-triangular T: for eigenvalue λ_k = T_kk build
    // y with y_k = 1 solving (T − λ_k)y = 0 by back-substitution. Tiny
    // divisors (clustered eigenvalues) are perturbed to a floor; a genuinely
    // defective matrix then fails the condition-number gate below.
    let mut v = CMatrix::zeros(n, n);
    for k in 0..n {
        let lam = t[(k, k)];
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        y[k] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut s = Complex64::new(0.0, 0.0);
            for j in i + 1..=k {
                s += t[(i, j)] * y[j];
            }
            let mut d = t[(i, i)] - lam;
            let floor = f64::EPSILON * t_norm;
            if d.norm() < floor {
                d = Complex64::new(floor, 0.0);
            }
            y[i] = -s / d;
        }
        let mut col = DVector::from_vec(y);
        let norm = col.norm();
        col /= cr(norm);
        v.set_column(k, &col);
    }
    let mut vectors = &q * v;

    // Deterministic ordering by eigenvalue.
    let mut vals: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| lex_cmp(&vals[i], &vals[j]));
    let mut sorted = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        sorted.set_column(col, &vectors.column(i));
    }
    vals = order.iter().map(|&i| vals[i]).collect();
    vectors = sorted;

    let sv = vectors.clone().singular_values();
    let (mut smax, mut smin) = (0.0f64, f64::INFINITY);
    for s in sv.iter() {
        smax = smax.max(*s);
        smin = smin.min(*s);
    }
    let cond_v = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !cond_v.is_finite() || cond_v > tol::DIAGONALIZABLE_COND_MAX {
        return Err(OpError::NotDiagonalizable(format!(
            "eigenvector matrix condition number {cond_v:.3e} exceeds {:.1e}",
            tol::DIAGONALIZABLE_COND_MAX
        )));
    }
    let vectors_inv = crate::matrix::inverse(&vectors)?;
    Ok(GeneralEig {
        eigenvalues: vals,
        vectors,
        vectors_inv,
        cond_v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, identity};
    use crate::rng::Stream;

    #[test]
    fn svd_identity_is_full_rank() {
        let r = svd(&identity(3), 0.0).unwrap();
        assert_eq!(r.numerical_rank, 3);
        for s in &r.singular_values {
            assert!((s - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn svd_zero_matrix_has_rank_zero() {
        let r = svd(&CMatrix::zeros(2, 2), 0.0).unwrap();
        assert_eq!(r.numerical_rank, 0);
        assert!(r.singular_values.is_empty());
    }

    #[test]
    fn svd_reconstruction_residual_is_tiny() {
        let m = Stream::new(9).gaussian(4, 3);
        let r = svd(&m, 0.0).unwrap();
        let err = (r.reconstruct() - &m).norm();
        assert!(err <= tol::SVD_RECONSTRUCT_REL * m.norm().max(1.0), "err {err}");
        // Orthonormal factors.
        assert!((r.u_left.adjoint() * &r.u_left - identity(3)).norm() < 1e-12 * 3.0);
        assert!((r.v_right.adjoint() * &r.v_right - identity(3)).norm() < 1e-12 * 3.0);
    }

    #[test]
    fn svd_detects_planted_rank() {
        let mut s = Stream::new(21);
        let w = s.unitary(5);
        let v = s.unitary(5);
        let sigma = CMatrix::from_diagonal(&DVector::from_vec(vec![
            cr(3.0),
            cr(1.0),
            cr(0.2),
            cr(0.0),
            cr(0.0),
        ]));
        let m = &w * sigma * v.adjoint();
        let r = svd(&m, 0.0).unwrap();
        assert_eq!(r.numerical_rank, 3);
    }

    #[test]
    fn svd_rejects_nan() {
        let m = CMatrix::from_row_slice(1, 1, &[c(f64::NAN, 0.0)]);
        assert!(matches!(svd(&m, 0.0), Err(OpError::InvalidInput(_))));
    }

    #[test]
    fn eig_hermitian_diag_case() {
        let h = CMatrix::from_diagonal(&DVector::from_vec(vec![cr(2.0), cr(1.0)]));
        let d = eig_hermitian(&h).unwrap();
        assert!((d.eigenvalues[0].re - 1.0).abs() < 1e-14);
        assert!((d.eigenvalues[1].re - 2.0).abs() < 1e-14);
    }

    #[test]
    fn eig_hermitian_symmetry_forced_pm_one() {
        let h = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]);
        let d = eig_hermitian(&h).unwrap();
        assert!((d.eigenvalues[0].re + 1.0).abs() < 1e-14);
        assert!((d.eigenvalues[1].re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_hermitian_reconstructs_random() {
        let h = Stream::new(4).hermitian(8);
        let d = eig_hermitian(&h).unwrap();
        let err = (d.reconstruct() - &h).norm();
        assert!(err <= tol::EIG_RECONSTRUCT_REL * h.norm(), "err {err}");
        // Ascending order.
        for w in d.real_eigenvalues().windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn eig_hermitian_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        assert!(matches!(
            eig_hermitian(&m),
            Err(OpError::NotHermitian { .. })
        ));
    }

    #[test]
    fn normal_diag_pure_imaginary() {
        let a = CMatrix::from_diagonal(&DVector::from_vec(vec![c(0.0, 1.0), c(0.0, -1.0)]));
        let d = diagonalize_normal(&a).unwrap();
        // Lexicographic order: (0,−1) before (0,1).
        assert!((d.eigenvalues[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((d.eigenvalues[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn normal_recovers_planted_spectrum() {
        let mut s = Stream::new(33);
        let w = s.unitary(3);
        let lam = DVector::from_vec(vec![c(1.0, 2.0), c(3.0, 0.0), c(-0.5, 0.25)]);
        let a = &w * CMatrix::from_diagonal(&lam) * w.adjoint();
        let d = diagonalize_normal(&a).unwrap();
        let mut expected: Vec<Complex64> = lam.iter().cloned().collect();
        expected.sort_by(lex_cmp);
        for (got, want) in d.eigenvalues.iter().zip(expected.iter()) {
            assert!((got - want).norm() < 1e-10, "{got} vs {want}");
        }
        assert!((d.reconstruct() - &a).norm() <= tol::EIG_RECONSTRUCT_REL * a.norm());
    }

    #[test]
    fn jordan_block_is_not_normal() {
        let a = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        assert!(matches!(diagonalize_normal(&a), Err(OpError::NotNormal { .. })));
    }

    #[test]
    fn psd_sqrt_diag_case() {
        let h = CMatrix::from_diagonal(&DVector::from_vec(vec![cr(4.0), cr(0.0)]));
        let (s, p) = pinv_psd_sqrt(&h, 0.0).unwrap();
        assert!((s[(0, 0)].re - 2.0).abs() < 1e-14);
        assert!(s[(1, 1)].norm() < 1e-14);
        assert!((p[(0, 0)].re - 0.5).abs() < 1e-14);
        assert!(p[(1, 1)].norm() < 1e-14);
    }

    #[test]
    fn psd_sqrt_random_squares_back() {
        let h = Stream::new(8).psd(6);
        let (s, p) = pinv_psd_sqrt(&h, 0.0).unwrap();
        assert!(((&s * &s) - &h).norm() <= tol::PSD_SQRT_REL * h.norm());
        // pinv ⊥ kernel: s·p·s = s.
        assert!(((&s * &p * &s) - &s).norm() <= 1e-10 * h.norm().sqrt().max(1.0));
    }

    #[test]
    fn psd_sqrt_rejects_negative() {
        let h = CMatrix::from_diagonal(&DVector::from_vec(vec![cr(1.0), cr(-0.5)]));
        assert!(matches!(pinv_psd_sqrt(&h, 0.0), Err(OpError::NotPSD { .. })));
    }

    #[test]
    fn psd_sqrt_clips_roundoff_negatives() {
        let h = CMatrix::from_diagonal(&DVector::from_vec(vec![cr(1.0), cr(-1e-12)]));
        let (s, _) = pinv_psd_sqrt(&h, 0.0).unwrap();
        assert!(s[(1, 1)].norm() < 1e-6);
    }

    #[test]
    fn hand_2x2_and_3x3_eigenvalues_match_characteristic_roots() {
        // [[2,1],[1,2]] has roots 1 and 3.
        let h = CMatrix::from_row_slice(2, 2, &[cr(2.0), cr(1.0), cr(1.0), cr(2.0)]);
        let d = eig_hermitian(&h).unwrap();
        assert!((d.eigenvalues[0].re - 1.0).abs() < 1e-10);
        assert!((d.eigenvalues[1].re - 3.0).abs() < 1e-10);
        // circulant-like normal 3×3 with known spectrum {6, −(3±i√3)/... }:
        // use diag conjugated instead for an exact hand case.
        let w = Stream::new(2).unitary(3);
        let lam = DVector::from_vec(vec![cr(1.0), c(0.0, 2.0), c(-1.0, -1.0)]);
        let a = &w * CMatrix::from_diagonal(&lam) * w.adjoint();
        let d = diagonalize_normal(&a).unwrap();
        let mut expected: Vec<Complex64> = lam.iter().cloned().collect();
        expected.sort_by(lex_cmp);
        for (got, want) in d.eigenvalues.iter().zip(expected.iter()) {
            assert!((got - want).norm() < 1e-10);
        }
    }

    #[test]
    fn eig_general_handles_non_normal_diagonalizable() {
        // Upper-triangular with distinct diagonal: diagonalizable, not normal.
        let a = CMatrix::from_row_slice(
            3,
            3,
            &[
                cr(1.0),
                cr(2.0),
                c(0.0, 1.0),
                cr(0.0),
                cr(2.5),
                cr(-1.0),
                cr(0.0),
                cr(0.0),
                c(4.0, 0.5),
            ],
        );
        let e = eig_general(&a).unwrap();
        let d = CMatrix::from_diagonal(&DVector::from_vec(e.eigenvalues.clone()));
        let err = (&e.vectors * d * &e.vectors_inv - &a).norm();
        assert!(err < 1e-10 * a.norm(), "err {err}, cond {}", e.cond_v);
    }

    #[test]
    fn eig_general_rejects_jordan_block() {
        let a = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        assert!(matches!(
            eig_general(&a),
            Err(OpError::NotDiagonalizable(_))
        ));
    }
}
