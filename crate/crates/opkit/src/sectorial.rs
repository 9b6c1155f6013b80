//! Numerical range, sectoriality certificates, and the operator machinery
//! they support.
//!
//! A matrix is accretive when its numerical range lies in the closed right
//! half-plane, and sectorial (with vertex 0 and semi-angle θ < π/2) when the
//! range fits inside |arg w| ≤ θ. This module certifies those properties,
//! factors a sectorial matrix as A = A_R^{1/2}(I + iX)A_R^{1/2} with
//! Hermitian X (the Kato decomposition), and builds the two operators the
//! acute-angle theory runs on:
//!
//! * Y = (A+sI)^α·((A*+sI)^α)⁻¹ whose real-part eigenvalue bounds ε₁, ε₂
//!   make the lower bounds
//!   Re((A*)^α f, A^α f) ≥ ε₀·max(‖A^α f‖², ‖(A*)^α f‖²) exact algebra,
//! * T_# = (A^#+I)^{1/2}(A_R+I)^{−1/2}, the similarity that turns
//!   (A_R+I)-sandwiches into (A+I)-sandwiches.
//!
//! Fractional powers of non-Hermitian accretive matrices are taken from the
//! resolvent quadrature in [`crate::funcalc`]; Hermitian square roots use
//! the spectral route directly.

use num_complex::Complex64;

use crate::error::{OpError, Result};
use crate::funcalc::{
    apply_function, frac_power_m_accretive, neg_power_accretive, QuadratureConfig,
};
use crate::linalg::{eig_general, eig_hermitian, pinv_psd_sqrt};
use crate::matrix::{
    c, check_finite, check_square, cr, hermitian_part, identity, inverse, op_norm,
    sigma_extremes, skew_part, CMatrix,
};
use crate::rng::Stream;
use crate::tol;

/// Sampled boundary of the numerical range {(f, Af) : ‖f‖ = 1}.
#[derive(Debug, Clone)]
pub struct NumericalRangeBoundary {
    /// Boundary points, one per support angle.
    pub points: Vec<Complex64>,
    /// Angles θ_k = 2πk/m the points were generated from.
    pub angles_used: Vec<f64>,
}

/// Accretivity and sectoriality judgment for a matrix, vertex fixed at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorialCertificate {
    /// Numerical range lies in the closed right half-plane (to tolerance).
    pub accretive: bool,
    /// λ_min(Re A).
    pub accretivity_margin: f64,
    /// Accretive and the sampled boundary stays strictly inside |arg| < π/2.
    pub sectorial: bool,
    /// Largest |arg w| over sampled boundary points away from 0, clamped to
    /// [0, π/2]; certified only up to the boundary sampling resolution.
    pub semi_angle_theta: f64,
    /// The sector vertex; always 0 here.
    pub vertex: Complex64,
}

/// The Kato factorization A = A_R^{1/2}(I + iX)A_R^{1/2}.
#[derive(Debug, Clone)]
pub struct KatoFactors {
    /// Hermitian part (A + A*)/2, PSD for accretive A.
    pub a_r: CMatrix,
    /// Hermitian middle factor, zero on ker(A_R).
    pub x: CMatrix,
    /// ‖A_R^{1/2}(I + iX)A_R^{1/2} − A‖_F.
    pub reconstruction_residual: f64,
}

/// The acute-angle operator Y and its real-part constants.
#[derive(Debug, Clone)]
pub struct AcuteAngleReport {
    /// Y = (A+sI)^α·((A*+sI)^α)⁻¹.
    pub y: CMatrix,
    /// λ_min(Re Y).
    pub eps1: f64,
    /// λ_min(Re Y⁻¹).
    pub eps2: f64,
    /// min(ε₁, ε₂): the constant in the two-sided lower bounds.
    pub eps0: f64,
    /// Exponent used, in (0, 1/2].
    pub alpha: f64,
    /// Whether the shift s = 1 was applied.
    pub shifted: bool,
}

/// Boundary of the numerical range by the rotation method: for each support
/// angle θ, a top eigenvector v of Re(e^{−iθ}A) attains the support function,
/// and (v, Av) is a boundary point.
fn support_point(a: &CMatrix, theta: f64) -> Result<Complex64> {
    let n = a.nrows();
    let rotated = a.map(|z| z * Complex64::new(0.0, -theta).exp());
    let h = hermitian_part(&rotated);
    let dec = eig_hermitian(&h)?;
    let v = dec.eigenvectors.column(n - 1).into_owned();
    Ok((v.adjoint() * a * &v)[(0, 0)])
}

pub fn numerical_range_boundary(a: &CMatrix, m: usize) -> Result<NumericalRangeBoundary> {
    check_square(a, "matrix")?;
    check_finite(a, "matrix")?;
    if m < 8 {
        return Err(OpError::InvalidInput(format!(
            "need at least 8 support angles, got {m}"
        )));
    }
    let mut points = Vec::with_capacity(m);
    let mut angles = Vec::with_capacity(m);
    for k in 0..m {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
        points.push(support_point(a, theta)?);
        angles.push(theta);
    }
    Ok(NumericalRangeBoundary {
        points,
        angles_used: angles,
    })
}

/// λ_min(Re A).
pub fn accretivity_margin(a: &CMatrix) -> Result<f64> {
    let dec = eig_hermitian(&hermitian_part(a))?;
    Ok(dec.real_eigenvalues().first().copied().unwrap_or(0.0))
}

/// Accretivity by two routes that must agree: the numerical-range criterion
/// λ_min(Re A) ≥ −tol, and the resolvent criterion ‖(A+ζ)⁻¹‖ ≤ 1/ζ sampled
/// over a geometric grid of ζ > 0. Returns (accretive, margin).
///
/// If the matrix fails the margin test, a witness shift ζ* (large enough
/// that the resolvent bound provably breaks) is checked instead; either way
/// a disagreement between the two criteria is an internal error, not a
/// judgment about the input.
pub fn accretive_certificate(a: &CMatrix, n_resolvent_samples: usize) -> Result<(bool, f64)> {
    check_square(a, "matrix")?;
    check_finite(a, "matrix")?;
    let n = a.nrows();
    let margin = accretivity_margin(a)?;
    let norm_a = op_norm(a);
    let accretive = margin >= -tol::ACCRETIVE_MARGIN_REL * norm_a.max(1.0);

    let samples = n_resolvent_samples.max(2);
    let scale = norm_a.max(1.0);
    if accretive {
        for i in 0..samples {
            // geometric grid from 1e-3·scale to 1e3·scale
            let frac = i as f64 / (samples - 1) as f64;
            let zeta = scale * 10f64.powf(-3.0 + 6.0 * frac);
            let r = inverse(&(a + identity(n).map(|z| z * zeta)))?;
            if op_norm(&r) > 1.0 / zeta + tol::RESOLVENT_BOUND_SLACK {
                return Err(OpError::Internal(format!(
                    "accretivity criteria disagree: margin {margin:.3e} but \
                     resolvent norm {} exceeds 1/{zeta}",
                    op_norm(&r)
                )));
            }
        }
    } else {
        // With λ_min(Re A) = −δ and f its eigenvector, ‖(A+ζ)f‖² =
        // (ζ−δ)² + ‖(Im A)f‖², so any ζ > (‖A‖²+δ²)/(2δ) gives
        // ‖(A+ζ)⁻¹‖ > 1/ζ. Use twice that.
        let delta = -margin;
        let zeta = (norm_a * norm_a + delta * delta) / delta;
        let r = inverse(&(a + identity(n).map(|z| z * zeta)))?;
        if op_norm(&r) <= 1.0 / zeta {
            return Err(OpError::Internal(format!(
                "accretivity criteria disagree: margin {margin:.3e} < 0 but \
                 resolvent bound holds at witness shift {zeta:.3e}"
            )));
        }
    }
    Ok((accretive, margin))
}

/// Full sectoriality certificate from an m-point boundary sample.
///
/// The coarse sample locates the angle of largest |arg w|; a golden-section
/// refinement of the support angle around that bracket then converges the
/// semi-angle itself to machine precision (the boundary value varies
/// quadratically around its maximizer, so the angle estimate is far more
/// accurate than the angular grid).
pub fn sectorial_certificate(a: &CMatrix, m: usize) -> Result<SectorialCertificate> {
    let boundary = numerical_range_boundary(a, m)?;
    let (accretive, margin) = accretive_certificate(a, 9)?;
    let norm_a = op_norm(a);
    let cutoff = tol::SECTOR_POINT_REL * norm_a;
    let arg_of = |w: Complex64| -> Option<f64> {
        if w.norm() > cutoff {
            Some(w.arg().abs())
        } else {
            None
        }
    };
    let mut theta: f64 = 0.0;
    let mut best_k: Option<usize> = None;
    for (k, &w) in boundary.points.iter().enumerate() {
        if let Some(t) = arg_of(w) {
            if t >= theta {
                theta = t;
                best_k = Some(k);
            }
        }
    }
    if let Some(k) = best_k {
        let step = 2.0 * std::f64::consts::PI / m as f64;
        let mut lo = boundary.angles_used[k] - step;
        let mut hi = boundary.angles_used[k] + step;
        let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
        let eval = |t: f64| -> Result<f64> {
            Ok(arg_of(support_point(a, t)?).unwrap_or(0.0))
        };
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let mut f1 = eval(x1)?;
        let mut f2 = eval(x2)?;
        for _ in 0..80 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = eval(x2)?;
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = eval(x1)?;
            }
        }
        theta = theta.max(f1).max(f2);
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    let sectorial = accretive && theta < half_pi - tol::SECTOR_ANGLE_MARGIN;
    Ok(SectorialCertificate {
        accretive,
        accretivity_margin: margin,
        sectorial,
        semi_angle_theta: theta.min(half_pi),
        vertex: Complex64::new(0.0, 0.0),
    })
}

/// Kato decomposition A = A_R^{1/2}(I + iX)A_R^{1/2} with Hermitian X
/// vanishing on ker(A_R).
///
/// Requires A accretive with ker(A_R) ⊆ ker(Im A) — the obstruction that
/// rules out purely imaginary spectra reaching the sector boundary.
/// `rank_tol` = 0 selects the default kernel threshold for A_R.
pub fn kato_decompose(a: &CMatrix, rank_tol: f64) -> Result<KatoFactors> {
    check_square(a, "matrix")?;
    check_finite(a, "matrix")?;
    let n = a.nrows();
    let a_r = hermitian_part(a);
    let im_a = skew_part(a);
    let margin = accretivity_margin(a)?;
    let norm_a = op_norm(a);
    let threshold = tol::ACCRETIVE_MARGIN_REL * norm_a.max(1.0);
    if margin < -threshold {
        return Err(OpError::NotAccretive {
            margin,
            tol: threshold,
        });
    }
    let (sqrt_ar, pinv_sqrt) = pinv_psd_sqrt(&a_r, rank_tol)?;
    // Projection onto ran(A_R); its complement carries ker(A_R).
    let p_ran = &sqrt_ar * &pinv_sqrt;
    let p_ker = identity(n) - &p_ran;
    let coupling = (&im_a * &p_ker).norm();
    if coupling > tol::KATO_KERNEL_ABS * norm_a.max(1.0) {
        return Err(OpError::KernelObstruction { coupling });
    }
    let x = &pinv_sqrt * &im_a * &pinv_sqrt;
    let x = (&x + x.adjoint()).map(|z| z * 0.5);
    let middle = identity(n) + x.map(|z| z * Complex64::new(0.0, 1.0));
    let reconstruction_residual = (&sqrt_ar * middle * &sqrt_ar - a).norm();
    Ok(KatoFactors {
        a_r,
        x,
        reconstruction_residual,
    })
}

/// (M + shift·I)^α for accretive M and α ∈ (0, 1], through the resolvent
/// quadrature: the power is assembled as (M+sI)·(M+sI)^{−(1−α)}. At α = 1/2
/// the result is cross-checked by squaring; on failure (or if the quadrature
/// does not converge) a diagonalization fallback is tried before giving up.
pub fn power_accretive(m: &CMatrix, alpha: f64, shifted: bool) -> Result<CMatrix> {
    check_square(m, "matrix")?;
    check_finite(m, "matrix")?;
    if !(0.0 < alpha && alpha <= 1.0) {
        return Err(OpError::InvalidInput(format!(
            "exponent must lie in (0,1], got {alpha}"
        )));
    }
    let n = m.nrows();
    let shift = if shifted { 1.0 } else { 0.0 };
    let base = m + identity(n).map(|z| z * shift);
    if alpha == 1.0 {
        return Ok(base);
    }
    let cfg = QuadratureConfig::default();
    let primary = if shifted {
        frac_power_m_accretive(m, 1.0 - alpha, &cfg).map(|r| &base * r.value)
    } else {
        neg_power_accretive(m, 1.0 - alpha, &cfg).map(|r| &base * r.value)
    };
    let norm_base = op_norm(&base).max(1.0);
    let acceptable = |candidate: &CMatrix| -> bool {
        if alpha != 0.5 {
            return true;
        }
        (candidate * candidate - &base).norm() <= tol::SECTORIAL_SQRT_REL * norm_base
    };
    match primary {
        Ok(value) if acceptable(&value) => return Ok(value),
        _ => {}
    }
    // Fallback: direct diagonalization for diagonalizable inputs.
    let dec = eig_general(&base).map_err(|e| {
        OpError::PowerComputationFailed(format!(
            "quadrature route failed and the matrix is not diagonalizable: {e}"
        ))
    })?;
    let mut fd = CMatrix::zeros(n, n);
    for (i, &lam) in dec.eigenvalues.iter().enumerate() {
        let y = lam.powf(alpha);
        if !y.is_finite() {
            return Err(OpError::PowerComputationFailed(format!(
                "eigenvalue {lam} has no finite power {alpha}"
            )));
        }
        fd[(i, i)] = y;
    }
    let value = &dec.vectors * fd * &dec.vectors_inv;
    if acceptable(&value) {
        Ok(value)
    } else {
        Err(OpError::PowerComputationFailed(format!(
            "square of the computed root differs from the target beyond {:.1e}",
            tol::SECTORIAL_SQRT_REL * norm_base
        )))
    }
}

fn require_sectorial(a: &CMatrix) -> Result<SectorialCertificate> {
    let cert = sectorial_certificate(a, 256)?;
    if !cert.sectorial {
        return Err(OpError::NotSectorial(format!(
            "accretive: {}, semi-angle {:.6} rad",
            cert.accretive, cert.semi_angle_theta
        )));
    }
    Ok(cert)
}

/// Acute-angle report: Y = (A+sI)^α·((A*+sI)^α)⁻¹ together with the constants
/// ε₁ = λ_min(Re Y), ε₂ = λ_min(Re Y⁻¹), ε₀ = min(ε₁, ε₂).
///
/// The report is validated on `n_vectors` seeded unit vectors f: writing
/// P = (A+sI)^α and N = (A*+sI)^α, both
/// Re(Nf, Pf) ≥ (ε₀ − slack)·max(‖Pf‖², ‖Nf‖²) and
/// Re(Nf, Pf) ≥ (ε₀ − slack)·‖Pf‖·‖Nf‖ must hold — they follow from the
/// definition of ε₀ by algebra, so a violation flags an internal bug.
///
/// Unshifted form requires 0 outside the spectrum (σ_min(A) above tolerance);
/// the shifted form only needs sectoriality.
pub fn acute_angle(a: &CMatrix, alpha: f64, shifted: bool, seed: u64) -> Result<AcuteAngleReport> {
    if !(0.0 < alpha && alpha <= 0.5) {
        return Err(OpError::InvalidInput(format!(
            "alpha must lie in (0, 1/2], got {alpha}"
        )));
    }
    require_sectorial(a)?;
    if !shifted {
        let (sigma_max, sigma_min) = sigma_extremes(a);
        let threshold = 1e-10 * sigma_max.max(1.0);
        if sigma_min <= threshold {
            return Err(OpError::NotInvertible {
                sigma_min,
                tol: threshold,
            });
        }
    }
    let p = power_accretive(a, alpha, shifted)?;
    let n_mat = power_accretive(&a.adjoint(), alpha, shifted)?;
    let n_inv = inverse(&n_mat)?;
    let y = &p * &n_inv;
    let y_inv = inverse(&y)?;
    let eps1 = eig_hermitian(&hermitian_part(&y))?
        .real_eigenvalues()
        .first()
        .copied()
        .unwrap_or(0.0);
    let eps2 = eig_hermitian(&hermitian_part(&y_inv))?
        .real_eigenvalues()
        .first()
        .copied()
        .unwrap_or(0.0);
    let eps0 = eps1.min(eps2);

    // Randomized confirmation of the two lower bounds.
    let mut stream = Stream::fork(seed, "acute-angle-vectors");
    let dim = a.nrows();
    for _ in 0..1000 {
        let f = stream.unit_vector(dim);
        let pf = &p * &f;
        let nf = &n_mat * &f;
        let lhs = (nf.adjoint() * &pf)[(0, 0)].re;
        let np2 = pf.norm_squared();
        let nn2 = nf.norm_squared();
        let floor = eps0 - tol::ACUTE_SLACK;
        if lhs < floor * np2.max(nn2) - tol::ACUTE_SLACK
            || lhs < floor * np2.sqrt() * nn2.sqrt() - tol::ACUTE_SLACK
        {
            return Err(OpError::Internal(format!(
                "acute-angle bound violated on a sample vector: lhs {lhs:.6e}, \
                 eps0 {eps0:.6e}, norms ({:.3e}, {:.3e})",
                np2.sqrt(),
                nn2.sqrt()
            )));
        }
    }
    Ok(AcuteAngleReport {
        y,
        eps1,
        eps2,
        eps0,
        alpha,
        shifted,
    })
}

/// T_# = (A^# + I)^{1/2}·(A_R + I)^{−1/2}, where A^# is A or A* according to
/// `adjoint_flag` and A_R is the (shared) Hermitian part.
///
/// The similarity property is verified on a seeded Hermitian probe S:
/// (T_#⁻¹)*·(A_R+I)^{−1/2} S (A_R+I)^{−1/2}·T_#⁻¹ must equal
/// ((A^#)*+I)^{−1/2} S (A^#+I)^{−1/2}; a failure is an internal error.
pub fn t_sharp(a: &CMatrix, adjoint_flag: bool) -> Result<CMatrix> {
    require_sectorial(a)?;
    let n = a.nrows();
    let a_sharp = if adjoint_flag { a.adjoint() } else { a.clone() };
    let sqrt_sharp = power_accretive(&a_sharp, 0.5, true)?;
    // (A_R + I) is Hermitian PD: spectral inverse square root.
    let a_r1 = hermitian_part(a) + identity(n);
    let dec = eig_hermitian(&a_r1)?;
    let inv_sqrt_ar = apply_function(&dec, |z| cr(1.0 / z.re.max(f64::MIN_POSITIVE).sqrt()))?;
    let t = &sqrt_sharp * &inv_sqrt_ar;

    let (sigma_max, sigma_min) = sigma_extremes(&t);
    if sigma_min <= crate::tol::default_rank_tol(n) * sigma_max {
        return Err(OpError::Internal(format!(
            "similarity factor unexpectedly singular (sigma_min {sigma_min:.3e})"
        )));
    }
    // Probe the defining identity.
    let t_inv = inverse(&t)?;
    let probe = {
        let mut s = Stream::fork(0xD5, "t-sharp-probe");
        s.hermitian(n)
    };
    let inv_sqrt_sharp = inverse(&sqrt_sharp)?;
    let lhs = t_inv.adjoint() * &inv_sqrt_ar * &probe * &inv_sqrt_ar * &t_inv;
    let rhs = inv_sqrt_sharp.adjoint() * &probe * &inv_sqrt_sharp;
    let resid = (&lhs - &rhs).norm();
    if resid > tol::T_SHARP_PROBE_REL * probe.norm().max(1.0) {
        return Err(OpError::Internal(format!(
            "similarity probe identity failed: residual {resid:.3e}"
        )));
    }
    Ok(t)
}

/// Build a sectorial matrix H^{1/2}(I + iX)H^{1/2} with ‖X‖ = tan θ; shared
/// by tests here and the fixture generators.
pub(crate) fn assemble_sectorial(h: &CMatrix, x: &CMatrix, theta: f64) -> CMatrix {
    let n = h.nrows();
    let nx = op_norm(x);
    let scaled = if nx > 0.0 {
        x.map(|z| z * (theta.tan() / nx))
    } else {
        x.clone()
    };
    let dec = eig_hermitian(h).expect("Hermitian input");
    let sqrt_h = apply_function(&dec, |z| cr(z.re.max(0.0).sqrt())).expect("finite sqrt");
    &sqrt_h * (identity(n) + scaled.map(|z| z * c(0.0, 1.0))) * &sqrt_h
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn diag_c(vals: &[Complex64]) -> CMatrix {
        CMatrix::from_diagonal(&DVector::from_row_slice(vals))
    }

    fn diag_r(vals: &[f64]) -> CMatrix {
        diag_c(&vals.iter().map(|&v| cr(v)).collect::<Vec<_>>())
    }

    fn random_sectorial_local(seed: u64, n: usize, theta: f64) -> CMatrix {
        let mut s = Stream::new(seed);
        let h = s.pd(n, 0.2);
        let x = s.hermitian(n);
        assemble_sectorial(&h, &x, theta)
    }

    #[test]
    fn boundary_of_hermitian_diag() {
        let a = diag_r(&[0.0, 1.0]);
        let b = numerical_range_boundary(&a, 16).unwrap();
        for w in &b.points {
            assert!(w.im.abs() < 1e-10 && (-1e-10..=1.0 + 1e-10).contains(&w.re), "{w}");
        }
        let near_zero = b.points.iter().any(|w| w.norm() < 1e-8);
        let near_one = b.points.iter().any(|w| (w - cr(1.0)).norm() < 1e-8);
        assert!(near_zero && near_one);
    }

    #[test]
    fn boundary_of_nilpotent_is_a_circle() {
        let a = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        let b = numerical_range_boundary(&a, 32).unwrap();
        for w in &b.points {
            assert!((w.norm() - 0.5).abs() <= 1e-8, "{w}");
        }
    }

    #[test]
    fn boundary_attains_imaginary_extremes() {
        let a = diag_c(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let b = numerical_range_boundary(&a, 16).unwrap();
        assert!(b.points.iter().any(|w| (w - c(0.0, 1.0)).norm() < 1e-8));
        assert!(b.points.iter().any(|w| (w - c(0.0, -1.0)).norm() < 1e-8));
    }

    #[test]
    fn boundary_points_respect_support_functions() {
        let a = Stream::new(97).gaussian(5, 5);
        let b = numerical_range_boundary(&a, 64).unwrap();
        let norm_a = op_norm(&a);
        for (w, theta) in b.points.iter().zip(&b.angles_used) {
            let rotated = a.map(|z| z * Complex64::new(0.0, -theta).exp());
            let top = eig_hermitian(&hermitian_part(&rotated))
                .unwrap()
                .real_eigenvalues()
                .last()
                .copied()
                .unwrap();
            let support = (w * Complex64::new(0.0, -theta).exp()).re;
            assert!(support <= top + 1e-10 * norm_a, "{support} vs {top}");
        }
    }

    #[test]
    fn boundary_of_normal_matrix_in_eigenvalue_hull() {
        let mut s = Stream::new(14);
        let q = s.unitary(5);
        let eigs = [c(1.0, 0.3), c(0.2, -0.8), c(2.0, 1.0), c(0.5, 0.1), c(1.4, -0.4)];
        let a = &q * diag_c(&eigs) * q.adjoint();
        let b = numerical_range_boundary(&a, 32).unwrap();
        // hull membership via support functions over a fine direction grid
        for w in &b.points {
            for j in 0..64 {
                let phi = 2.0 * std::f64::consts::PI * j as f64 / 64.0;
                let dir = Complex64::new(0.0, -phi).exp();
                let support = eigs.iter().map(|l| (l * dir).re).fold(f64::MIN, f64::max);
                assert!((w * dir).re <= support + 1e-8);
            }
        }
    }

    #[test]
    fn accretive_certificate_cases() {
        let (ok, margin) = accretive_certificate(&identity(3), 9).unwrap();
        assert!(ok && (margin - 1.0).abs() < 1e-12);

        let rotation_generator = diag_c(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let (ok, margin) = accretive_certificate(&rotation_generator, 9).unwrap();
        assert!(ok && margin.abs() < 1e-12);

        let (ok, margin) = accretive_certificate(&identity(3).map(|z| -z), 9).unwrap();
        assert!(!ok && (margin + 1.0).abs() < 1e-12);
    }

    #[test]
    fn sectorial_certificate_cases() {
        let psd = Stream::new(8).psd(4);
        let cert = sectorial_certificate(&psd, 64).unwrap();
        assert!(cert.accretive && cert.sectorial);
        assert!(cert.semi_angle_theta <= 1e-7, "{}", cert.semi_angle_theta);

        // purely imaginary spectrum: accretive but the sector degenerates
        let border = diag_c(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let cert = sectorial_certificate(&border, 64).unwrap();
        assert!(cert.accretive && !cert.sectorial);

        let a = random_sectorial_local(3, 5, 0.5);
        let cert = sectorial_certificate(&a, 256).unwrap();
        assert!(cert.sectorial);
        assert!(cert.semi_angle_theta <= 0.5 + 1e-6, "{}", cert.semi_angle_theta);
    }

    #[test]
    fn kato_hermitian_input_has_zero_x() {
        let a = Stream::new(4).psd(4);
        let k = kato_decompose(&a, 0.0).unwrap();
        assert!(k.x.norm() <= 1e-10);
        assert!((k.a_r - &a).norm() <= 1e-12 * a.norm().max(1.0));
        assert!(k.reconstruction_residual <= tol::KATO_RECONSTRUCT_REL * op_norm(&a).max(1.0));
    }

    #[test]
    fn kato_recovers_fixture_and_respects_tan_bound() {
        let theta = 0.6;
        let a = random_sectorial_local(11, 5, theta);
        let k = kato_decompose(&a, 0.0).unwrap();
        assert!(
            k.reconstruction_residual <= tol::KATO_RECONSTRUCT_REL * op_norm(&a).max(1.0),
            "{}",
            k.reconstruction_residual
        );
        assert!(op_norm(&k.x) <= theta.tan() + tol::KATO_TAN_SLACK);
        let cert = sectorial_certificate(&a, 256).unwrap();
        assert!(op_norm(&k.x) <= cert.semi_angle_theta.tan() + tol::KATO_TAN_SLACK);
    }

    #[test]
    fn kato_rejects_imaginary_spectrum() {
        let border = diag_c(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let e = kato_decompose(&border, 0.0).unwrap_err();
        assert!(matches!(e, OpError::KernelObstruction { .. }), "{e}");
        let e = kato_decompose(&identity(2).map(|z| -z), 0.0).unwrap_err();
        assert!(matches!(e, OpError::NotAccretive { .. }), "{e}");
    }

    #[test]
    fn power_accretive_square_root_roundtrip() {
        let a = random_sectorial_local(21, 4, 0.4);
        let r = power_accretive(&a, 0.5, false).unwrap();
        assert!((&r * &r - &a).norm() <= tol::SECTORIAL_SQRT_REL * op_norm(&a).max(1.0));
        let rs = power_accretive(&a, 0.5, true).unwrap();
        let target = &a + identity(4);
        assert!((&rs * &rs - target).norm() <= tol::SECTORIAL_SQRT_REL * (op_norm(&a) + 1.0));
    }

    #[test]
    fn acute_angle_identity_and_hermitian_cases() {
        let r = acute_angle(&identity(3), 0.5, false, 7).unwrap();
        assert!((r.y.clone() - identity(3)).norm() <= 1e-9);
        assert!((r.eps0 - 1.0).abs() <= 1e-9, "{}", r.eps0);

        let a = Stream::new(51).pd(4, 0.3);
        for &alpha in &[0.1, 0.25, 0.5] {
            let r = acute_angle(&a, alpha, false, 7).unwrap();
            assert!((r.y.clone() - identity(4)).norm() <= 1e-7, "alpha {alpha}");
            assert!((r.eps0 - 1.0).abs() <= 1e-7, "alpha {alpha}: {}", r.eps0);
        }
    }

    #[test]
    fn acute_angle_positive_constants_on_sectorial_input() {
        let a = random_sectorial_local(31, 6, 0.4);
        for &alpha in &[0.1, 0.25, 0.5] {
            let r = acute_angle(&a, alpha, false, 99).unwrap();
            assert!(r.eps0 > 0.0, "alpha {alpha}: eps0 {}", r.eps0);
        }
        let shifted = acute_angle(&a, 0.5, true, 99).unwrap();
        assert!(shifted.eps0 > 1e-12);
    }

    #[test]
    fn acute_angle_gates() {
        let border = diag_c(&[c(0.0, 1.0), c(0.0, -1.0)]);
        let e = acute_angle(&border, 0.5, true, 1).unwrap_err();
        assert!(matches!(e, OpError::NotSectorial(_)), "{e}");

        // singular but sectorial: unshifted form refuses
        let singular = diag_r(&[0.0, 1.0]);
        let e = acute_angle(&singular, 0.5, false, 1).unwrap_err();
        assert!(matches!(e, OpError::NotInvertible { .. }), "{e}");
        // but the shifted form handles it
        let r = acute_angle(&singular, 0.5, true, 1).unwrap();
        assert!(r.eps0 > 0.0);

        let e = acute_angle(&identity(2), 0.75, false, 1).unwrap_err();
        assert!(matches!(e, OpError::InvalidInput(_)), "{e}");
    }

    #[test]
    fn t_sharp_hermitian_is_identity() {
        let a = Stream::new(16).psd(4);
        let t = t_sharp(&a, false).unwrap();
        assert!((t - identity(4)).norm() <= 1e-8);
    }

    #[test]
    fn t_sharp_sectorial_input() {
        let a = random_sectorial_local(41, 5, 0.45);
        let t = t_sharp(&a, false).unwrap();
        let (_, sigma_min) = sigma_extremes(&t);
        assert!(sigma_min > 0.0);
        // adjoint bookkeeping: flag on A equals no-flag on A*
        let t_flag = t_sharp(&a, true).unwrap();
        let t_star = t_sharp(&a.adjoint(), false).unwrap();
        assert!((t_flag - t_star).norm() <= 1e-9);
    }
}
