//! Relative bounds, form bounds, and the factorization identities that
//! transport them.
//!
//! For Hermitian PSD A and arbitrary B the quadratic relative bounds
//! ‖Bf‖² ≤ ã²‖Af‖² + b̃²‖f‖² form a computable frontier: for each ã the
//! minimal b̃ is an eigenvalue of B*B − ã²A². Everything else here converts,
//! transports, or sharpens such pairs:
//!
//! * the resolvent curve μ ↦ ‖B(A+μI)⁻¹‖ and its envelopes a + b/μ,
//! * the form bound ‖|B|^{1/2}(A+I)^{−1/2}‖ ≤ √(a+b),
//! * sandwich operators (A_l+I)^{−1/2}·B·(A_r+I)^{−1/2} with their exact
//!   polar factorization through |B|^{1/2} and |B*|^{1/2},
//! * Heinz interpolation: A, B ⪰ I and A² ⪰ B² force A^{2α} ⪰ B^{2α},
//! * subordination constants D_α = ‖|Q|^α A^{−α}‖ and the induced bilinear
//!   estimate |(f, Qg)| ≤ C_α‖B^{1−α}f‖‖A^α g‖,
//! * the complex-power sandwich family (A*+I)^{−z}|B|(A+I)^{−(1−z)} with its
//!   two-factor splitting and the similarity conjugation at z = 1/2.

use num_complex::Complex64;

use crate::error::{OpError, Result};
use crate::funcalc::{apply_function, complex_power, frac_power_m_accretive, neg_power_accretive, QuadratureConfig};
use crate::linalg::{eig_general, eig_hermitian};
use crate::matrix::{
    check_finite, check_square, cr, hermitian_part, identity, inverse, op_norm, sigma_extremes,
    CMatrix,
};
use crate::polar::polar;
use crate::rng::Stream;
use crate::sectorial::{power_accretive, t_sharp};
use crate::tol;

/// A relative-bound pair: quadratic form ‖Bf‖² ≤ a²‖Af‖² + b²‖f‖² when
/// `quadratic`, linear form ‖Bf‖ ≤ a‖Af‖ + b‖f‖ otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    /// Coefficient on ‖Af‖ (resp. ‖Af‖²).
    pub a: f64,
    /// Coefficient on ‖f‖ (resp. ‖f‖²).
    pub b: f64,
    /// Which of the two inequality shapes the pair certifies.
    pub quadratic: bool,
}

/// Full report assembled for the CLI: frontier pairs, resolvent curve, form
/// norms for B and B*, and the symmetric sandwich norm.
#[derive(Debug, Clone)]
pub struct BoundReport {
    /// Quadratic frontier pairs, one per requested slope.
    pub pairs: Vec<BoundPair>,
    /// (μ, ‖B(A+μI)⁻¹‖) samples.
    pub curve: Vec<(f64, f64)>,
    /// ‖|B|^{1/2}(A+I)^{−1/2}‖.
    pub form_norm: f64,
    /// ‖|B*|^{1/2}(A+I)^{−1/2}‖.
    pub form_norm_adjoint: f64,
    /// ‖(A+I)^{−1/2}·B·(A+I)^{−1/2}‖.
    pub sandwich_norm: f64,
}

fn require_hermitian_psd(a: &CMatrix, label: &str) -> Result<()> {
    let defect = crate::matrix::hermitian_defect(a);
    let scale = a.norm().max(1.0);
    if defect > tol::HERMITIAN_REL * scale {
        return Err(OpError::NotHermitian {
            residual: defect,
            tol: tol::HERMITIAN_REL * scale,
        });
    }
    let dec = eig_hermitian(a)?;
    let lam_min = dec.real_eigenvalues().first().copied().unwrap_or(0.0);
    let threshold = tol::NEG_EIG_REJECT_REL * op_norm(a).max(1.0);
    if lam_min < -threshold {
        return Err(OpError::NotPSD {
            eigenvalue: lam_min,
            tol: threshold,
        });
    }
    let _ = label;
    Ok(())
}

/// Minimal quadratic pairs over a grid of slopes: for each ã in `a_grid` the
/// smallest admissible b̃ is sqrt(max(0, λ_max(B*B − ã²A²))), an exact
/// eigenvalue certificate of ‖Bf‖² ≤ ã²‖Af‖² + b̃²‖f‖² for every f.
pub fn admissible_pairs(b: &CMatrix, a: &CMatrix, a_grid: &[f64]) -> Result<Vec<BoundPair>> {
    check_square(a, "A")?;
    check_finite(b, "B")?;
    require_hermitian_psd(a, "A")?;
    if b.ncols() != a.nrows() {
        return Err(OpError::DimensionMismatch(format!(
            "B has {} columns but A is {}x{}",
            b.ncols(),
            a.nrows(),
            a.ncols()
        )));
    }
    let btb = b.adjoint() * b;
    let a2 = a * a;
    let mut out = Vec::with_capacity(a_grid.len());
    for &at in a_grid {
        if !(at >= 0.0) {
            return Err(OpError::InvalidInput(format!(
                "slope grid entries must be nonnegative, got {at}"
            )));
        }
        let m = &btb - a2.map(|z| z * (at * at));
        let lam_max = eig_hermitian(&m)?
            .real_eigenvalues()
            .last()
            .copied()
            .unwrap_or(0.0);
        out.push(BoundPair {
            a: at,
            b: lam_max.max(0.0).sqrt(),
            quadratic: true,
        });
    }
    Ok(out)
}

/// Convert between the two inequality shapes: a linear pair (a, b) becomes
/// the quadratic pair (√(1+ε)·a, √(1+1/ε)·b); a quadratic pair is already
/// linear with the same constants.
pub fn convert_pair(p: BoundPair, eps: f64) -> BoundPair {
    assert!(eps > 0.0, "conversion parameter must be positive");
    if p.quadratic {
        BoundPair {
            a: p.a,
            b: p.b,
            quadratic: false,
        }
    } else {
        BoundPair {
            a: ((1.0 + eps) * p.a * p.a).sqrt(),
            b: ((1.0 + 1.0 / eps) * p.b * p.b).sqrt(),
            quadratic: true,
        }
    }
}

/// The resolvent curve μ ↦ ‖B(A+μI)⁻¹‖ at the given shifts.
///
/// Every admissible linear pair (a, b) dominates it: curve(μ) ≤ a + b/μ. For
/// matrices the infimum over envelopes is 0 as μ → ∞ — the curve itself,
/// not a single headline constant, is the meaningful report.
pub fn relative_bound_curve(b: &CMatrix, a: &CMatrix, mus: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_square(a, "A")?;
    check_finite(b, "B")?;
    require_hermitian_psd(a, "A")?;
    let n = a.nrows();
    let mut out = Vec::with_capacity(mus.len());
    for &mu in mus {
        if !(mu > 0.0) {
            return Err(OpError::InvalidInput(format!(
                "shifts must be positive, got {mu}"
            )));
        }
        let r = inverse(&(a + identity(n).map(|z| z * mu)))?;
        out.push((mu, op_norm(&(b * r))));
    }
    Ok(out)
}

/// |M|^{1/2} for arbitrary M, through the polar factors (spectral square
/// root of |M| on its singular values).
fn abs_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let f = polar(m, 0.0)?;
    Ok(f.apply_to_abs_t(|z| z.sqrt()))
}

/// |M*|^{1/2}, same route on the final space.
fn abs_star_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let f = polar(m, 0.0)?;
    Ok(f.apply_to_abs_t_star(|z| z.sqrt()))
}

/// (H + I)^{−1/2} for Hermitian PSD H, spectrally.
fn inv_sqrt_shifted(h: &CMatrix) -> Result<CMatrix> {
    let n = h.nrows();
    let dec = eig_hermitian(&(h + identity(n)))?;
    apply_function(&dec, |z| cr(1.0 / z.re.max(f64::MIN_POSITIVE).sqrt()))
}

/// Form-bound test: verifies the pair on 200 seeded vectors, then checks
/// ‖|B|^{1/2}(A+I)^{−1/2}‖ ≤ √(a+b). Returns (form_norm, bound_ok).
pub fn form_bound_check(b: &CMatrix, a: &CMatrix, p: BoundPair) -> Result<(f64, bool)> {
    check_square(a, "A")?;
    check_finite(b, "B")?;
    require_hermitian_psd(a, "A")?;
    if p.quadratic {
        return Err(OpError::InvalidInput(
            "form-bound check expects a linear pair".into(),
        ));
    }
    // Re-verify admissibility on random vectors before using the pair.
    let mut s = Stream::fork(0x0F0B, "form-bound-vectors");
    let n = a.nrows();
    let slack = 1e-10 * (op_norm(b) + op_norm(a)).max(1.0);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let f = s.unit_vector(n);
        let lhs = (b * &f).norm();
        let rhs = p.a * (a * &f).norm() + p.b;
        worst = worst.max(lhs - rhs);
    }
    if worst > slack {
        return Err(OpError::PairNotAdmissible {
            a: p.a,
            b: p.b,
            violation: worst,
        });
    }
    let form_norm = op_norm(&(abs_sqrt(b)? * inv_sqrt_shifted(a)?));
    let bound_ok = form_norm <= (p.a + p.b).sqrt() + tol::FORM_BOUND_SLACK;
    Ok((form_norm, bound_ok))
}

/// A sandwich operator with its exact factorization residual.
#[derive(Debug, Clone)]
pub struct SandwichResult {
    /// (A_l + I)^{−1/2} · B · (A_r + I)^{−1/2} (with adjoints as requested).
    pub matrix: CMatrix,
    /// Operator norm of `matrix`.
    pub norm: f64,
    /// Residual of the polar factorization
    /// [|B*|^{1/2}(A_l*+I)^{−1/2}]* · U · [|B|^{1/2}(A_r+I)^{−1/2}].
    pub factored_residual: f64,
}

/// (M + I)^{−1/2} for accretive M: spectral when Hermitian, resolvent
/// quadrature otherwise.
fn inv_sqrt_shifted_accretive(m: &CMatrix) -> Result<CMatrix> {
    if crate::matrix::hermitian_defect(m) <= tol::HERMITIAN_REL * m.norm().max(1.0) {
        inv_sqrt_shifted(&hermitian_part(m))
    } else {
        Ok(frac_power_m_accretive(m, 0.5, &QuadratureConfig::default())?.value)
    }
}

fn require_accretive_here(a: &CMatrix, label: &str) -> Result<()> {
    let margin = crate::sectorial::accretivity_margin(a)?;
    let threshold = tol::ACCRETIVE_MARGIN_REL * op_norm(a).max(1.0);
    if margin < -threshold {
        return Err(OpError::NotAccretive {
            margin,
            tol: threshold,
        });
    }
    let _ = label;
    Ok(())
}

/// The sandwich (A_l + I)^{−1/2}·B·(A_r + I)^{−1/2}, with either resolvent
/// factor optionally taken at the adjoint matrix, together with the residual
/// of its factorization through the polar pieces of B:
///
///   sandwich = [|B*|^{1/2}·(L*+I)^{−1/2}]* · U · [|B|^{1/2}·(R+I)^{−1/2}]
///
/// where B = |B*|^{1/2}·U·|B|^{1/2} is the symmetric generalized polar form;
/// the identity is exact, so the residual only measures numerical error.
pub fn sandwich(
    b: &CMatrix,
    a_left: &CMatrix,
    a_right: &CMatrix,
    adjoint_left: bool,
    adjoint_right: bool,
) -> Result<SandwichResult> {
    check_square(a_left, "A_left")?;
    check_square(a_right, "A_right")?;
    check_finite(b, "B")?;
    if b.nrows() != a_left.nrows() || b.ncols() != a_right.nrows() {
        return Err(OpError::DimensionMismatch(format!(
            "B is {}x{}, expected {}x{}",
            b.nrows(),
            b.ncols(),
            a_left.nrows(),
            a_right.nrows()
        )));
    }
    require_accretive_here(a_left, "A_left")?;
    require_accretive_here(a_right, "A_right")?;
    let l = if adjoint_left {
        a_left.adjoint()
    } else {
        a_left.clone()
    };
    let r = if adjoint_right {
        a_right.adjoint()
    } else {
        a_right.clone()
    };
    let left_factor = inv_sqrt_shifted_accretive(&l)?;
    let right_factor = inv_sqrt_shifted_accretive(&r)?;
    let matrix = &left_factor * b * &right_factor;
    let norm = op_norm(&matrix);

    // Exact factorization through the polar pieces of B.
    let pf = polar(b, 0.0)?;
    let u = pf.u.clone();
    let babs_sqrt = pf.apply_to_abs_t(|z| z.sqrt());
    let bstar_sqrt = pf.apply_to_abs_t_star(|z| z.sqrt());
    // (L*+I)^{−1/2} is the adjoint of (L+I)^{−1/2}
    let left_adj_factor = left_factor.adjoint();
    let x = &bstar_sqrt * &left_adj_factor;
    let y = &babs_sqrt * &right_factor;
    let factored = x.adjoint() * u * y;
    let factored_residual = (&factored - &matrix).norm();
    Ok(SandwichResult {
        matrix,
        norm,
        factored_residual,
    })
}

/// Residual of the similarity route for the sectorial sandwich: with
/// T = (A+I)^{1/2}(A_R+I)^{−1/2},
///
///   (A*+I)^{−1/2}·B·(A+I)^{−1/2} = (T⁻¹)*·(A_R+I)^{−1/2}·B·(A_R+I)^{−1/2}·T⁻¹
///
/// holds exactly; the returned Frobenius residual measures the numerical
/// error of computing both sides independently.
pub fn sectorial_sandwich_identity(b: &CMatrix, a: &CMatrix) -> Result<f64> {
    let direct = sandwich(b, a, a, true, false)?.matrix;
    let t = t_sharp(a, false)?;
    let t_inv = inverse(&t)?;
    let mid = sandwich(b, &hermitian_part(a), &hermitian_part(a), false, false)?.matrix;
    let via_t = t_inv.adjoint() * mid * t_inv;
    Ok((via_t - direct).norm())
}

/// λ_min(A^{2α} − B^{2α}) for each requested α, after verifying the Heinz
/// hypotheses A, B ⪰ I and A² ⪰ B².
pub fn heinz_check(a: &CMatrix, b: &CMatrix, alphas: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_square(a, "A")?;
    check_square(b, "B")?;
    if a.nrows() != b.nrows() {
        return Err(OpError::DimensionMismatch(format!(
            "A is {}x{}, B is {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let dec_a = eig_hermitian(a)?;
    let dec_b = eig_hermitian(b)?;
    let min_a = dec_a.real_eigenvalues().first().copied().unwrap_or(0.0);
    let min_b = dec_b.real_eigenvalues().first().copied().unwrap_or(0.0);
    if min_a < 1.0 - tol::HEINZ_HYPOTHESIS_REL || min_b < 1.0 - tol::HEINZ_HYPOTHESIS_REL {
        return Err(OpError::HypothesisViolated(format!(
            "both matrices must dominate the identity: λ_min(A) = {min_a}, λ_min(B) = {min_b}"
        )));
    }
    let gap = a * a - b * b;
    let min_gap = eig_hermitian(&gap)?
        .real_eigenvalues()
        .first()
        .copied()
        .unwrap_or(0.0);
    let scale2 = op_norm(a).powi(2).max(1.0);
    if min_gap < -tol::HEINZ_HYPOTHESIS_REL * scale2 {
        return Err(OpError::HypothesisViolated(format!(
            "A² − B² must be positive semidefinite: λ_min = {min_gap:.3e}"
        )));
    }
    let mut out = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(OpError::InvalidInput(format!(
                "interpolation exponents must lie in [0,1], got {alpha}"
            )));
        }
        let a_pow = apply_function(&dec_a, |z| cr(z.re.max(0.0).powf(2.0 * alpha)))?;
        let b_pow = apply_function(&dec_b, |z| cr(z.re.max(0.0).powf(2.0 * alpha)))?;
        let min_eig = eig_hermitian(&(a_pow - b_pow))?
            .real_eigenvalues()
            .first()
            .copied()
            .unwrap_or(0.0);
        out.push((alpha, min_eig));
    }
    Ok(out)
}

/// Subordination constants for the triple (Q, A, B).
#[derive(Debug, Clone)]
pub struct SubordinationReport {
    /// D₁ = ‖Q A⁻¹‖, the hypothesis constant for ‖Qg‖ ≤ D₁‖Ag‖.
    pub d1: f64,
    /// D̃₁ = ‖Q* B⁻¹‖.
    pub d1_adjoint: f64,
    /// (α, D_α = ‖|Q|^α A^{−α}‖).
    pub d_alpha: Vec<(f64, f64)>,
    /// (1−α, D̃_{1−α} = ‖|Q*|^{1−α} B^{−(1−α)}‖).
    pub d_tilde: Vec<(f64, f64)>,
    /// (α, C_α = D̃_{1−α}·D_α), the constants of the bilinear estimate.
    pub c_alpha: Vec<(f64, f64)>,
    /// Whether the sharp interpolation bound D_α ≤ D₁^α held at every α
    /// (only checked in the Hermitian sub-case, `None` otherwise).
    pub loewner_heinz_sharp: Option<bool>,
}

fn require_invertible(m: &CMatrix, label: &str) -> Result<()> {
    let (s_max, s_min) = sigma_extremes(m);
    let threshold = tol::default_rank_tol(m.nrows()) * s_max.max(1.0);
    if s_min <= threshold {
        return Err(OpError::HypothesisViolated(format!(
            "{label} must be invertible (sigma_min {s_min:.3e})"
        )));
    }
    Ok(())
}

/// M^{−α} for invertible accretive M: spectral when Hermitian PD, resolvent
/// quadrature for diagonalizable sectorial inputs.
fn neg_power(m: &CMatrix, alpha: f64) -> Result<CMatrix> {
    if alpha == 0.0 {
        return Ok(identity(m.nrows()));
    }
    if crate::matrix::hermitian_defect(m) <= tol::HERMITIAN_REL * m.norm().max(1.0) {
        let dec = eig_hermitian(&hermitian_part(m))?;
        return apply_function(&dec, |z| {
            cr(z.re.max(f64::MIN_POSITIVE).powf(-alpha))
        });
    }
    // Non-Hermitian path: defective inputs are out of scope.
    eig_general(m)?;
    if alpha == 1.0 {
        return inverse(m);
    }
    Ok(neg_power_accretive(m, alpha, &QuadratureConfig::default())?.value)
}

/// M^{α} for invertible accretive M, α ∈ (0, 1].
fn pos_power(m: &CMatrix, alpha: f64) -> Result<CMatrix> {
    if crate::matrix::hermitian_defect(m) <= tol::HERMITIAN_REL * m.norm().max(1.0) {
        let dec = eig_hermitian(&hermitian_part(m))?;
        return apply_function(&dec, |z| cr(z.re.max(0.0).powf(alpha)));
    }
    power_accretive(m, alpha, false)
}

/// Subordination analysis: computes D₁, D̃₁, the interpolated constants
/// D_α, D̃_{1−α}, C_α = D̃_{1−α}·D_α, and verifies the bilinear estimate
/// |(f, Qg)| ≤ C_α·‖B^{1−α}f‖·‖A^α g‖ on 1000 seeded vector pairs (the
/// estimate follows from the symmetric polar split Q = |Q*|^{1−α}·U·|Q|^α,
/// so failures flag internal bugs). In the Hermitian sub-case the sharp
/// interpolation D_α ≤ D₁^α is checked as well.
pub fn subordination(
    q: &CMatrix,
    a: &CMatrix,
    b: &CMatrix,
    alphas: &[f64],
    seed: u64,
) -> Result<SubordinationReport> {
    check_square(q, "Q")?;
    check_square(a, "A")?;
    check_square(b, "B")?;
    let n = q.nrows();
    if a.nrows() != n || b.nrows() != n {
        return Err(OpError::DimensionMismatch(
            "Q, A, B must share one dimension".into(),
        ));
    }
    require_accretive_here(a, "A")?;
    require_accretive_here(b, "B")?;
    require_invertible(a, "A")?;
    require_invertible(b, "B")?;

    let d1 = op_norm(&(q * inverse(a)?));
    let d1_adjoint = op_norm(&(q.adjoint() * inverse(b)?));

    let pf = polar(q, 0.0)?;
    let mut d_alpha = Vec::with_capacity(alphas.len());
    let mut d_tilde = Vec::with_capacity(alphas.len());
    let mut c_alpha = Vec::with_capacity(alphas.len());
    let mut stream = Stream::fork(seed, "subordination-vectors");
    for &alpha in alphas {
        if !(0.0 < alpha && alpha <= 1.0) {
            return Err(OpError::InvalidInput(format!(
                "subordination exponents must lie in (0,1], got {alpha}"
            )));
        }
        let q_abs_alpha = pf.apply_to_abs_t(|z| z.powf(alpha));
        let q_star_beta = pf.apply_to_abs_t_star(|z| z.powf(1.0 - alpha));
        let da = op_norm(&(&q_abs_alpha * neg_power(a, alpha)?));
        let dt = op_norm(&(&q_star_beta * neg_power(b, 1.0 - alpha)?));
        let ca = da * dt;
        d_alpha.push((alpha, da));
        d_tilde.push((1.0 - alpha, dt));
        c_alpha.push((alpha, ca));

        // Bilinear estimate on sampled pairs.
        let a_pow = pos_power(a, alpha)?;
        let b_pow = if alpha == 1.0 {
            identity(n)
        } else {
            pos_power(b, 1.0 - alpha)?
        };
        let samples = 1000 / alphas.len().max(1);
        for _ in 0..samples.max(100) {
            let f = stream.unit_vector(n);
            let g = stream.unit_vector(n);
            let lhs = (f.adjoint() * q * &g)[(0, 0)].norm();
            let rhs = (ca + tol::SUBORDINATION_SLACK)
                * (&b_pow * &f).norm()
                * (&a_pow * &g).norm();
            if lhs > rhs + tol::SUBORDINATION_SLACK {
                return Err(OpError::Internal(format!(
                    "bilinear subordination estimate failed at alpha {alpha}: \
                     lhs {lhs:.6e} > rhs {rhs:.6e}"
                )));
            }
        }
    }

    // Sharp interpolation in the Hermitian sub-case.
    let hermitian_case = crate::matrix::hermitian_defect(a) <= tol::HERMITIAN_REL * a.norm().max(1.0);
    let loewner_heinz_sharp = if hermitian_case {
        Some(
            d_alpha
                .iter()
                .all(|&(alpha, da)| da <= d1.powf(alpha) + tol::SUBORDINATION_SLACK),
        )
    } else {
        None
    };

    Ok(SubordinationReport {
        d1,
        d1_adjoint,
        d_alpha,
        d_tilde,
        c_alpha,
        loewner_heinz_sharp,
    })
}

/// One member of the complex-power sandwich family.
#[derive(Debug, Clone)]
pub struct PowerSandwich {
    /// The exponent z.
    pub z: Complex64,
    /// (A*+I)^{−z} · |B| · (A+I)^{−(1−z)}.
    pub matrix: CMatrix,
    /// Residual of the two-factor splitting
    /// [|B|^{z̄}(A+I)^{−z̄}]* · [|B|^{1−z}(A+I)^{−(1−z)}].
    pub split_residual: f64,
}

/// Family report plus the similarity-conjugation check at z = 1/2.
#[derive(Debug, Clone)]
pub struct PowerSandwichReport {
    /// One entry per requested exponent.
    pub entries: Vec<PowerSandwich>,
    /// Residual of
    /// (A_R+I)^{−1/2}|B|(A_R+I)^{−1/2} = T*·(A*+I)^{−1/2}|B|(A+I)^{−1/2}·T
    /// with T the similarity factor of A; exact in exact arithmetic.
    pub t_conjugation_residual: f64,
}

/// The family z ↦ (A*+I)^{−z}·|B|·(A+I)^{−(1-z)} over a grid of exponents
/// with Re z ∈ (0,1), for sectorial diagonalizable A and B with trivial
/// kernel.
pub fn power_sandwich_family(
    b: &CMatrix,
    a: &CMatrix,
    z_grid: &[Complex64],
) -> Result<PowerSandwichReport> {
    check_square(a, "A")?;
    check_square(b, "B")?;
    if a.nrows() != b.nrows() {
        return Err(OpError::DimensionMismatch(
            "A and B must share one dimension".into(),
        ));
    }
    let (s_max, s_min) = sigma_extremes(b);
    let kernel_threshold = tol::default_rank_tol(b.nrows()) * s_max.max(1.0);
    if s_min <= kernel_threshold {
        return Err(OpError::KernelNotTrivial {
            sigma_min: s_min,
            tol: kernel_threshold,
        });
    }
    eig_general(a)?; // diagonalizable gate
    let cfg = QuadratureConfig::default();
    let b_abs = polar(b, 0.0)?.apply_to_abs_t(|z| z);
    let dec_abs = eig_hermitian(&b_abs)?;
    let scale = op_norm(&b_abs).max(1.0);

    let mut entries = Vec::with_capacity(z_grid.len());
    for &z in z_grid {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        let left = complex_power(&a.adjoint(), z, &cfg)?.value;
        let right = complex_power(a, one_minus, &cfg)?.value;
        let matrix = &left * &b_abs * &right;

        // Two-factor splitting.
        let zb = z.conj();
        let x = apply_function(&dec_abs, |lam| {
            lam.powc(zb)
        })? * complex_power(a, zb, &cfg)?.value;
        let y = apply_function(&dec_abs, |lam| lam.powc(one_minus))? * &right;
        let split_residual = (x.adjoint() * y - &matrix).norm();
        if split_residual > tol::SECTORIAL_IDENTITY_REL * scale {
            return Err(OpError::Internal(format!(
                "two-factor splitting residual {split_residual:.3e} at z = {z}"
            )));
        }
        entries.push(PowerSandwich {
            z,
            matrix,
            split_residual,
        });
    }

    // Conjugation identity at z = 1/2.
    let half = Complex64::new(0.5, 0.0);
    let t = t_sharp(a, false)?;
    let direct = complex_power(&a.adjoint(), half, &cfg)?.value
        * &b_abs
        * complex_power(a, half, &cfg)?.value;
    let a_r = hermitian_part(a);
    let mid = inv_sqrt_shifted(&a_r)?;
    let hermitian_side = &mid * &b_abs * &mid;
    let t_conjugation_residual = (t.adjoint() * direct * &t - hermitian_side).norm();
    if t_conjugation_residual > tol::SECTORIAL_IDENTITY_REL * scale {
        return Err(OpError::Internal(format!(
            "conjugation identity residual {t_conjugation_residual:.3e}"
        )));
    }

    Ok(PowerSandwichReport {
        entries,
        t_conjugation_residual,
    })
}

/// Assemble the full CLI-facing report for a pair (B, A): frontier pairs on
/// the slope grid, resolvent curve, form norms and sandwich norm.
pub fn bound_report(b: &CMatrix, a: &CMatrix, a_grid: &[f64], mus: &[f64]) -> Result<BoundReport> {
    let pairs = admissible_pairs(b, a, a_grid)?;
    let curve = relative_bound_curve(b, a, mus)?;
    let inv_half = inv_sqrt_shifted(a)?;
    let form_norm = op_norm(&(abs_sqrt(b)? * &inv_half));
    let form_norm_adjoint = op_norm(&(abs_star_sqrt(b)?.adjoint() * &inv_half));
    let sandwich_norm = op_norm(&(&inv_half * b * &inv_half));
    Ok(BoundReport {
        pairs,
        curve,
        form_norm,
        form_norm_adjoint,
        sandwich_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;
    use nalgebra::DVector;

    fn diag_r(vals: &[f64]) -> CMatrix {
        CMatrix::from_diagonal(&DVector::from_iterator(
            vals.len(),
            vals.iter().map(|&v| cr(v)),
        ))
    }

    #[test]
    fn admissible_pairs_hand_cases() {
        let a = Stream::new(5).psd(4);
        // B = A: slope 1 needs no offset
        let pairs = admissible_pairs(&a, &a, &[1.0]).unwrap();
        assert!(pairs[0].b <= 1e-6, "{}", pairs[0].b);
        // B = I with slope 0: offset is exactly 1
        let pairs = admissible_pairs(&identity(4), &a, &[0.0]).unwrap();
        assert!((pairs[0].b - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn admissible_pairs_certify_on_random_vectors() {
        let mut s = Stream::new(10);
        let a = s.psd(5);
        let b = s.gaussian(5, 5);
        let pairs = admissible_pairs(&b, &a, &[0.0, 0.5, 1.0, 2.0]).unwrap();
        // frontier nonincreasing in the slope
        for w in pairs.windows(2) {
            assert!(w[1].b <= w[0].b + 1e-12);
        }
        let mut v = Stream::fork(11, "check-vectors");
        for pair in &pairs {
            for _ in 0..125 {
                let f = v.unit_vector(5);
                let lhs = (&b * &f).norm_squared();
                let rhs = pair.a * pair.a * (&a * &f).norm_squared() + pair.b * pair.b;
                assert!(lhs <= rhs + 1e-9, "{lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn admissible_pairs_rejects_non_psd() {
        let a = diag_r(&[-1.0, 2.0]);
        let e = admissible_pairs(&identity(2), &a, &[1.0]).unwrap_err();
        assert!(matches!(e, OpError::NotPSD { .. }), "{e}");
    }

    #[test]
    fn convert_pair_formulas() {
        let p = convert_pair(
            BoundPair {
                a: 1.0,
                b: 1.0,
                quadratic: false,
            },
            1.0,
        );
        assert!(p.quadratic);
        assert!((p.a - 2.0_f64.sqrt()).abs() < 1e-15);
        assert!((p.b - 2.0_f64.sqrt()).abs() < 1e-15);

        let q = convert_pair(
            BoundPair {
                a: 2.0,
                b: 3.0,
                quadratic: true,
            },
            1.0,
        );
        assert!(!q.quadratic && q.a == 2.0 && q.b == 3.0);

        // round trip dominates the original linear pair
        for eps in [0.25, 1.0, 4.0] {
            let orig = BoundPair {
                a: 0.7,
                b: 1.3,
                quadratic: false,
            };
            let rt = convert_pair(convert_pair(orig, eps), eps);
            assert!(rt.a >= orig.a && rt.b >= orig.b);
        }
    }

    #[test]
    fn curve_closed_forms_and_envelope() {
        // B = I, A = 0: curve is exactly 1/μ
        let z = CMatrix::zeros(3, 3);
        let curve = relative_bound_curve(&identity(3), &z, &[0.5, 1.0, 4.0]).unwrap();
        for &(mu, v) in &curve {
            assert!((v - 1.0 / mu).abs() <= 1e-12);
        }
        // B = A = diag(2): curve(2) = 2/(2+2) = 0.5
        let a = diag_r(&[2.0]);
        let curve = relative_bound_curve(&a, &a, &[2.0]).unwrap();
        assert!((curve[0].1 - 0.5).abs() <= 1e-12);

        // random: every admissible envelope dominates, and the curve is
        // nonincreasing
        let mut s = Stream::new(12);
        let a = s.psd(5);
        let b = s.gaussian(5, 5);
        let mus: Vec<f64> = (1..=20).map(|k| 0.3 * k as f64).collect();
        let curve = relative_bound_curve(&b, &a, &mus).unwrap();
        for w in curve.windows(2) {
            assert!(w[1].1 <= w[0].1 + tol::CURVE_MONOTONE_SLACK);
        }
        let pairs = admissible_pairs(&b, &a, &[0.5, 1.0, 2.0]).unwrap();
        for p in pairs {
            let lin = convert_pair(p, 1.0);
            for &(mu, v) in &curve {
                assert!(v <= lin.a + lin.b / mu + tol::ENVELOPE_SLACK, "{v} at {mu}");
            }
        }
    }

    #[test]
    fn form_bound_identity_case_and_zero() {
        let (norm, ok) = form_bound_check(
            &identity(3),
            &identity(3),
            BoundPair {
                a: 1.0,
                b: 0.0,
                quadratic: false,
            },
        )
        .unwrap();
        assert!(ok);
        assert!((norm - 0.5_f64.sqrt()).abs() <= 1e-10);

        let z = CMatrix::zeros(3, 3);
        let (norm, ok) = form_bound_check(
            &z,
            &identity(3),
            BoundPair {
                a: 0.0,
                b: 0.0,
                quadratic: false,
            },
        )
        .unwrap();
        assert!(ok && norm <= 1e-12);
    }

    #[test]
    fn form_bound_holds_on_frontier_pairs() {
        let mut s = Stream::new(31);
        let a = s.psd(5);
        let b = s.gaussian(5, 5);
        for p in admissible_pairs(&b, &a, &[0.25, 1.0, 3.0]).unwrap() {
            for eps in [0.25, 1.0, 4.0] {
                let lin = convert_pair(p, eps);
                // quadratic pairs are linear pairs with the same constants
                let (_, ok) = form_bound_check(&b, &a, lin).unwrap();
                assert!(ok, "pair ({}, {})", lin.a, lin.b);
            }
        }
    }

    #[test]
    fn form_bound_rejects_bogus_pair() {
        let b = identity(3).map(|z| z * 5.0);
        let e = form_bound_check(
            &b,
            &identity(3),
            BoundPair {
                a: 0.0,
                b: 0.0,
                quadratic: false,
            },
        )
        .unwrap_err();
        assert!(matches!(e, OpError::PairNotAdmissible { .. }), "{e}");
    }

    #[test]
    fn sandwich_identity_case() {
        let r = sandwich(&identity(2), &identity(2), &identity(2), false, false).unwrap();
        assert!((r.matrix - identity(2).map(|z| z * 0.5)).norm() <= 1e-12);
        assert!(r.factored_residual <= 1e-12);
    }

    #[test]
    fn sandwich_factorization_and_norm_bound_hermitian() {
        let mut s = Stream::new(44);
        let a = s.psd(5);
        let b = s.gaussian(5, 5);
        let r = sandwich(&b, &a, &a, false, false).unwrap();
        let scale = op_norm(&b).max(1.0);
        assert!(r.factored_residual <= 1e-8 * scale, "{}", r.factored_residual);
        // norm ≤ √(a*+b*)·√(a+b) over frontier pairs of (B, A) and (B*, A)
        let p = convert_pair(admissible_pairs(&b, &a, &[1.0]).unwrap()[0], 1.0);
        let ps = convert_pair(admissible_pairs(&b.adjoint(), &a, &[1.0]).unwrap()[0], 1.0);
        let bound = (ps.a + ps.b).sqrt() * (p.a + p.b).sqrt();
        assert!(r.norm <= bound + 1e-9, "{} vs {}", r.norm, bound);
    }

    #[test]
    fn sandwich_adjoint_identity() {
        let mut s = Stream::new(50);
        let a = s.psd(4);
        let b = s.gaussian(4, 4);
        let lhs = sandwich(&b, &a, &a, false, false).unwrap().matrix.adjoint();
        let rhs = sandwich(&b.adjoint(), &a, &a, false, false).unwrap().matrix;
        assert!((lhs - rhs).norm() <= 1e-10 * op_norm(&b).max(1.0));
    }

    #[test]
    fn sandwich_sectorial_similarity_route() {
        let mut s = Stream::new(60);
        let h = s.pd(4, 0.2);
        let x = s.hermitian(4);
        let a = crate::sectorial::assemble_sectorial(&h, &x, 0.4);
        let b = s.gaussian(4, 4);
        let resid = sectorial_sandwich_identity(&b, &a).unwrap();
        assert!(resid <= tol::SECTORIAL_IDENTITY_REL * op_norm(&b).max(1.0), "{resid}");
    }

    #[test]
    fn heinz_hand_cases() {
        let a = diag_r(&[1.0, 4.0]);
        let res = heinz_check(&a, &a, &[0.3, 0.7]).unwrap();
        for (_, v) in res {
            assert!(v.abs() <= 1e-12);
        }
        let b = diag_r(&[1.0, 2.0]);
        let res = heinz_check(&a, &b, &[0.5]).unwrap();
        // A − B = diag(0, 2) ⪰ 0
        assert!(res[0].1 >= -1e-12);
    }

    #[test]
    fn heinz_interpolates_constructed_pairs() {
        let mut s = Stream::new(72);
        // A ⪰ I, K = (A²−I)^{1/2} S (A²−I)^{1/2} with 0 ⪯ S ⪯ I,
        // B = (I+K)^{1/2}: then B² = I+K ⪯ A² and B ⪰ I.
        let a = {
            let g = s.pd(4, 0.3);
            let dec = eig_hermitian(&g).unwrap();
            apply_function(&dec, |z| cr(1.0 + z.re.max(0.0))).unwrap()
        };
        let a2 = &a * &a;
        let root = {
            let dec = eig_hermitian(&(a2.clone() - identity(4))).unwrap();
            apply_function(&dec, |z| cr(z.re.max(0.0).sqrt())).unwrap()
        };
        let s_mid = {
            let g = s.psd(4);
            let dec = eig_hermitian(&g).unwrap();
            let top = dec.real_eigenvalues().last().copied().unwrap().max(1e-12);
            apply_function(&dec, move |z| cr(z.re.max(0.0) / top)).unwrap()
        };
        let k = &root * s_mid * &root;
        let b = {
            let dec = eig_hermitian(&(identity(4) + k)).unwrap();
            apply_function(&dec, |z| cr(z.re.max(0.0).sqrt())).unwrap()
        };
        let alphas = [0.1, 0.3, 0.5, 0.7, 0.9];
        let res = heinz_check(&a, &b, &alphas).unwrap();
        let norm_a = op_norm(&a);
        for (alpha, v) in &res {
            let floor = -tol::HEINZ_SLACK_REL * norm_a.powf(2.0 * alpha);
            assert!(*v >= floor, "alpha {alpha}: {v} < {floor}");
        }
        // shrinking B only helps
        let res_shrunk = heinz_check(&a, &b.map(|z| z * 0.9), &alphas);
        // B must still dominate I: 0.9·B may fail the hypothesis; in that
        // case skip the monotonicity comparison.
        if let Ok(shrunk) = res_shrunk {
            for ((_, v0), (_, v1)) in res.iter().zip(&shrunk) {
                assert!(*v1 >= v0 - 1e-10);
            }
        }
    }

    #[test]
    fn heinz_rejects_violated_hypotheses() {
        let a = diag_r(&[0.5, 2.0]);
        let e = heinz_check(&a, &identity(2), &[0.5]).unwrap_err();
        assert!(matches!(e, OpError::HypothesisViolated(_)), "{e}");

        let a = diag_r(&[1.0, 2.0]);
        let b = diag_r(&[3.0, 1.0]);
        let e = heinz_check(&a, &b, &[0.5]).unwrap_err();
        assert!(matches!(e, OpError::HypothesisViolated(_)), "{e}");
    }

    #[test]
    fn subordination_identity_case() {
        let r = subordination(&identity(3), &identity(3), &identity(3), &[0.5], 1).unwrap();
        assert!((r.d1 - 1.0).abs() <= 1e-12);
        assert!((r.c_alpha[0].1 - 1.0).abs() <= 1e-10);
        assert_eq!(r.loewner_heinz_sharp, Some(true));
    }

    #[test]
    fn subordination_contraction_case() {
        let mut s = Stream::new(81);
        let a = s.pd(4, 0.5);
        let m = {
            let g = s.gaussian(4, 4);
            let nm = op_norm(&g);
            g.map(|z| z * (0.8 / nm))
        };
        let q = &m * &a;
        let r = subordination(&q, &a, &a, &[0.25, 0.5, 0.75], 9).unwrap();
        assert!(r.d1 <= 1.0 + 1e-10, "{}", r.d1);
        assert_eq!(r.loewner_heinz_sharp, Some(true));
    }

    #[test]
    fn power_sandwich_identity_case() {
        let rep = power_sandwich_family(&identity(2), &identity(2), &[c(0.5, 0.0)]).unwrap();
        assert!((rep.entries[0].matrix.clone() - identity(2).map(|z| z * 0.5)).norm() <= 1e-9);
    }

    #[test]
    fn power_sandwich_diagonal_closed_form() {
        let a = diag_r(&[0.5, 2.0]);
        let b = diag_r(&[1.0, 3.0]);
        let z = c(0.4, 0.3);
        let rep = power_sandwich_family(&b, &a, &[z]).unwrap();
        let m = &rep.entries[0].matrix;
        for i in 0..2 {
            let lam = a[(i, i)];
            let want = (lam + 1.0).powc(-z) * b[(i, i)] * (lam + 1.0).powc(-(cr(1.0) - z));
            assert!((m[(i, i)] - want).norm() <= 1e-8, "{}", m[(i, i)]);
        }
    }

    #[test]
    fn power_sandwich_grid_residuals() {
        let mut s = Stream::new(90);
        let h = s.pd(4, 0.3);
        let x = s.hermitian(4);
        let a = crate::sectorial::assemble_sectorial(&h, &x, 0.35);
        let b = s.pd(4, 0.4);
        let grid: Vec<Complex64> = [0.25, 0.5, 0.75]
            .iter()
            .flat_map(|&re| [c(re, -0.4), c(re, 0.0), c(re, 0.4)])
            .collect();
        let rep = power_sandwich_family(&b, &a, &grid).unwrap();
        let scale = op_norm(&b).max(1.0);
        for e in &rep.entries {
            assert!(e.split_residual <= tol::SECTORIAL_IDENTITY_REL * scale);
        }
        assert!(rep.t_conjugation_residual <= tol::SECTORIAL_IDENTITY_REL * scale);
    }

    #[test]
    fn power_sandwich_rejects_kernel() {
        let b = diag_r(&[0.0, 1.0]);
        let e = power_sandwich_family(&b, &identity(2), &[c(0.5, 0.0)]).unwrap_err();
        assert!(matches!(e, OpError::KernelNotTrivial { .. }), "{e}");
    }

    #[test]
    fn bound_report_assembles() {
        let mut s = Stream::new(100);
        let a = s.psd(4);
        let b = s.gaussian(4, 4);
        let rep = bound_report(&b, &a, &[0.5, 1.0], &[0.5, 1.0, 2.0]).unwrap();
        assert_eq!(rep.pairs.len(), 2);
        assert_eq!(rep.curve.len(), 3);
        assert!(rep.form_norm >= 0.0 && rep.sandwich_norm >= 0.0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// The linear-to-quadratic conversion constants realize Young's
            /// inequality: whenever u, v >= 0 satisfy w <= a u + b v, the
            /// converted pair satisfies w^2 <= a'^2 u^2 + b'^2 v^2.
            #[test]
            fn converted_pair_dominates_squared_bound(
                a in 0.0..4.0f64,
                b in 0.0..4.0f64,
                eps in 1e-3..1e3f64,
                u in 0.0..10.0f64,
                v in 0.0..10.0f64,
            ) {
                let lin = BoundPair { a, b, quadratic: false };
                let quad = convert_pair(lin, eps);
                prop_assert!(quad.quadratic);
                let w = a * u + b * v;
                let rhs = quad.a * quad.a * u * u + quad.b * quad.b * v * v;
                prop_assert!(w * w <= rhs * (1.0 + 1e-12) + 1e-12);
            }

            /// Raising the slope can only lower the admissible offset.
            #[test]
            fn frontier_offsets_are_nonincreasing(seed in 0u64..500) {
                let mut s = Stream::new(seed);
                let a = s.psd(4);
                let b = s.gaussian(4, 4);
                let grid = [0.0, 0.5, 1.0, 2.0, 4.0];
                let pairs = admissible_pairs(&b, &a, &grid).unwrap();
                for win in pairs.windows(2) {
                    prop_assert!(win[1].b <= win[0].b + 1e-10);
                }
            }
        }
    }
}
