//! Spectral functional calculus and resolvent-integral representations.
//!
//! Three families of operations live here:
//!
//! * `apply_function` — direct spectral application f(A) = Q f(Λ) Q* for a
//!   unitarily diagonalizable matrix; this is the oracle side of every
//!   integral identity below.
//! * Fractional and complex powers of m-accretive matrices through the
//!   Balakrishnan integral
//!   (S+I)^{−z} = (sin(πz)/π) ∫₀^∞ t^{−z} (S+(t+1)I)^{−1} dt, Re z ∈ (0,1),
//!   plus the unshifted variant A^{−α} for invertible accretive A, and
//!   imaginary powers (A+I)^{iγ} of diagonalizable accretive matrices.
//! * `spectral_projection_resolvent` — the spectral projection E(λ) of a
//!   Hermitian matrix obtained from resolvent quadrature alone:
//!   E(λ) = I − ½[U(λ) + U(λ)²] with
//!   U(λ) = (2/π) ∫₀^∞ dη (H−λ)[(H−λ)² + η²]^{−1},
//!   the matrix form of (2/π)∫₀^∞ a/(a²+η²) dη = sign(a).
//!
//! All integrals run through one composite 16-point Gauss–Legendre driver
//! under the substitution t = e^u (resp. η = e^v), with panel doubling until
//! two successive refinements agree and truncation points chosen from
//! a-priori resolvent tail bounds. Summation is sequential in fixed index
//! order, so results are bit-reproducible for a fixed config.

use num_complex::Complex64;

use crate::error::{OpError, Result};
use crate::linalg::{eig_general, eig_hermitian, SpectralDecomposition};
use crate::matrix::{check_finite, check_square, cr, hermitian_part, identity, inverse, op_norm, CMatrix};
use crate::tol;

/// 16-point Gauss–Legendre nodes on [−1, 1], in fixed evaluation order.
const GL16_NODES: [f64; 16] = [
    -0.9894009349916499325961542,
    -0.9445750230732325760779884,
    -0.8656312023878317438804679,
    -0.7554044083550030338951012,
    -0.6178762444026437484466718,
    -0.4580167776572273863424194,
    -0.2816035507792589132304605,
    -0.0950125098376374401853193,
    0.0950125098376374401853193,
    0.2816035507792589132304605,
    0.4580167776572273863424194,
    0.6178762444026437484466718,
    0.7554044083550030338951012,
    0.8656312023878317438804679,
    0.9445750230732325760779884,
    0.9894009349916499325961542,
];

/// Weights matching [`GL16_NODES`].
const GL16_WEIGHTS: [f64; 16] = [
    0.0271524594117540948517806,
    0.0622535239386478928628438,
    0.0951585116824927848099251,
    0.1246289712555338720524763,
    0.1495959888165767320815017,
    0.1691565193950025381893121,
    0.1826034150449235888667637,
    0.1894506104550684962853967,
    0.1894506104550684962853967,
    0.1826034150449235888667637,
    0.1691565193950025381893121,
    0.1495959888165767320815017,
    0.1246289712555338720524763,
    0.0951585116824927848099251,
    0.0622535239386478928628438,
    0.0271524594117540948517806,
];

/// Exponential-variable cap: |u| beyond this would overflow e^u machinery.
const U_CAP: f64 = 600.0;

/// Substitution used to map the half-line integration variable to ℝ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substitution {
    /// t = e^u, the only supported scheme: every scale of the integrand
    /// becomes an O(1)-width feature in u.
    LogSubstitution,
}

/// Controls for the resolvent-integral quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Relative accuracy target for the returned matrix.
    pub rel_tol: f64,
    /// Refinement cap: panel doubling stops here.
    pub max_panels: usize,
    /// Change of variables on (0, ∞).
    pub substitution: Substitution,
    /// Tail budget divisor: truncation points are chosen so each discarded
    /// tail is below rel_tol / truncation_margin times the result norm.
    pub truncation_margin: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: tol::QUAD_REL_TOL,
            max_panels: 8192,
            substitution: Substitution::LogSubstitution,
            truncation_margin: 10.0,
        }
    }
}

impl QuadratureConfig {
    /// Defaults tuned for spectral projections, whose oracle comparisons run
    /// at a looser tolerance than the power integrals.
    pub fn projection_default() -> Self {
        QuadratureConfig {
            rel_tol: tol::SPECPROJ_REL_TOL,
            ..QuadratureConfig::default()
        }
    }

    /// Same defaults with an explicit relative tolerance.
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadratureConfig {
            rel_tol,
            ..QuadratureConfig::default()
        }
    }

    /// Enforce the field invariants.
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-2) {
            return Err(OpError::InvalidInput(format!(
                "rel_tol must lie in (0, 1e-2], got {}",
                self.rel_tol
            )));
        }
        if self.max_panels < 4 {
            return Err(OpError::InvalidInput(format!(
                "max_panels must be at least 4, got {}",
                self.max_panels
            )));
        }
        if !(self.truncation_margin > 0.0) {
            return Err(OpError::InvalidInput(format!(
                "truncation_margin must be positive, got {}",
                self.truncation_margin
            )));
        }
        Ok(())
    }
}

/// A matrix power produced by quadrature.
#[derive(Debug, Clone)]
pub struct PowerResult {
    /// The computed matrix.
    pub value: CMatrix,
    /// The exponent z of the represented power (the result is (S+I)^{−z} for
    /// the shifted forms, A^{−z} for the unshifted form).
    pub exponent: Complex64,
    /// Absolute error estimate: final refinement difference plus truncation
    /// tail bounds.
    pub estimated_error: f64,
    /// Panels in the accepted refinement level.
    pub panels_used: usize,
}

/// f(A) = Q diag(f(λᵢ)) Q* for a unitarily diagonalizable matrix.
pub fn apply_function(
    dec: &SpectralDecomposition,
    f: impl Fn(Complex64) -> Complex64,
) -> Result<CMatrix> {
    let n = dec.dim();
    let mut fd = CMatrix::zeros(n, n);
    for (i, &lam) in dec.eigenvalues.iter().enumerate() {
        let y = f(lam);
        if !y.is_finite() {
            return Err(OpError::FunctionDomainError {
                point: format!("{lam}"),
            });
        }
        fd[(i, i)] = y;
    }
    Ok(&dec.eigenvectors * fd * dec.eigenvectors.adjoint())
}

/// λ_min(Re A), the accretivity margin.
fn accretivity_margin(a: &CMatrix) -> Result<f64> {
    let re = hermitian_part(a);
    let dec = eig_hermitian(&re)?;
    Ok(dec.real_eigenvalues().first().copied().unwrap_or(0.0))
}

/// Reject matrices that are not (numerically) accretive.
fn require_accretive(a: &CMatrix) -> Result<()> {
    let margin = accretivity_margin(a)?;
    let threshold = tol::ACCRETIVE_MARGIN_REL * op_norm(a);
    if margin < -threshold {
        return Err(OpError::NotAccretive {
            margin,
            tol: threshold,
        });
    }
    Ok(())
}

/// Composite 16-point Gauss–Legendre sum of a matrix-valued integrand over
/// [lo, hi] with the given panel count, in fixed index order.
fn gl16(
    f: &mut impl FnMut(f64) -> Result<CMatrix>,
    lo: f64,
    hi: f64,
    panels: usize,
    rows: usize,
    cols: usize,
) -> Result<CMatrix> {
    let h = (hi - lo) / panels as f64;
    let mut acc = CMatrix::zeros(rows, cols);
    for p in 0..panels {
        let center = lo + h * (p as f64 + 0.5);
        let radius = h / 2.0;
        for k in 0..16 {
            let u = center + radius * GL16_NODES[k];
            let val = f(u)?;
            acc += val.map(|z| z * (radius * GL16_WEIGHTS[k]));
        }
    }
    Ok(acc)
}

/// Panel-doubling driver: refine until two successive levels agree to
/// rel_stop (relative to max(‖I‖, floor)), starting at 8 panels and accepting
/// no earlier than 32. Returns (integral, refinement difference, panels).
fn refine(
    f: &mut impl FnMut(f64) -> Result<CMatrix>,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
    rel_stop: f64,
    norm_floor: f64,
    rows: usize,
    cols: usize,
) -> Result<(CMatrix, f64, usize)> {
    let mut panels = 8usize.min(cfg.max_panels.max(4));
    let mut prev = gl16(f, lo, hi, panels, rows, cols)?;
    loop {
        let next_panels = panels * 2;
        if next_panels > cfg.max_panels {
            let scale = prev.norm().max(norm_floor);
            return Err(OpError::QuadratureNotConverged {
                estimate: f64::INFINITY,
                target: rel_stop * scale,
                panels,
            });
        }
        let next = gl16(f, lo, hi, next_panels, rows, cols)?;
        let diff = (&next - &prev).norm();
        let scale = next.norm().max(norm_floor);
        if next_panels >= 32 && diff <= rel_stop * scale {
            return Ok((next, diff, next_panels));
        }
        prev = next;
        panels = next_panels;
    }
}

/// Core Balakrishnan quadrature for M(t)^{-1}-type integrals:
/// (sin(πz)/π) ∫₀^∞ t^{−z} (base + t·I)^{−1} dt under t = e^u, truncated to
/// [t_lo, t_hi] supplied by the caller's tail analysis.
fn balakrishnan_integral(
    base: &CMatrix,
    z: Complex64,
    t_lo: f64,
    t_hi: f64,
    cfg: &QuadratureConfig,
) -> Result<(CMatrix, f64, usize)> {
    let n = base.nrows();
    let u_lo = t_lo.ln().max(-U_CAP);
    let u_hi = t_hi.ln().min(U_CAP);
    if u_lo >= u_hi {
        return Err(OpError::Internal(format!(
            "empty integration range [{u_lo}, {u_hi}]"
        )));
    }
    let one_minus_z = Complex64::new(1.0, 0.0) - z;
    let mut integrand = |u: f64| -> Result<CMatrix> {
        // t^{−z} dt = e^{(1−z)u} du
        let t = u.exp();
        let m = base + identity(n).map(|w| w * t);
        let r = inverse(&m)?;
        let factor = (one_minus_z * u).exp();
        Ok(r.map(|w| w * factor))
    };
    let (raw, diff, panels) = refine(
        &mut integrand,
        u_lo,
        u_hi,
        cfg,
        cfg.rel_tol,
        f64::MIN_POSITIVE,
        n,
        n,
    )?;
    let pref = (Complex64::new(std::f64::consts::PI, 0.0) * z).sin()
        / Complex64::new(std::f64::consts::PI, 0.0);
    Ok((raw.map(|w| w * pref), diff * pref.norm(), panels))
}

/// Shared implementation of the shifted powers (S+I)^{−z}, Re z ∈ (0,1).
fn shifted_neg_power(s: &CMatrix, z: Complex64, cfg: &QuadratureConfig) -> Result<PowerResult> {
    cfg.validate()?;
    check_square(s, "matrix")?;
    check_finite(s, "matrix")?;
    let x = z.re;
    if !(0.0 < x && x < 1.0) {
        return Err(OpError::ReOutOfRange { re: x });
    }
    require_accretive(s)?;

    let n = s.nrows();
    let pi = std::f64::consts::PI;
    let sin_norm = (Complex64::new(pi, 0.0) * z).sin().norm();
    let norm_s = op_norm(s);

    // First-pass estimate of the result norm; validated a posteriori.
    let mut r_est = (1.0 + norm_s).powf(-x) / (pi * z.im).cosh();
    for _attempt in 0..4 {
        let tau = cfg.rel_tol / cfg.truncation_margin * r_est;
        // Tail bounds use ‖(S+(t+1)I)^{−1}‖ ≤ 1/(t+1):
        //   upper: (sin/π)·∫_{T}^∞ t^{−x−1} dt = (sin/π)·T^{−x}/x
        //   lower: (sin/π)·∫_0^{T} t^{−x} dt   = (sin/π)·T^{1−x}/(1−x)
        let t_hi = (sin_norm / (pi * x * tau)).powf(1.0 / x);
        let t_lo = (pi * (1.0 - x) * tau / sin_norm).powf(1.0 / (1.0 - x));
        let shifted = s + identity(n);
        let (value, disc_err, panels) = balakrishnan_integral(&shifted, z, t_lo, t_hi, cfg)?;
        let norm_v = value.norm();
        let tail = sin_norm / pi * (t_hi.powf(-x) / x + t_lo.powf(1.0 - x) / (1.0 - x));
        let est = disc_err + tail;
        if est <= cfg.rel_tol * norm_v {
            check_finite(&value, "quadrature result")?;
            return Ok(PowerResult {
                value,
                exponent: z,
                estimated_error: est,
                panels_used: panels,
            });
        }
        // The norm estimate was optimistic; tighten tails against the actual
        // norm and retry.
        r_est = (norm_v / 2.0).min(r_est / 4.0).max(f64::MIN_POSITIVE);
        if _attempt == 3 {
            return Err(OpError::QuadratureNotConverged {
                estimate: est,
                target: cfg.rel_tol * norm_v,
                panels,
            });
        }
    }
    unreachable!()
}

/// (S+I)^{−α} for m-accretive S and α ∈ (0,1), by resolvent quadrature.
pub fn frac_power_m_accretive(
    s: &CMatrix,
    alpha: f64,
    cfg: &QuadratureConfig,
) -> Result<PowerResult> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(OpError::InvalidInput(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    shifted_neg_power(s, cr(alpha), cfg)
}

/// (S+I)^{−z} for m-accretive S and complex z with Re z ∈ (0,1).
pub fn complex_power(s: &CMatrix, z: Complex64, cfg: &QuadratureConfig) -> Result<PowerResult> {
    shifted_neg_power(s, z, cfg)
}

/// A^{−α} for invertible m-accretive A and α ∈ (0,1): the unshifted integral
/// (sin(πα)/π) ∫₀^∞ t^{−α} (A+tI)^{−1} dt.
pub fn neg_power_accretive(a: &CMatrix, alpha: f64, cfg: &QuadratureConfig) -> Result<PowerResult> {
    cfg.validate()?;
    check_square(a, "matrix")?;
    check_finite(a, "matrix")?;
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(OpError::InvalidInput(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    require_accretive(a)?;
    let n = a.nrows();
    let (sigma_max, sigma_min) = crate::matrix::sigma_extremes(a);
    let inv_threshold = tol::default_rank_tol(n) * sigma_max;
    if sigma_min <= inv_threshold {
        return Err(OpError::NotInvertible {
            sigma_min,
            tol: inv_threshold,
        });
    }
    let pi = std::f64::consts::PI;
    let sin_a = (pi * alpha).sin();
    let inv_norm = 1.0 / sigma_min; // ‖A^{-1}‖

    let mut r_est = sigma_max.powf(-alpha).max(sigma_min.powf(-alpha) / 2.0);
    for _attempt in 0..4 {
        let tau = cfg.rel_tol / cfg.truncation_margin * r_est;
        // upper tail: ‖(A+t)^{−1}‖ ≤ 1/t gives (sin/π)·T^{−α}/α
        let t_hi = (sin_a / (pi * alpha * tau)).powf(1.0 / alpha);
        // lower tail: for t ≤ 1/(2‖A^{-1}‖), ‖(A+t)^{−1}‖ ≤ 2‖A^{-1}‖, so
        // (sin/π)·2‖A^{-1}‖·T^{1−α}/(1−α)
        let t_lo = (pi * (1.0 - alpha) * tau / (sin_a * 2.0 * inv_norm))
            .powf(1.0 / (1.0 - alpha))
            .min(0.5 / inv_norm);
        let (value, disc_err, panels) = balakrishnan_integral(a, cr(alpha), t_lo, t_hi, cfg)?;
        let norm_v = value.norm();
        let tail = sin_a / pi
            * (t_hi.powf(-alpha) / alpha
                + 2.0 * inv_norm * t_lo.powf(1.0 - alpha) / (1.0 - alpha));
        let est = disc_err + tail;
        if est <= cfg.rel_tol * norm_v {
            check_finite(&value, "quadrature result")?;
            return Ok(PowerResult {
                value,
                exponent: cr(alpha),
                estimated_error: est,
                panels_used: panels,
            });
        }
        r_est = (norm_v / 2.0).min(r_est / 4.0).max(f64::MIN_POSITIVE);
        if _attempt == 3 {
            return Err(OpError::QuadratureNotConverged {
                estimate: est,
                target: cfg.rel_tol * norm_v,
                panels,
            });
        }
    }
    unreachable!()
}

/// (A+I)^{iγ} for m-accretive diagonalizable A, via the principal logarithm
/// on the eigenvalues. γ = 0 returns the identity exactly.
pub fn imaginary_power(a: &CMatrix, gamma: f64) -> Result<CMatrix> {
    check_square(a, "matrix")?;
    check_finite(a, "matrix")?;
    require_accretive(a)?;
    let n = a.nrows();
    if gamma == 0.0 {
        return Ok(identity(n));
    }
    let dec = eig_general(a)?;
    let exponent = Complex64::new(0.0, gamma);
    let mut fd = CMatrix::zeros(n, n);
    for (i, &lam) in dec.eigenvalues.iter().enumerate() {
        let shifted = lam + 1.0;
        let y = shifted.powc(exponent);
        if !y.is_finite() {
            return Err(OpError::FunctionDomainError {
                point: format!("{shifted}"),
            });
        }
        fd[(i, i)] = y;
    }
    Ok(&dec.vectors * fd * &dec.vectors_inv)
}

/// Spectral data the projection quadrature needs about the query point:
/// the effective evaluation point (after the right-continuity shift for
/// exact hits) and the absolute gap to the spectrum.
fn projection_query(h_eigs: &[f64], lambda: f64) -> Result<(f64, f64)> {
    let norm_h = h_eigs.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let hit_tol = tol::EXACT_HIT_REL * norm_h.max(1.0);
    let gap_tol = tol::GAP_TOL_REL * norm_h;
    let dmin = h_eigs
        .iter()
        .fold(f64::INFINITY, |m, &l| m.min((l - lambda).abs()));
    if dmin <= hit_tol {
        // Exact hit: E is right-continuous, so E(λ) equals E evaluated at any
        // point strictly between λ and the next distinct eigenvalue above.
        // Use the midpoint of that gap; the hit eigengroup lands below the
        // effective point and is therefore included, as the convention
        // requires.
        let above = h_eigs
            .iter()
            .copied()
            .filter(|&l| l > lambda + hit_tol)
            .fold(f64::INFINITY, f64::min);
        let (lambda_eff, gap_abs) = if above.is_finite() {
            let g = (above - lambda) / 2.0;
            (lambda + g, g)
        } else {
            let g = norm_h.max(1.0);
            (lambda + g, g)
        };
        if gap_abs < gap_tol {
            return Err(OpError::EigenvalueTooClose {
                threshold: format!("{lambda}"),
                distance: gap_abs,
                gap: gap_tol,
            });
        }
        Ok((lambda_eff, gap_abs))
    } else if dmin < gap_tol {
        Err(OpError::EigenvalueTooClose {
            threshold: format!("{lambda}"),
            distance: dmin,
            gap: gap_tol,
        })
    } else {
        Ok((lambda, dmin))
    }
}

/// Spectral projection E(λ) of a Hermitian matrix onto eigenvalues ≤ λ,
/// computed by resolvent quadrature:
/// E(λ) = I − ½[U(λ) + U(λ)²],  U(λ) = (2/π) ∫₀^∞ dη (H−λ)[(H−λ)²+η²]^{−1}.
///
/// Eigenvalues of H enter only the preconditions (gap check, exact-hit
/// normalization and truncation scales); the projection itself comes from the
/// integral. λ exactly on an eigenvalue follows the right-continuous
/// convention: that eigenspace is included.
pub fn spectral_projection_resolvent(
    h: &CMatrix,
    lambda: f64,
    cfg: &QuadratureConfig,
) -> Result<CMatrix> {
    cfg.validate()?;
    check_square(h, "matrix")?;
    check_finite(h, "matrix")?;
    let dec = eig_hermitian(h)?;
    let eigs = dec.real_eigenvalues();
    let (lambda_eff, gap_abs) = projection_query(&eigs, lambda)?;

    let n = h.nrows();
    let d = h - identity(n).map(|z| z * lambda_eff);
    let d2 = &d * &d;
    let s_max = eigs
        .iter()
        .fold(0.0f64, |m, &l| m.max((l - lambda_eff).abs()))
        .max(gap_abs);

    // Truncation in η: the scalar tails of (2/π)∫ a/(a²+η²) dη are
    //   below η_min:  (2/π)·η_min/|a| ≤ (2/π)·η_min/gap
    //   above η_max:  (2/π)·|a|/η_max ≤ (2/π)·s_max/η_max
    let margin = 2.0 * cfg.truncation_margin;
    let eta_min = (cfg.rel_tol / margin) * gap_abs;
    let eta_max = margin * s_max / cfg.rel_tol;
    let v_lo = eta_min.ln();
    let v_hi = eta_max.ln();

    let mut integrand = |v: f64| -> Result<CMatrix> {
        // dη = e^v dv
        let eta = v.exp();
        let m = &d2 + identity(n).map(|z| z * (eta * eta));
        let r = inverse(&m)?;
        Ok((&d * r).map(|z| z * eta))
    };
    let (raw, _diff, _panels) = refine(
        &mut integrand,
        v_lo,
        v_hi,
        cfg,
        cfg.rel_tol / 10.0,
        1.0,
        n,
        n,
    )?;
    let u = raw.map(|z| z * (2.0 / std::f64::consts::PI));
    let e = identity(n) - (&u + &u * &u).map(|z| z * 0.5);
    // E is real-spectrum Hermitian by construction up to quadrature error;
    // symmetrize to keep downstream projection algebra clean.
    let e = (&e + e.adjoint()).map(|z| z * 0.5);
    check_finite(&e, "projection")?;
    Ok(e)
}
