//! Centralized numerical tolerances.
//!
//! Every tolerance used by a public operation or a verification suite lives
//! here with a short justification, so that no check hides a magic constant.
//! Residual checks are relative to a documented scale (usually a Frobenius
//! norm of the inputs) unless stated otherwise.

/// Default relative threshold multiplier for numerical rank: a singular value
/// counts as nonzero when σ_i > rank_tol · σ_max. The default is
/// n · ε_machine · 8, a standard safety factor over the backward error of a
/// dense SVD. Pass an explicit tolerance to override.
pub fn default_rank_tol(n: usize) -> f64 {
    n as f64 * f64::EPSILON * 8.0
}

/// Hermitian check: ‖H − H*‖_F ≤ HERMITIAN_REL · ‖H‖_F.
pub const HERMITIAN_REL: f64 = 1e-10;

/// Normality check: ‖AA* − A*A‖_F ≤ NORMALITY_REL · ‖A‖²_F.
pub const NORMALITY_REL: f64 = 1e-10;

/// Eigenvalues of a nominally PSD matrix are clipped to zero when they are
/// above NEG_EIG_CLIP_REL · ‖H‖ below zero (roundoff from forming (A+A*)/2),
/// and rejected as genuinely negative below NEG_EIG_REJECT_REL · ‖H‖.
pub const NEG_EIG_CLIP_REL: f64 = 1e-10;
pub const NEG_EIG_REJECT_REL: f64 = 1e-8;

/// Polar factors: reconstruction T = U|T| and the partial-isometry laws
/// U*U = P_init, UU* = P_final hold to these relative bounds.
pub const POLAR_RECONSTRUCT_REL: f64 = 1e-10;
pub const POLAR_PROJECTION_ABS: f64 = 1e-10;

/// Generalized polar reconstruction φ(|T*|)·U·ψ(|T|) = T, relative to ‖T‖_F
/// (for unbounded ψ near 0 the scale additionally carries cond(|T|)).
pub const GPOLAR_RECONSTRUCT_REL: f64 = 1e-9;

/// Function pairs must satisfy φ(σ)·ψ(σ) = σ to this tolerance relative to
/// max(1, σ) at every spectral point σ.
pub const FUNCTION_PAIR_REL: f64 = 1e-12;

/// Half-power identities (e.g. U*|T*|^{1/2} = |T|^{1/2}U*) hold to
/// HALF_POWER_REL · ‖T‖^{1/2} · (1 + ‖T‖^{1/2}).
pub const HALF_POWER_REL: f64 = 1e-9;

/// Accretivity: λ_min(Re A) ≥ −ACCRETIVE_MARGIN_REL · max(1, ‖A‖).
pub const ACCRETIVE_MARGIN_REL: f64 = 1e-10;

/// Slack allowed on the resolvent characterization ‖(A+ζ)⁻¹‖ ≤ 1/Re ζ of an
/// accretive matrix at sampled ζ.
pub const RESOLVENT_BOUND_SLACK: f64 = 1e-8;

/// A sectorial certificate requires the numerical-range half-angle to stay
/// below π/2 by at least this margin.
pub const SECTOR_ANGLE_MARGIN: f64 = 1e-8;

/// Boundary points of the numerical range with |w| below this relative
/// threshold are ignored when measuring the sector half-angle.
pub const SECTOR_POINT_REL: f64 = 1e-10;

/// Kato factorization A = A_R^{1/2}(I + iX)A_R^{1/2}: reconstruction residual
/// relative to ‖A‖, slack on ‖X‖ ≤ tan θ, and the residual of X vanishing on
/// ker(A_R).
pub const KATO_RECONSTRUCT_REL: f64 = 1e-9;
pub const KATO_TAN_SLACK: f64 = 1e-7;
pub const KATO_KERNEL_ABS: f64 = 1e-9;

/// Default quadrature target for fractional/complex powers.
pub const QUAD_REL_TOL: f64 = 1e-10;

/// Default quadrature target for resolvent-integral spectral projections.
pub const SPECPROJ_REL_TOL: f64 = 1e-6;

/// Protection band around eigenvalues for spectral thresholds, relative to
/// the spectral scale; thresholds inside the band must hit an eigenvalue
/// exactly (within EXACT_HIT_REL) or the operation errors.
pub const GAP_TOL_REL: f64 = 1e-6;
pub const EXACT_HIT_REL: f64 = 1e-12;

/// Diagonalizability gate: eigenvector matrix condition number must stay
/// below this for eigenvector-based functional calculus.
pub const DIAGONALIZABLE_COND_MAX: f64 = 1e8;

/// Slack for the complex-power norm bound ‖(S+I)^{−z}‖ ≤ |sin πz / sin π Re z|.
pub const COMPLEX_POWER_BOUND_SLACK: f64 = 1e-6;

/// Semigroup property (S+I)^{−α}(S+I)^{−β} = (S+I)^{−(α+β)} tolerance.
pub const SEMIGROUP_ABS: f64 = 1e-7;

/// Group law for imaginary powers.
pub const IMAGINARY_GROUP_ABS: f64 = 1e-8;

/// Slack for the imaginary-power similarity bound ‖(A+I)^{iγ}‖ ≤ cond(V).
pub const IMAGINARY_SIMILARITY_SLACK: f64 = 1e-6;

/// Intertwining: primal residual must vanish to this relative tolerance
/// before any downstream conclusion is tested.
pub const INTERTWINE_PRIMAL_REL: f64 = 1e-10;

/// Adjoint intertwining residual (Fuglede–Putnam conclusion) relative bound.
pub const INTERTWINE_ADJOINT_REL: f64 = 1e-9;

/// Spectral projection commutation residual relative to ‖V‖.
pub const INTERTWINE_PROJECTION_REL: f64 = 1e-8;

/// Rectangle spectral projections match the eigenprojection sum to this.
pub const RECT_PROJECTION_ABS: f64 = 1e-10;

/// Acute-angle inequalities are tested with this additive slack on ε₀.
pub const ACUTE_SLACK: f64 = 1e-8;

/// Conjugation/factorization identities routed through fractional powers of
/// sectorial matrices (probe conjugation, five-factor sandwich, two-factor
/// splitting, half-power conjugation) hold to this relative tolerance.
pub const SECTORIAL_IDENTITY_REL: f64 = 1e-7;

/// Probe-conjugation identity for the similarity factor T of a sectorial
/// matrix, relative to ‖probe‖.
pub const T_SHARP_PROBE_REL: f64 = 1e-8;

/// Form-bound inequality ‖|B|^{1/2}(A+I)^{−1/2}‖ ≤ (a+b)^{1/2} slack.
pub const FORM_BOUND_SLACK: f64 = 1e-9;

/// Heinz interpolation: min eig(A^{2α} − B^{2α}) ≥ −HEINZ_SLACK_REL · ‖A‖^{2α}.
pub const HEINZ_SLACK_REL: f64 = 1e-8;

/// Hypothesis check λ_min(A² − B²) ≥ −HEINZ_HYPOTHESIS_REL · ‖A‖².
pub const HEINZ_HYPOTHESIS_REL: f64 = 1e-10;

/// Subordination inequality |(f,Qg)| ≤ C_α‖B^{1−α}f‖‖A^αg‖ additive slack on C_α.
pub const SUBORDINATION_SLACK: f64 = 1e-8;

/// Envelope domination curve(μ) ≤ a + b/μ additive slack.
pub const ENVELOPE_SLACK: f64 = 1e-10;

/// Monotonicity slack for the μ ↦ ‖B(A+μ)⁻¹‖ curve.
pub const CURVE_MONOTONE_SLACK: f64 = 1e-12;

/// SVD reconstruction ‖UΣV* − M‖_F ≤ SVD_RECONSTRUCT_REL · max(1, ‖M‖_F).
pub const SVD_RECONSTRUCT_REL: f64 = 1e-12;

/// Eigendecomposition reconstruction residual, relative to ‖A‖.
pub const EIG_RECONSTRUCT_REL: f64 = 1e-11;

/// PSD square root residual ‖(H^{1/2})² − H‖ ≤ PSD_SQRT_REL · ‖H‖.
pub const PSD_SQRT_REL: f64 = 1e-10;

/// Cross-check for sectorial square roots: ‖(A^{1/2})² − A‖ ≤ this · ‖A‖.
pub const SECTORIAL_SQRT_REL: f64 = 1e-8;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_tol_scales_with_dimension() {
        assert!(default_rank_tol(4) > default_rank_tol(2));
        assert!(default_rank_tol(32) < 1e-12);
    }

    #[test]
    fn tolerances_are_sane() {
        // Clip must be tighter than rejection, exact-hit tighter than the gap band.
        assert!(NEG_EIG_CLIP_REL < NEG_EIG_REJECT_REL);
        assert!(EXACT_HIT_REL < GAP_TOL_REL);
        assert!(QUAD_REL_TOL < SPECPROJ_REL_TOL);
    }
}
