//! Standard and generalized polar decompositions.
//!
//! For any complex matrix T (rectangular allowed) the polar decomposition is
//! T = U|T| = |T*|U with |T| = (T*T)^{1/2}, |T*| = (TT*)^{1/2} and U the
//! partial isometry sending ran(|T|) onto ran(T) and ker(T) to zero. The
//! generalized form factors T = φ(|T*|)·U·ψ(|T|) for any scalar pair with
//! φ(λ)ψ(λ) = λ on the singular values; the choice φ(λ) = λ^α,
//! ψ(λ) = λ^{1−α} interpolates between U|T| (α = 0) and |T*|U (α = 1).
//!
//! U is constructed as W_r V_r* from the rank-truncated SVD T = W Σ V*. Under
//! degenerate singular values the individual singular vectors are not unique,
//! but the products U, |T|, |T*| are; every identity exposed here is stated
//! on those gauge-invariant products, never on SVD factors entrywise.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{OpError, Result};
use crate::linalg::{svd, SVDResult};
use crate::matrix::{check_finite, cr, CMatrix};
use crate::tol;

/// Scalar function used in a factorization pair.
pub type ScalarFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A pair of scalar functions with φ(λ)·ψ(λ) = λ on the relevant spectrum.
#[derive(Clone)]
pub struct FunctionPair {
    phi: ScalarFn,
    psi: ScalarFn,
    /// Human-readable identity of the pair, echoed in errors and reports.
    pub label: String,
}

impl std::fmt::Debug for FunctionPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FunctionPair")
            .field("label", &self.label)
            .finish()
    }
}

impl FunctionPair {
    /// Build a pair from arbitrary closures.
    pub fn new(
        label: impl Into<String>,
        phi: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
        psi: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        FunctionPair {
            phi: Arc::new(phi),
            psi: Arc::new(psi),
            label: label.into(),
        }
    }

    /// The interpolation family φ(λ) = λ^α, ψ(λ) = λ^{1−α}, α ∈ [0, 1].
    ///
    /// Both endpoints are well defined at λ = 0 (0⁰ = 1 by convention, so
    /// α = 0 reduces to φ ≡ 1) and the pair is defined on zero singular
    /// values for every α in the closed interval.
    pub fn alpha_power(alpha: f64) -> Self {
        FunctionPair::new(
            format!("alpha_power({alpha})"),
            move |z: Complex64| z.powf(alpha),
            move |z: Complex64| z.powf(1.0 - alpha),
        )
    }

    /// φ ≡ 1, ψ(λ) = λ: the standard left polar form U·|T|.
    pub fn one_id() -> Self {
        FunctionPair::new("one_id", |_| Complex64::new(1.0, 0.0), |z| z)
    }

    /// φ(λ) = λ, ψ ≡ 1: the standard right polar form |T*|·U.
    pub fn id_one() -> Self {
        FunctionPair::new("id_one", |z| z, |_| Complex64::new(1.0, 0.0))
    }

    /// φ(λ) = ψ(λ) = λ^{1/2}: the symmetric form |T*|^{1/2} U |T|^{1/2}.
    pub fn sqrt_sqrt() -> Self {
        FunctionPair::new("sqrt_sqrt", |z: Complex64| z.sqrt(), |z: Complex64| z.sqrt())
    }

    /// φ(λ) = λ², ψ(λ) = λ⁻¹: defined only on numerically full-rank targets.
    pub fn square_inv() -> Self {
        FunctionPair::new(
            "square_inv",
            |z: Complex64| z * z,
            |z: Complex64| z.finv(),
        )
    }

    /// Look up a named pair (CLI surface). `alpha:<x>` selects the
    /// interpolation family.
    pub fn named(name: &str) -> Option<Self> {
        if let Some(a) = name.strip_prefix("alpha:") {
            let alpha: f64 = a.parse().ok()?;
            if !(0.0..=1.0).contains(&alpha) {
                return None;
            }
            return Some(FunctionPair::alpha_power(alpha));
        }
        match name {
            "one_id" => Some(FunctionPair::one_id()),
            "id_one" => Some(FunctionPair::id_one()),
            "sqrt_sqrt" => Some(FunctionPair::sqrt_sqrt()),
            "square_inv" => Some(FunctionPair::square_inv()),
            _ => None,
        }
    }

    /// Evaluate φ.
    pub fn phi(&self, z: Complex64) -> Complex64 {
        (self.phi)(z)
    }

    /// Evaluate ψ.
    pub fn psi(&self, z: Complex64) -> Complex64 {
        (self.psi)(z)
    }

    /// Check φ(σ)ψ(σ) = σ (relative to max(1, |σ|)) on the given spectral
    /// points, and that both functions are finite there.
    pub fn check_on(&self, points: &[Complex64]) -> Result<()> {
        for &p in points {
            let (f, g) = (self.phi(p), self.psi(p));
            if !f.is_finite() || !g.is_finite() {
                return Err(OpError::FunctionDomainError {
                    point: format!("{p}"),
                });
            }
            let defect = (f * g - p).norm();
            if defect > tol::FUNCTION_PAIR_REL * p.norm().max(1.0) {
                return Err(OpError::FunctionPairViolation {
                    label: self.label.clone(),
                    point: format!("{p}"),
                    defect,
                });
            }
        }
        Ok(())
    }
}

/// Polar factors of T = U|T| = |T*|U.
#[derive(Debug, Clone)]
pub struct PolarFactors {
    /// Partial isometry with initial space ran(|T|) and final space ran(T);
    /// same shape as T.
    pub u: CMatrix,
    /// |T| = (T*T)^{1/2}, Hermitian PSD.
    pub abs_t: CMatrix,
    /// |T*| = (TT*)^{1/2}, Hermitian PSD.
    pub abs_t_star: CMatrix,
    /// Orthogonal projection onto ran(|T|) = ran(T*); equals U*U.
    pub p_init: CMatrix,
    /// Orthogonal projection onto ran(T); equals UU*.
    pub p_final: CMatrix,
    /// Numerical rank of T.
    pub numerical_rank: usize,
    svd: SVDResult,
}

impl PolarFactors {
    /// The rank-truncated SVD the factors came from.
    pub fn svd(&self) -> &SVDResult {
        &self.svd
    }

    /// Apply a scalar function spectrally to |T|: V f(Σ) V* + f(0)·(I − P_init).
    /// Singular values already truncated to zero use f(0) literally.
    pub fn apply_to_abs_t(&self, f: impl Fn(Complex64) -> Complex64) -> CMatrix {
        apply_spectral(
            &self.svd.v_right,
            &self.svd.singular_values,
            self.abs_t.nrows(),
            &f,
        )
    }

    /// Apply a scalar function spectrally to |T*|: W f(Σ) W* + f(0)·(I − P_final).
    pub fn apply_to_abs_t_star(&self, f: impl Fn(Complex64) -> Complex64) -> CMatrix {
        apply_spectral(
            &self.svd.u_left,
            &self.svd.singular_values,
            self.abs_t_star.nrows(),
            &f,
        )
    }
}

/// Q f(Σ) Q* + f(0)·(I − QQ*) for orthonormal columns Q and real spectrum Σ:
/// the spectral application of f to Q Σ Q* on the full space.
fn apply_spectral(
    q: &CMatrix,
    sigma: &[f64],
    dim: usize,
    f: &impl Fn(Complex64) -> Complex64,
) -> CMatrix {
    let mut out = CMatrix::zeros(dim, dim);
    if !sigma.is_empty() {
        let fd = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            sigma.len(),
            sigma.iter().map(|&s| f(cr(s))),
        ));
        out += q * fd * q.adjoint();
    }
    // The kernel sheet f(0)·(I − QQ*) exists only for rank-deficient input;
    // f(0) must not be evaluated otherwise (it may be a pole).
    if sigma.len() < dim {
        let f0 = f(Complex64::new(0.0, 0.0));
        out += (CMatrix::identity(dim, dim) - q * q.adjoint()).map(|z| z * f0);
    }
    out
}

/// Generalized polar factors T = left · mid · right = φ(|T*|) · U · ψ(|T|).
#[derive(Debug, Clone)]
pub struct GeneralizedPolarFactors {
    /// φ(|T*|).
    pub left: CMatrix,
    /// The partial isometry U.
    pub mid: CMatrix,
    /// ψ(|T|).
    pub right: CMatrix,
    /// The pair used.
    pub pair: FunctionPair,
}

impl GeneralizedPolarFactors {
    /// left · mid · right.
    pub fn reconstruct(&self) -> CMatrix {
        &self.left * &self.mid * &self.right
    }
}

/// Polar decomposition of an arbitrary complex matrix.
///
/// `rank_tol` = 0 selects the default numerical-rank threshold.
pub fn polar(t: &CMatrix, rank_tol: f64) -> Result<PolarFactors> {
    check_finite(t, "matrix")?;
    let dec = svd(t, rank_tol)?;
    let (m, n) = (t.nrows(), t.ncols());
    let w = &dec.u_left; // m×r
    let v = &dec.v_right; // n×r
    let sigma = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        dec.numerical_rank,
        dec.singular_values.iter().map(|&s| cr(s)),
    ));
    let u = w * v.adjoint();
    let abs_t = v * &sigma * v.adjoint();
    let abs_t_star = w * &sigma * w.adjoint();
    let p_init = v * v.adjoint();
    let p_final = w * w.adjoint();
    debug_assert_eq!(u.nrows(), m);
    debug_assert_eq!(u.ncols(), n);
    Ok(PolarFactors {
        u,
        abs_t,
        abs_t_star,
        p_init,
        p_final,
        numerical_rank: dec.numerical_rank,
        svd: dec,
    })
}

/// Generalized polar decomposition T = φ(|T*|)·U·ψ(|T|).
///
/// The pair is validated at call time on the singular values of T (including
/// σ = 0 when T is rank-deficient): pairs undefined at 0 — e.g. ψ(λ) = 1/λ —
/// are rejected with `RankDeficiencyConflict` rather than regularized.
pub fn generalized_polar(t: &CMatrix, pair: &FunctionPair) -> Result<GeneralizedPolarFactors> {
    generalized_polar_with(t, pair, 0.0)
}

/// [`generalized_polar`] with an explicit rank threshold.
pub fn generalized_polar_with(
    t: &CMatrix,
    pair: &FunctionPair,
    rank_tol: f64,
) -> Result<GeneralizedPolarFactors> {
    let factors = polar(t, rank_tol)?;
    let deficient = factors.numerical_rank < t.nrows().min(t.ncols());
    if deficient {
        let zero = Complex64::new(0.0, 0.0);
        if !pair.phi(zero).is_finite() || !pair.psi(zero).is_finite() {
            return Err(OpError::RankDeficiencyConflict {
                label: pair.label.clone(),
            });
        }
    }
    let mut points: Vec<Complex64> = factors
        .svd
        .singular_values
        .iter()
        .map(|&s| cr(s))
        .collect();
    if deficient {
        points.push(Complex64::new(0.0, 0.0));
    }
    pair.check_on(&points)?;

    let left = factors.apply_to_abs_t_star(|z| pair.phi(z));
    let right = factors.apply_to_abs_t(|z| pair.psi(z));
    Ok(GeneralizedPolarFactors {
        left,
        mid: factors.u,
        right,
        pair: pair.clone(),
    })
}

/// Residuals of the half-power identities tying U to |T|^{1/2} and |T*|^{1/2}:
///
/// * `"U*·|T*|^(1/2) − |T|^(1/2)·U*"` — the half-power swap across U,
/// * `"U·|T|^(1/2)·U* − |T*|^(1/2)·P_final"` — conjugation by U,
/// * `"(U*·|T*|^(1/2)·U)² − |T|·P_init"` — the conjugated half power squares
///   back to |T| on the initial space.
///
/// All three vanish identically in exact arithmetic; the map reports their
/// Frobenius norms.
pub fn half_power_identities(t: &CMatrix) -> Result<BTreeMap<String, f64>> {
    let f = polar(t, 0.0)?;
    let sqrt = |z: Complex64| z.sqrt();
    let abs_t_half = f.apply_to_abs_t(sqrt);
    let abs_t_star_half = f.apply_to_abs_t_star(sqrt);

    let u = &f.u;
    let r1 = (u.adjoint() * &abs_t_star_half - &abs_t_half * u.adjoint()).norm();
    let r2 = (u * &abs_t_half * u.adjoint() - &abs_t_star_half * &f.p_final).norm();
    let conj = u.adjoint() * &abs_t_star_half * u;
    let r3 = ((&conj * &conj) - &f.abs_t * &f.p_init).norm();

    let mut out = BTreeMap::new();
    out.insert("U*·|T*|^(1/2) − |T|^(1/2)·U*".to_string(), r1);
    out.insert("U·|T|^(1/2)·U* − |T*|^(1/2)·P_final".to_string(), r2);
    out.insert("(U*·|T*|^(1/2)·U)² − |T|·P_init".to_string(), r3);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{c, identity, op_norm};
    use crate::rng::Stream;
    use nalgebra::DVector;

    fn assert_close(a: &CMatrix, b: &CMatrix, tol: f64, what: &str) {
        let err = (a - b).norm();
        assert!(err <= tol, "{what}: residual {err:.3e} > {tol:.3e}");
    }

    #[test]
    fn identity_polar() {
        let f = polar(&identity(3), 0.0).unwrap();
        assert_close(&f.u, &identity(3), 1e-12, "U");
        assert_close(&f.abs_t, &identity(3), 1e-12, "|T|");
        assert_close(&f.abs_t_star, &identity(3), 1e-12, "|T*|");
        assert_eq!(f.numerical_rank, 3);
    }

    #[test]
    fn nilpotent_2x2_factors_by_hand() {
        // T = [[0,1],[0,0]]: |T| = diag(0,1), |T*| = diag(1,0), U = T.
        let t = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        let f = polar(&t, 0.0).unwrap();
        let abs_t = CMatrix::from_diagonal(&DVector::from_vec(vec![cr(0.0), cr(1.0)]));
        let abs_t_star = CMatrix::from_diagonal(&DVector::from_vec(vec![cr(1.0), cr(0.0)]));
        assert_close(&f.abs_t, &abs_t, 1e-12, "|T|");
        assert_close(&f.abs_t_star, &abs_t_star, 1e-12, "|T*|");
        assert_close(&f.u, &t, 1e-12, "U");
        assert_eq!(f.numerical_rank, 1);
    }

    #[test]
    fn polar_laws_random_square_and_rectangular() {
        let mut s = Stream::new(100);
        for &(m, n) in &[(4usize, 4usize), (2, 5), (5, 2), (6, 6)] {
            let t = s.gaussian(m, n);
            let f = polar(&t, 0.0).unwrap();
            let nrm = t.norm();
            assert_close(&(&f.u * &f.abs_t), &t, 1e-10 * nrm, "U|T| = T");
            assert_close(&(&f.abs_t_star * &f.u), &t, 1e-10 * nrm, "|T*|U = T");
            assert_close(
                &(&f.u * t.adjoint() * &f.u),
                &t,
                1e-10 * nrm,
                "UT*U = T",
            );
            assert_close(&(f.u.adjoint() * &f.u), &f.p_init, 1e-10, "U*U = P_init");
            assert_close(&(&f.u * f.u.adjoint()), &f.p_final, 1e-10, "UU* = P_final");
            assert_close(
                &(&f.abs_t * &f.abs_t),
                &(t.adjoint() * &t),
                1e-10 * nrm * nrm,
                "|T|² = T*T",
            );
            assert_close(
                &(&f.abs_t_star * &f.abs_t_star),
                &(&t * t.adjoint()),
                1e-10 * nrm * nrm,
                "|T*|² = TT*",
            );
            // U*T = |T| and TU* = |T*|.
            assert_close(&(f.u.adjoint() * &t), &f.abs_t, 1e-10 * nrm, "U*T = |T|");
            assert_close(&(&t * f.u.adjoint()), &f.abs_t_star, 1e-10 * nrm, "TU* = |T*|");
        }
    }

    #[test]
    fn rank_deficient_projections_have_planted_rank() {
        let mut s = Stream::new(7);
        let w = s.unitary(4);
        let v = s.unitary(4);
        let sigma = CMatrix::from_diagonal(&DVector::from_vec(vec![
            cr(2.0),
            cr(1.0),
            cr(0.0),
            cr(0.0),
        ]));
        let t = &w * sigma * v.adjoint();
        let f = polar(&t, 0.0).unwrap();
        assert_eq!(f.numerical_rank, 2);
        assert_close(&(&f.u * &f.abs_t), &t, 1e-10 * t.norm(), "U|T| = T");
        // P_init is a rank-2 orthogonal projection.
        let tr: Complex64 = f.p_init.trace();
        assert!((tr.re - 2.0).abs() < 1e-10);
        assert!(crate::matrix::projection_defect(&f.p_init) < 1e-10);
        // U has exactly `rank` unit singular values.
        let sv = f.u.clone().singular_values();
        let ones = sv.iter().filter(|&&s| (s - 1.0).abs() < 1e-10).count();
        let zeros = sv.iter().filter(|&&s| s.abs() < 1e-10).count();
        assert_eq!(ones, 2);
        assert_eq!(zeros, sv.len() - 2);
    }

    #[test]
    fn adjoint_symmetry_of_u() {
        let mut s = Stream::new(55);
        for &(m, n) in &[(4usize, 4usize), (3, 5)] {
            let t = s.gaussian(m, n);
            let f = polar(&t, 0.0).unwrap();
            let fa = polar(&t.adjoint(), 0.0).unwrap();
            assert_close(&fa.u, &f.u.adjoint(), 1e-10, "polar(T*).U = U*");
        }
    }

    #[test]
    fn unitary_input_gives_itself() {
        let q = Stream::new(31).unitary(5);
        let f = polar(&q, 0.0).unwrap();
        assert_close(&f.u, &q, 1e-12 * 5.0, "U = T for unitary T");
        assert_close(&f.abs_t, &identity(5), 1e-12 * 5.0, "|T| = I");
        assert_close(&f.abs_t_star, &identity(5), 1e-12 * 5.0, "|T*| = I");
    }

    #[test]
    fn alpha_family_reconstructs_including_rank_deficient() {
        let mut s = Stream::new(77);
        // full-rank square, rectangular, and planted rank-deficient targets
        let mut targets = vec![s.gaussian(5, 5), s.gaussian(3, 6), s.gaussian(6, 3)];
        let w = s.unitary(5);
        let v = s.unitary(5);
        let sig = CMatrix::from_diagonal(&DVector::from_vec(vec![
            cr(3.0),
            cr(1.5),
            cr(0.7),
            cr(0.0),
            cr(0.0),
        ]));
        targets.push(&w * sig * v.adjoint());
        for t in &targets {
            for &alpha in &[0.0, 0.25, 0.5, 0.75, 1.0] {
                let g = generalized_polar(t, &FunctionPair::alpha_power(alpha)).unwrap();
                let err = (g.reconstruct() - t).norm();
                assert!(
                    err <= tol::GPOLAR_RECONSTRUCT_REL * t.norm(),
                    "alpha {alpha}: residual {err:.3e}"
                );
            }
        }
    }

    #[test]
    fn alpha_zero_reduces_to_left_polar() {
        let t = Stream::new(3).gaussian(4, 4);
        let f = polar(&t, 0.0).unwrap();
        let g = generalized_polar(&t, &FunctionPair::alpha_power(0.0)).unwrap();
        assert_close(&g.left, &identity(4), 1e-12, "phi ≡ 1");
        assert_close(&g.right, &f.abs_t, 1e-12 * t.norm(), "psi = |T|");
    }

    #[test]
    fn square_inv_pair_on_invertible_target() {
        let mut s = Stream::new(19);
        let t = s.gaussian(4, 4) + identity(4).map(|z| z * 3.0);
        let g = generalized_polar(&t, &FunctionPair::square_inv()).unwrap();
        let f = polar(&t, 0.0).unwrap();
        let cond = crate::matrix::cond_2(&f.abs_t);
        let err = (g.reconstruct() - &t).norm();
        assert!(err <= tol::GPOLAR_RECONSTRUCT_REL * t.norm() * cond, "err {err:.3e}");
    }

    #[test]
    fn square_inv_pair_rejects_rank_deficient() {
        let t = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
        let e = generalized_polar(&t, &FunctionPair::square_inv()).unwrap_err();
        assert!(matches!(e, OpError::RankDeficiencyConflict { .. }), "{e}");
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        let bogus = FunctionPair::new("bogus", |z| z, |z| z);
        let t = Stream::new(8).gaussian(3, 3);
        let e = generalized_polar(&t, &bogus).unwrap_err();
        assert!(matches!(e, OpError::FunctionPairViolation { .. }), "{e}");
    }

    #[test]
    fn named_pairs_resolve() {
        assert!(FunctionPair::named("one_id").is_some());
        assert!(FunctionPair::named("alpha:0.25").is_some());
        assert!(FunctionPair::named("alpha:1.5").is_none());
        assert!(FunctionPair::named("nope").is_none());
    }

    #[test]
    fn half_power_identities_identity_and_diagonal() {
        for t in [
            identity(3),
            CMatrix::from_diagonal(&DVector::from_vec(vec![cr(4.0), cr(0.0)])),
        ] {
            let r = half_power_identities(&t).unwrap();
            for (k, v) in r {
                assert!(v < 1e-12, "{k}: {v}");
            }
        }
    }

    #[test]
    fn half_power_identities_random() {
        let t = Stream::new(61).gaussian(5, 5);
        let r = half_power_identities(&t).unwrap();
        let s = op_norm(&t).sqrt();
        let scale = tol::HALF_POWER_REL * s * (1.0 + s);
        for (k, v) in r {
            assert!(v <= scale, "{k}: {v:.3e} > {scale:.3e}");
        }
    }

    #[test]
    fn complex_entries_round_trip() {
        let t = CMatrix::from_row_slice(
            2,
            3,
            &[
                c(1.0, 1.0),
                c(0.0, -2.0),
                c(0.5, 0.0),
                c(-1.0, 0.25),
                c(2.0, 2.0),
                c(0.0, 0.0),
            ],
        );
        let f = polar(&t, 0.0).unwrap();
        assert_close(&(&f.u * &f.abs_t), &t, 1e-10 * t.norm(), "U|T| = T complex");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arbitrary_matrix() -> impl Strategy<Value = CMatrix> {
            (1usize..6, 1usize..6).prop_flat_map(|(m, n)| {
                prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), m * n).prop_map(
                    move |entries| {
                        CMatrix::from_fn(m, n, |i, j| {
                            let (re, im) = entries[i * n + j];
                            c(re, im)
                        })
                    },
                )
            })
        }

        proptest! {
            /// Both reconstruction routes hold for any finite input,
            /// including rectangular and rank-deficient shapes.
            #[test]
            fn reconstruction_for_arbitrary_matrices(t in arbitrary_matrix()) {
                let f = polar(&t, 0.0).unwrap();
                let scale = t.norm().max(1.0);
                prop_assert!((&f.u * &f.abs_t - &t).norm() <= 1e-12 * scale);
                prop_assert!((&f.abs_t_star * &f.u - &t).norm() <= 1e-12 * scale);
            }

            /// |T| and |T*| are Hermitian with nonnegative spectrum.
            #[test]
            fn absolute_values_are_hermitian_psd(t in arbitrary_matrix()) {
                let f = polar(&t, 0.0).unwrap();
                let scale = t.norm().max(1.0);
                for m in [&f.abs_t, &f.abs_t_star] {
                    prop_assert!((m - m.adjoint()).norm() <= 1e-12 * scale);
                    let spec = crate::linalg::eig_hermitian(m).unwrap();
                    prop_assert!(spec.eigenvalues[0].re >= -1e-12 * scale);
                }
            }

            /// The isometry acts as identity on the initial subspace:
            /// U* U equals the projection onto ran |T|.
            #[test]
            fn initial_projection_matches(t in arbitrary_matrix()) {
                let f = polar(&t, 0.0).unwrap();
                prop_assert!((f.u.adjoint() * &f.u - &f.p_init).norm() <= 1e-12);
            }
        }
    }
}
