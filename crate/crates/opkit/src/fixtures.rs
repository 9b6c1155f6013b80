//! Seeded generators for the matrix families the test suites exercise.
//!
//! Every generator is deterministic: the same seed produces the same matrix
//! bit-for-bit (the RNG is ChaCha8 with a documented label-fork scheme, see
//! [`crate::rng`]). Each generator emits matrices that pass the certificate
//! its consumers rely on — sectorial samples certify their semi-angle,
//! intertwined triples have exactly vanishing primal residual by
//! construction, and so on.

use num_complex::Complex64;

use crate::error::{OpError, Result};
use crate::intertwine::IntertwineTriple;
use crate::matrix::{c, cr, identity, op_norm, CMatrix};
use crate::rng::Stream;

/// Random sectorial matrix with semi-angle at most `theta`: assembled as
/// H^{1/2}(I + iX)H^{1/2} with H Hermitian positive definite and X Hermitian
/// scaled to ‖X‖ = tan θ, so the numerical range lies exactly in the closed
/// sector of half-angle θ.
///
/// `theta` must lie in [0, π/2).
pub fn random_sectorial(n: usize, theta: f64, seed: u64) -> CMatrix {
    assert!(
        (0.0..std::f64::consts::FRAC_PI_2).contains(&theta),
        "semi-angle must lie in [0, pi/2)"
    );
    let mut s = Stream::fork(seed, "sectorial-fixture");
    let h = s.pd(n, 0.05);
    let x = s.hermitian(n);
    crate::sectorial::assemble_sectorial(&h, &x, theta)
}

/// Intertwined triple (V, A₁, A₂) with both matrices normal and
/// V·A₁ = A₂·V holding exactly by construction: A₁ = Q·D·Q* for random
/// unitary Q and diagonal D, A₂ = W·A₁·W* for random unitary W, and
/// V = W·p(A₁) for a random cubic polynomial p (polynomials in A₁ commute
/// with A₁, so V A₁ = W p(A₁) A₁ = W A₁ p(A₁) = A₂ W p(A₁) = A₂ V).
pub fn random_normal_intertwined(n: usize, seed: u64) -> IntertwineTriple {
    let mut s = Stream::fork(seed, "intertwined-fixture");
    let q = s.unitary(n);
    let d = CMatrix::from_fn(n, n, |i, j| if i == j { s.cnormal() } else { c(0.0, 0.0) });
    let a1 = &q * d * q.adjoint();
    let w = s.unitary(n);
    let a2 = &w * &a1 * w.adjoint();
    let coeffs: Vec<Complex64> = (0..4).map(|_| s.cnormal()).collect();
    let mut p = CMatrix::zeros(n, n);
    let mut power = identity(n);
    for cf in coeffs {
        p += power.map(|z| z * cf);
        power = &power * &a1;
    }
    let v = &w * p;
    IntertwineTriple::new(v, a1, a2).expect("dimensions agree by construction")
}

/// Discrete Dirichlet Laplacian on the `n` interior points of the unit
/// interval: (n+1)²·tridiag(−1, 2, −1). Hermitian positive definite with
/// eigenvalues 4(n+1)²·sin²(kπ/(2(n+1))), k = 1..n.
pub fn dirichlet_laplacian_1d(n: usize) -> CMatrix {
    assert!(n >= 1, "need at least one interior grid point");
    let scale = ((n + 1) * (n + 1)) as f64;
    CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            cr(2.0 * scale)
        } else if i.abs_diff(j) == 1 {
            cr(-scale)
        } else {
            cr(0.0)
        }
    })
}

/// Closed-form eigenvalues of [`dirichlet_laplacian_1d`], ascending.
pub fn dirichlet_eigenvalues(n: usize) -> Vec<f64> {
    let m = (n + 1) as f64;
    (1..=n)
        .map(|k| {
            let s = (k as f64 * std::f64::consts::PI / (2.0 * m)).sin();
            4.0 * m * m * s * s
        })
        .collect()
}

/// The 2×2 skew example diag(i·t₀, −i·t₀): normal, accretive with margin
/// exactly zero, invertible, and with identically vanishing Hermitian part —
/// the canonical input on which the Hermitian-part square root carries no
/// information and the sectorial factorization must refuse.
pub fn skew_pair(t0: f64) -> Result<CMatrix> {
    if t0 == 0.0 {
        return Err(OpError::ZeroParameter(
            "the skew example needs a nonzero parameter".into(),
        ));
    }
    Ok(CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
        c(0.0, t0),
        c(0.0, -t0),
    ])))
}

/// Hermitian pair (A, B) with A, B ⪰ I and B² ⪯ A²: A = I + P for random
/// PSD P, and B = (I + K)^{1/2} where K = (A²−I)^{1/2}·S·(A²−I)^{1/2} for a
/// random Hermitian contraction 0 ⪯ S ⪯ I, so B² = I + K ⪯ A².
pub fn heinz_pair(n: usize, seed: u64) -> (CMatrix, CMatrix) {
    let mut s = Stream::fork(seed, "heinz-fixture");
    let a = identity(n) + s.psd(n);
    let dec = crate::linalg::eig_hermitian(&(&a * &a - identity(n))).expect("Hermitian");
    let root = crate::funcalc::apply_function(&dec, |z| cr(z.re.max(0.0).sqrt())).expect("sqrt");
    let contraction = {
        let g = s.psd(n);
        let top = op_norm(&g).max(f64::MIN_POSITIVE);
        g.map(|z| z / top)
    };
    let k = &root * contraction * &root;
    let dec_b = crate::linalg::eig_hermitian(&(identity(n) + k)).expect("Hermitian");
    let b = crate::funcalc::apply_function(&dec_b, |z| cr(z.re.max(0.0).sqrt())).expect("sqrt");
    (a, b)
}

/// Matrix similar to a Hermitian PSD one with a prescribed similarity
/// condition number: V = Q₁·diag(linspace(1, cond_target))·Q₂* (so
/// cond(V) = cond_target exactly for n ≥ 2), H random Hermitian PSD,
/// A = V·H·V⁻¹. Returns (A, V, H).
pub fn similar_to_selfadjoint(n: usize, cond_target: f64, seed: u64) -> (CMatrix, CMatrix, CMatrix) {
    assert!(cond_target >= 1.0, "condition target must be at least 1");
    let mut s = Stream::fork(seed, "similar-fixture");
    let q1 = s.unitary(n);
    let q2 = s.unitary(n);
    let sigmas = nalgebra::DVector::from_iterator(
        n,
        (0..n).map(|k| {
            if n == 1 {
                cr(1.0)
            } else {
                cr(1.0 + (cond_target - 1.0) * k as f64 / (n - 1) as f64)
            }
        }),
    );
    let v = q1 * CMatrix::from_diagonal(&sigmas) * q2.adjoint();
    let h0 = s.psd(n);
    let v_inv = crate::matrix::inverse(&v).expect("prescribed singular values are positive");
    let a0 = &v * &h0 * v_inv;
    // A non-normal similarity can push the numerical range of V·H·V⁻¹ left
    // of the imaginary axis even though the spectrum stays nonnegative.
    // Shift both sides by the deficit: A+cI = V(H+cI)V⁻¹ keeps the
    // similarity, the condition number, and H ⪰ 0, and makes A accretive.
    let margin = crate::sectorial::accretivity_margin(&a0).expect("finite by construction");
    let shift = (-margin).max(0.0);
    let a = a0 + identity(n).map(|z| z * shift);
    let h = h0 + identity(n).map(|z| z * shift);
    (a, v, h)
}
