//! Dense complex matrices and small shared helpers.
//!
//! The whole crate operates on [`CMatrix`], a dynamically sized dense matrix
//! over `Complex<f64>`. Helpers here are the pieces every module needs:
//! Hermitian/skew splitting, operator norms, finite-entry validation, and
//! projection residuals.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{OpError, Result};

/// Dense complex matrix, the universal operand of this crate.
pub type CMatrix = DMatrix<Complex64>;

/// Dense complex column vector.
pub type CVector = nalgebra::DVector<Complex64>;

/// Shorthand complex constructor.
#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Real scalar as a complex number.
#[inline]
pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Identity matrix of size n.
pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Frobenius norm.
#[inline]
pub fn fro(m: &CMatrix) -> f64 {
    m.norm()
}

/// Operator (spectral) 2-norm: the largest singular value.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().singular_values().max()
}

/// Largest and smallest singular values as a pair (σ_max, σ_min).
pub fn sigma_extremes(m: &CMatrix) -> (f64, f64) {
    if m.is_empty() {
        return (0.0, 0.0);
    }
    let sv = m.clone().singular_values();
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for s in sv.iter() {
        lo = lo.min(*s);
        hi = hi.max(*s);
    }
    (hi, lo)
}

/// 2-norm condition number σ_max/σ_min; ∞ for singular matrices.
pub fn cond_2(m: &CMatrix) -> f64 {
    let (hi, lo) = sigma_extremes(m);
    if lo == 0.0 {
        f64::INFINITY
    } else {
        hi / lo
    }
}

/// Hermitian part (A + A*)/2.
pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).map(|z| z * 0.5)
}

/// Hermitian "imaginary part" (A − A*)/(2i), so that A = Re A + i·Im A.
pub fn skew_part(a: &CMatrix) -> CMatrix {
    let d = a - a.adjoint();
    d.map(|z| z / Complex64::new(0.0, 2.0))
}

/// True when every entry is finite.
pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Validation guard used at every public entry point.
pub fn check_finite(m: &CMatrix, what: &str) -> Result<()> {
    if all_finite(m) {
        Ok(())
    } else {
        Err(OpError::InvalidInput(format!(
            "{what} contains non-finite entries"
        )))
    }
}

/// Validation guard for square inputs.
pub fn check_square(m: &CMatrix, what: &str) -> Result<()> {
    if m.nrows() == m.ncols() {
        Ok(())
    } else {
        Err(OpError::DimensionMismatch(format!(
            "{what} must be square, got {}×{}",
            m.nrows(),
            m.ncols()
        )))
    }
}

/// ‖M − M*‖_F, the deviation from Hermitian symmetry.
pub fn hermitian_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).norm()
}

/// ‖MM* − M*M‖_F, the deviation from normality.
pub fn normality_defect(m: &CMatrix) -> f64 {
    (m * m.adjoint() - m.adjoint() * m).norm()
}

/// ‖P² − P‖_F + ‖P − P*‖_F, the deviation from being an orthogonal projection.
pub fn projection_defect(p: &CMatrix) -> f64 {
    (p * p - p).norm() + hermitian_defect(p)
}

/// Solve A X = B by LU with partial pivoting; errors when A is singular to
/// working precision.
pub fn lu_solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.clone().lu().solve(b).ok_or_else(|| OpError::NotInvertible {
        sigma_min: 0.0,
        tol: 0.0,
    })
}

/// Inverse via LU; errors when singular to working precision.
pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    check_square(a, "matrix")?;
    lu_solve(a, &identity(a.nrows()))
}
