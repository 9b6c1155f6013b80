//! opkit — an operator-theoretic matrix toolkit.
//!
//! Finite-dimensional realizations of classical operator identities, verified
//! as exact or toleranced matrix identities:
//!
//! * standard and generalized polar decompositions T = φ(|T*|)·U·ψ(|T|),
//!   with partial-isometry laws and half-power identities ([`polar`]);
//! * spectral functional calculus, resolvent-integral spectral projections,
//!   fractional and complex powers of m-accretive matrices by the
//!   Balakrishnan integral, imaginary powers ([`funcalc`]);
//! * Fuglede–Putnam intertwining residuals and spectral-projection
//!   commutation for normal matrices ([`intertwine`]);
//! * numerical-range certificates, accretivity/sectoriality, the Kato
//!   factorization A = A_R^{1/2}(I+iX)A_R^{1/2}, and acute-angle constants
//!   ([`sectorial`]);
//! * relative-bound/form-bound inequalities, Heinz interpolation,
//!   subordination constants, and sandwich factorizations ([`bounds`]);
//! * seeded fixture generators ([`fixtures`]), matrix file I/O ([`io`]), and
//!   a property-suite runner ([`verify`]) surfaced through the `opkit` CLI.
//!
//! Numerical policy: operations validate their mathematical hypotheses and
//! return typed errors instead of regularizing; every tolerance is a named
//! constant in [`tol`].

pub mod bounds;
pub mod error;
pub mod fixtures;
pub mod funcalc;
pub mod intertwine;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod polar;
pub mod report;
pub mod rng;
pub mod sectorial;
pub mod tol;
pub mod verify;

pub mod cli;

pub use error::{OpError, Result};
pub use matrix::CMatrix;
