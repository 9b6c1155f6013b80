//! Deterministic random streams for fixtures and randomized verifications.
//!
//! The generator is ChaCha8 keyed by a caller-supplied 64-bit seed. Floating
//! point values are derived from the raw 64-bit output by an explicit
//! 53-bit-mantissa mapping, and normal deviates by a Box–Muller transform
//! written out here, so the exact stream is reproducible from the seed in any
//! language with a ChaCha implementation — it cannot drift with library
//! version changes.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{CMatrix, CVector};

/// Deterministic stream of scalars, vectors and matrices.
pub struct Stream {
    rng: ChaCha8Rng,
}

impl Stream {
    /// Start a stream from a 64-bit seed.
    pub fn new(seed: u64) -> Self {
        Stream {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Derive an independent stream for a named sub-task. Mixing the label
    /// into the seed keeps sibling generators decorrelated while staying
    /// reproducible.
    pub fn fork(seed: u64, label: &str) -> Self {
        // FNV-1a over the label, folded into the seed.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        Stream::new(seed ^ h)
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// Uniform in [lo, hi).
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.uniform() * (hi - lo)
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        // Desk-scale n: modulo bias is negligible and determinism is what matters.
        (self.rng.next_u64() % n as u64) as usize
    }

    /// Standard normal deviate (Box–Muller; consumes two uniforms).
    pub fn normal(&mut self) -> f64 {
        // u ∈ (0, 1] so the logarithm is finite.
        let u = 1.0 - self.uniform();
        let v = self.uniform();
        (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    }

    /// Standard complex normal deviate: (N + iN)/√2, unit variance.
    pub fn cnormal(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// m×n matrix of independent standard complex normals.
    pub fn gaussian(&mut self, m: usize, n: usize) -> CMatrix {
        // Row-major fill order is part of the reproducibility contract.
        let mut data = Vec::with_capacity(m * n);
        for _ in 0..m * n {
            data.push(self.cnormal());
        }
        CMatrix::from_row_slice(m, n, &data)
    }

    /// Random unit vector of length n.
    pub fn unit_vector(&mut self, n: usize) -> CVector {
        loop {
            let mut v = CVector::from_fn(n, |_, _| self.cnormal());
            let norm = v.norm();
            if norm > 1e-6 {
                v /= Complex64::new(norm, 0.0);
                return v;
            }
        }
    }

    /// Haar-distributed random unitary: QR of a complex Gaussian matrix with
    /// the phase gauge fixed so the R diagonal is positive.
    pub fn unitary(&mut self, n: usize) -> CMatrix {
        let g = self.gaussian(n, n);
        let qr = g.qr();
        let mut q = qr.q();
        let r = qr.r();
        for j in 0..n {
            let d = r[(j, j)];
            if d.norm() > 0.0 {
                let phase = d / d.norm();
                for i in 0..n {
                    q[(i, j)] *= phase;
                }
            }
        }
        q
    }

    /// Random Hermitian matrix (G + G*)/2.
    pub fn hermitian(&mut self, n: usize) -> CMatrix {
        let g = self.gaussian(n, n);
        (&g + g.adjoint()).map(|z| z * 0.5)
    }

    /// Random Hermitian positive semidefinite matrix G*G/n (well scaled).
    pub fn psd(&mut self, n: usize) -> CMatrix {
        let g = self.gaussian(n, n);
        (g.adjoint() * &g).map(|z| z / n as f64)
    }

    /// Random Hermitian positive definite matrix G*G/n + δI.
    pub fn pd(&mut self, n: usize, delta: f64) -> CMatrix {
        self.psd(n) + CMatrix::identity(n, n).map(|z| z * delta)
    }
}
