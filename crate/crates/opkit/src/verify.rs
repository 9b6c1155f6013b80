//! Named property suites behind `verify --suite <name|all>`.
//!
//! Each suite draws its own corpus from a labeled fork of the given seed,
//! runs the module under test against an independent oracle or an exact
//! algebraic identity, and reports per-check worst residuals. Residual
//! checks record the worst normalized residual seen over the corpus;
//! predicate checks count outright failures (tolerance 0). A suite passes
//! iff every check passes, and `run_all` passes iff every suite does.
//!
//! Timing is tracked but never serialized, so verify reports are
//! byte-identical across runs with the same seed.

use num_complex::Complex64;
use serde::Serialize;
use std::time::Instant;

use crate::bounds::{
    admissible_pairs, convert_pair, form_bound_check, heinz_check, power_sandwich_family,
    relative_bound_curve, sandwich, sectorial_sandwich_identity, subordination,
};
use crate::error::{OpError, Result};
use crate::fixtures::{
    heinz_pair, random_normal_intertwined, random_sectorial, skew_pair, similar_to_selfadjoint,
};
use crate::funcalc::{
    apply_function, complex_power, frac_power_m_accretive, imaginary_power,
    spectral_projection_resolvent, QuadratureConfig,
};
use crate::intertwine::{intertwining_residuals, spectral_projection_commutation, IntertwineTriple};
use crate::linalg::eig_hermitian;
use crate::matrix::{c, cond_2, cr, identity, inverse, op_norm, CMatrix};
use crate::polar::{generalized_polar, half_power_identities, polar, FunctionPair};
use crate::rng::Stream;
use crate::sectorial::{acute_angle, kato_decompose, sectorial_certificate};
use crate::tol;

/// All suite names, in canonical order.
pub const SUITE_NAMES: &[&str] = &[
    "polar",
    "specproj",
    "fracpow",
    "intertwine",
    "heinz",
    "bounds",
    "kato",
    "acute",
    "sandwich",
    "imagpow",
];

/// One named check: either a worst-residual comparison or a failure count.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    /// What was checked.
    pub name: String,
    /// Whether `worst <= tolerance`.
    pub passed: bool,
    /// Worst normalized residual over the corpus (failure count for
    /// predicate checks).
    pub worst: f64,
    /// The acceptance threshold.
    pub tolerance: f64,
    /// How many instances contributed.
    pub samples: usize,
}

/// Result of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    /// Suite name.
    pub suite: String,
    /// Seed the corpus was forked from.
    pub seed: u64,
    /// Conjunction of all checks.
    pub passed: bool,
    /// Individual checks in execution order.
    pub checks: Vec<CheckOutcome>,
    /// Wall-clock milliseconds (excluded from serialized reports to keep
    /// them byte-reproducible).
    #[serde(skip)]
    pub elapsed_ms: u64,
}

struct Check {
    name: &'static str,
    tolerance: f64,
    worst: f64,
    samples: usize,
}

impl Check {
    fn residual(name: &'static str, tolerance: f64) -> Self {
        Check {
            name,
            tolerance,
            worst: 0.0,
            samples: 0,
        }
    }

    fn predicate(name: &'static str) -> Self {
        Check {
            name,
            tolerance: 0.0,
            worst: 0.0,
            samples: 0,
        }
    }

    fn record(&mut self, value: f64) {
        self.samples += 1;
        if value > self.worst {
            self.worst = value;
        }
    }

    fn expect(&mut self, ok: bool) {
        self.samples += 1;
        if !ok {
            self.worst += 1.0;
        }
    }

    fn outcome(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name.to_string(),
            passed: self.worst <= self.tolerance,
            worst: self.worst,
            tolerance: self.tolerance,
            samples: self.samples,
        }
    }
}

fn assemble(suite: &str, seed: u64, start: Instant, checks: Vec<Check>) -> SuiteResult {
    let checks: Vec<CheckOutcome> = checks.into_iter().map(Check::outcome).collect();
    SuiteResult {
        suite: suite.to_string(),
        seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Random dense test matrix: every fourth draw is rank-deficient by
/// construction, the rest are generic; dimensions vary independently so
/// rectangular shapes appear throughout.
fn corpus_matrix(s: &mut Stream, index: usize) -> CMatrix {
    // sizes 2..=32, biased small with periodic large draws
    let dim = |s: &mut Stream, k: usize| {
        if k % 10 == 9 {
            16 + s.below(17)
        } else {
            2 + s.below(7)
        }
    };
    let m = dim(s, index);
    let n = dim(s, index + 1);
    if index % 4 == 0 {
        let r = 1 + s.below(m.min(n));
        let r = r.min(m.min(n).saturating_sub(1)).max(1);
        s.gaussian(m, r) * s.gaussian(r, n)
    } else {
        s.gaussian(m, n)
    }
}

/// Criteria 1–2: α-family reconstruction, partial-isometry laws, and the
/// half-power exchange identities over 200 random matrices.
fn suite_polar(seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut s = Stream::fork(seed, "suite-polar");
    let alphas = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut recon = Check::residual("alpha-family reconstruction", tol::GPOLAR_RECONSTRUCT_REL);
    let mut proj_init = Check::residual("initial projection U*U", 1e-10);
    let mut proj_final = Check::residual("final projection UU*", 1e-10);
    let mut isometry = Check::residual("partial isometry UU*U = U", 1e-10);
    let mut halfpow = Check::residual("half-power exchange identities", 1e-9);

    for k in 0..200 {
        let t = corpus_matrix(&mut s, k);
        let scale = t.norm().max(f64::MIN_POSITIVE);
        for alpha in alphas {
            let gp = generalized_polar(&t, &FunctionPair::alpha_power(alpha))?;
            recon.record((gp.reconstruct() - &t).norm() / scale);
        }
        let p = polar(&t, 0.0)?;
        proj_init.record(op_norm(&(p.u.adjoint() * &p.u - &p.p_init)));
        proj_final.record(op_norm(&(&p.u * p.u.adjoint() - &p.p_final)));
        isometry.record(op_norm(&(&p.u * p.u.adjoint() * &p.u - &p.u)));
        let ids = half_power_identities(&t)?;
        let hscale = scale.sqrt().max(1.0);
        for (_, r) in ids {
            halfpow.record(r / hscale);
        }
    }
    Ok(assemble(
        "polar",
        seed,
        start,
        vec![recon, proj_init, proj_final, isometry, halfpow],
    ))
}

/// Hermitian matrix with eigenvalues split into two clusters away from 0,
/// so the spectral gap around the query point 0 is at least 0.5 ≥ 0.1·‖H‖.
fn gapped_hermitian(s: &mut Stream, n: usize) -> (CMatrix, CMatrix) {
    let q = s.unitary(n);
    let k = 1 + s.below(n - 1);
    let mut eigs = Vec::with_capacity(n);
    for i in 0..n {
        if i < k {
            eigs.push(s.uniform_in(-1.0, -0.25));
        } else {
            eigs.push(s.uniform_in(0.25, 1.0));
        }
    }
    let lam = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        eigs.iter().map(|&e| cr(e)),
    ));
    let h = &q * lam * q.adjoint();
    // oracle projection onto the negative cluster's span
    let dec = eig_hermitian(&h).expect("Hermitian by construction");
    let mut e = CMatrix::zeros(n, n);
    for (i, lam) in dec.real_eigenvalues().iter().enumerate() {
        if *lam <= 0.0 {
            let v = dec.eigenvectors.column(i);
            e += v * v.adjoint();
        }
    }
    (h, e)
}

/// Criterion 3: resolvent-quadrature spectral projections against the
/// eigendecomposition oracle, plus exact diagonal sign cases.
fn suite_specproj(seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut s = Stream::fork(seed, "suite-specproj");
    let mut oracle = Check::residual("projection vs eigendecomposition", tol::SPECPROJ_REL_TOL);
    let mut diag = Check::residual("diagonal sign identity", 1e-10);
    let cfg = QuadratureConfig::projection_default();

    for _ in 0..50 {
        let n = 4 + s.below(9);
        let (h, e_oracle) = gapped_hermitian(&mut s, n);
        let e = spectral_projection_resolvent(&h, 0.0, &cfg)?;
        oracle.record(op_norm(&(e - e_oracle)));
    }

    // Diagonal matrices: the projection must land on exact 0/1 entries,
    // including a query sitting exactly on an eigenvalue (right-continuous).
    let tight = QuadratureConfig::with_rel_tol(1e-11);
    for case in 0..5 {
        let n = 6;
        let mut vals = Vec::with_capacity(n);
        for i in 0..n {
            let mag = s.uniform_in(0.3, 1.5);
            vals.push(if i % 2 == 0 { -mag } else { mag });
        }
        let lambda = if case == 4 {
            vals[2] // exact hit on an eigenvalue
        } else {
            0.0
        };
        let h = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            vals.iter().map(|&v| cr(v)),
        ));
        let e = spectral_projection_resolvent(&h, lambda, &tight)?;
        let want = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            vals.iter().map(|&v| if v <= lambda { cr(1.0) } else { cr(0.0) }),
        ));
        diag.record(op_norm(&(e - want)));
    }
    Ok(assemble("specproj", seed, start, vec![oracle, diag]))
}

/// Random m-accretive matrix: a generic draw shifted right of the imaginary
/// axis by a positive margin.
fn random_accretive(s: &mut Stream, n: usize) -> CMatrix {
    let g = s.gaussian(n, n);
    let shift = op_norm(&g) + 0.1;
    g + identity(n).map(|z| z * shift)
}

/// Criteria 4–5: quadrature fractional powers against closed forms and the
/// spectral oracle; semigroup property; complex-power norm bound.
fn suite_fracpow(seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut s = Stream::fork(seed, "suite-fracpow");
    let cfg = QuadratureConfig::default();
    let mut diag_case = Check::residual("diagonal closed form", 1e-10);
    let mut oracle = Check::residual("Hermitian corpus vs spectral oracle", 1e-8);
    let mut triangular = Check::residual("triangular 2x2 closed form", 1e-9);
    let mut semigroup = Check::residual("semigroup property", tol::SEMIGROUP_ABS);
    let mut norm_bound = Check::predicate("complex-power norm bound violations");

    // diag(0,3) at alpha = 1/2: shifted inverse square root is diag(1, 1/2)
    let d03 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![cr(0.0), cr(3.0)]));
    let p = frac_power_m_accretive(&d03, 0.5, &cfg)?.value;
    let want = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![cr(1.0), cr(0.5)]));
    diag_case.record((p - want).norm());

    // Hermitian PSD corpus against the eigendecomposition oracle
    for _ in 0..25 {
        let n = 2 + s.below(7);
        let h = s.psd(n);
        let dec = eig_hermitian(&h)?;
        for alpha in [0.25, 0.5, 0.75] {
            let got = frac_power_m_accretive(&h, alpha, &cfg)?.value;
            let want = apply_function(&dec, |z| cr((1.0 + z.re.max(0.0)).powf(-alpha)))?;
            oracle.record((got - &want).norm() / want.norm());
        }
    }

    // Upper-triangular 2x2: f(T) has the divided-difference off-diagonal
    for z in [c(0.5, 0.0), c(0.4, 0.3)] {
        let (a, b, d) = (1.0, 2.0, 3.0);
        let t = CMatrix::from_row_slice(2, 2, &[cr(a), cr(b), cr(0.0), cr(d)]);
        let f = |lam: f64| Complex64::new(1.0 + lam, 0.0).powc(-z);
        let mut want = CMatrix::zeros(2, 2);
        want[(0, 0)] = f(a);
        want[(1, 1)] = f(d);
        want[(0, 1)] = (f(a) - f(d)) / (a - d) * b;
        let got = complex_power(&t, z, &cfg)?.value;
        triangular.record((got - want).norm());
    }

    // Semigroup: P(z1)·P(z2) = P(z1+z2) on 50 accretive matrices
    for _ in 0..50 {
        let n = 2 + s.below(4);
        let a = random_accretive(&mut s, n);
        let z1 = c(s.uniform_in(0.15, 0.45), s.uniform_in(-0.6, 0.6));
        let z2 = c(s.uniform_in(0.15, 0.45), s.uniform_in(-0.6, 0.6));
        let p1 = complex_power(&a, z1, &cfg)?.value;
        let p2 = complex_power(&a, z2, &cfg)?.value;
        let p12 = complex_power(&a, z1 + z2, &cfg)?.value;
        semigroup.record((p1 * p2 - p12).norm());
    }

    // Norm bound over the full z-grid × 50 samples; the bound carries slack
    // 1e-6, so a faster quadrature tolerance suffices.
    let fast = QuadratureConfig::with_rel_tol(1e-8);
    let res: Vec<f64> = vec![0.1, 0.3, 0.5, 0.7, 0.9];
    let ims: Vec<f64> = vec![-1.0, -0.5, 0.0, 0.5, 1.0];
    for _ in 0..50 {
        let n = 2 + s.below(4);
        let a = random_accretive(&mut s, n);
        for &re in &res {
            for &im in &ims {
                let z = c(re, im);
                let got = op_norm(&complex_power(&a, z, &fast)?.value);
                let pi = std::f64::consts::PI;
                let bound = ((pi * z).sin() / (pi * re).sin()).norm();
                norm_bound.expect(got <= bound + tol::COMPLEX_POWER_BOUND_SLACK);
            }
        }
    }

    Ok(assemble(
        "fracpow",
        seed,
        start,
        vec![diag_case, oracle, triangular, semigroup, norm_bound],
    ))
}

/// Criterion 6: adjoint intertwining for normal pairs, the non-normal
/// counterexample, resolvent propagation, and spectral-projection
/// commutation.
fn suite_intertwine(seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut s = Stream::fork(seed, "suite-intertwine");
    let mut adjoint = Check::residual("adjoint relation on normal fixtures", 1e-9);
    let mut counter = Check::residual("non-normal counterexample hits sqrt(2)", 1e-12);
    let mut resolvent = Check::residual("resolvent propagation", 1e-9);
    let mut commute = Check::residual("spectral projection commutation", 1e-8);

    for k in 0..100 {
        let n = 3 + s.below(6);
        let t = random_normal_intertwined(n, seed.wrapping_add(k));
        let scale = t.scale().max(1.0);
        let r = intertwining_residuals(&t);
        adjoint.record(r.r_adjoint / scale);

        // V(A1 - z)^{-1} = (A2 - z)^{-1}V for z beyond both spectra
        let z = c(0.0, op_norm(&t.a1).max(op_norm(&t.a2)) * 1.5 + 1.0);
        let r1 = inverse(&(&t.a1 - identity(n).map(|w| w * z)))?;
        let r2 = inverse(&(&t.a2 - identity(n).map(|w| w * z)))?;
        resolvent.record((&t.v * r1 - r2 * &t.v).norm() / scale);
    }

    // A1 = A2 = the 2x2 nilpotent Jordan block, V = A1: the primal relation
    // holds but the adjoint one fails with Frobenius residual exactly √2.
    let jb = CMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(0.0), cr(0.0)]);
    let t = IntertwineTriple::new(jb.clone(), jb.clone(), jb.clone())?;
    let r = intertwining_residuals(&t);
    counter.record((r.r_adjoint - 2.0_f64.sqrt()).abs());
    counter.record(r.r_primal);

    // quadrature-backed projection commutation on a few fixtures
    for k in 0..4u64 {
        let t = random_normal_intertwined(4, seed.wrapping_add(1000 + k));
        let lambda = s.uniform_in(-0.5, 0.5);
        let resid = spectral_projection_commutation(&t, lambda)?;
        commute.record(resid / t.scale().max(1.0));
    }

    Ok(assemble(
        "intertwine",
        seed,
        start,
        vec![adjoint, counter, resolvent, commute],
    ))
}

/// Criterion 7: Heinz interpolation over 500 constructed pairs.
fn suite_heinz(seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut s = Stream::fork(seed, "suite-heinz");
    let mut interp = Check::predicate("interpolation violations over alpha grid");
    let mut worst_margin = Check::residual("worst normalized eigenvalue deficit", tol::HEINZ_SLACK_REL);
    let alphas: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    for k in 0..500u64 {
        let n = 3 + s.below(5);
        let (a, b) = heinz_pair(n, seed.wrapping_add(k));
        let norm_a = op_norm(&a);
        for (alpha, min_eig) in heinz_check(&a, &b, &alphas)? {
            let floor = tol::HEINZ_SLACK_REL * norm_a.powf(2.0 * alpha);
            interp.expect(min_eig >= -floor);
            worst_margin.record((-min_eig).max(0.0) / norm_a.powf(2.0 * alpha));
        }
    }
    Ok(assemble("heinz", seed, start, vec![interp, worst_margin]))
}

/// Criterion 8: form-bound and sandwich-norm inequalities over full
/// admissible frontiers of 100 random pairs.
fn suite_bounds(seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut s = Stream::fork(seed, "suite-bounds");
    let mut form = Check::predicate("form-bound violations");
    let mut sand = Check::predicate("sandwich norm-bound violations");
    let mut envelope = Check::residual("curve under envelope", tol::ENVELOPE_SLACK);
    let slopes = [0.0, 0.5, 1.0, 2.0];
    let eps_grid = [0.25, 1.0, 4.0];
    let mus = [0.5, 1.0, 2.0, 5.0];

    for _ in 0..100 {
        let n = 3 + s.below(5);
        let a = s.psd(n);
        let b = s.gaussian(n, n);
        let pairs = admissible_pairs(&b, &a, &slopes)?;
        let pairs_star = admissible_pairs(&b.adjoint(), &a, &slopes)?;
        for (p, ps) in pairs.iter().zip(&pairs_star) {
            for eps in eps_grid {
                let lin = convert_pair(*p, eps);
                let (_, ok) = form_bound_check(&b, &a, lin)?;
                form.expect(ok);
                let lin_star = convert_pair(*ps, eps);
                let (_, ok) = form_bound_check(&b.adjoint(), &a, lin_star)?;
                form.expect(ok);
            }
        }
        // sandwich norm against the tightest frontier bound
        let r = sandwich(&b, &a, &a, false, false)?;
        let best: f64 = pairs
            .iter()
            .zip(&pairs_star)
            .map(|(p, ps)| ((p.a + p.b) * (ps.a + ps.b)).sqrt())
            .fold(f64::INFINITY, f64::min);
        sand.expect(r.norm <= best + tol::FORM_BOUND_SLACK);

        // resolvent curve sits under every linear envelope
        let curve = relative_bound_curve(&b, &a, &mus)?;
        for p in &pairs {
            let lin = convert_pair(*p, 1.0);
            for &(mu, v) in &curve {
                envelope.record(v - (lin.a + lin.b / mu));
            }
        }
    }
    Ok(assemble("bounds", seed, start, vec![form, sand, envelope]))
}

/// Criterion 9: Kato factorization round trip on 100 sectorial fixtures and
/// the kernel-obstruction refusal.
fn suite_kato(seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut s = Stream::fork(seed, "suite-kato");
    let mut recon = Check::residual("factorization reconstruction", tol::KATO_RECONSTRUCT_REL);
    let mut tan_bound = Check::residual("tangent bound excess", tol::KATO_TAN_SLACK);
    let mut obstruction = Check::predicate("skew example raises KernelObstruction");

    for k in 0..100u64 {
        let n = 3 + s.below(5);
        let theta = s.uniform_in(0.05, 1.2);
        let a = random_sectorial(n, theta, seed.wrapping_add(k));
        let kd = kato_decompose(&a, 0.0)?;
        recon.record(kd.reconstruction_residual / op_norm(&a).max(f64::MIN_POSITIVE));
        let cert = sectorial_certificate(&a, 128)?;
        tan_bound.record(op_norm(&kd.x) - cert.semi_angle_theta.tan());
    }
    for t0 in [1.0, -2.5, 0.3] {
        let a = skew_pair(t0)?;
        obstruction.expect(matches!(
            kato_decompose(&a, 0.0),
            Err(OpError::KernelObstruction { .. })
        ));
    }
    Ok(assemble(
        "kato",
        seed,
        start,
        vec![recon, tan_bound, obstruction],
    ))
}

/// Criterion 10: acute-angle constants are strictly positive and the
/// inner-product inequalities hold on 1000 sampled vectors per fixture.
fn suite_acute(seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut s = Stream::fork(seed, "suite-acute");
    let mut positive = Check::predicate("epsilon_0 positive");
    let mut inequalities = Check::predicate("sampled inequality failures");
    for k in 0..10u64 {
        let n = 3 + s.below(4);
        let theta = s.uniform_in(0.1, 1.0);
        let a = random_sectorial(n, theta, seed.wrapping_add(k));
        for alpha in [0.1, 0.25, 0.5] {
            for shifted in [true, false] {
                // acute_angle verifies both inequalities on 1000 unit
                // vectors internally and errors on any violation.
                match acute_angle(&a, alpha, shifted, seed.wrapping_add(k)) {
                    Ok(rep) => {
                        positive.expect(rep.eps0 > 0.0);
                        inequalities.expect(true);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(assemble("acute", seed, start, vec![positive, inequalities]))
}

/// Criterion 11: the four sandwich/conjugation identities on 50 sectorial
/// fixtures.
fn suite_sandwich(seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut s = Stream::fork(seed, "suite-sandwich");
    let mut factored = Check::residual("polar-factored sandwich", tol::SECTORIAL_IDENTITY_REL);
    let mut similarity = Check::residual("similarity-route sandwich", tol::SECTORIAL_IDENTITY_REL);
    let mut split = Check::residual("complex-power splitting", tol::SECTORIAL_IDENTITY_REL);
    let mut conj = Check::residual("half-power conjugation", tol::SECTORIAL_IDENTITY_REL);
    let mut subord = Check::predicate("subordination constants certified");

    let grid = [c(0.5, 0.0), c(0.3, 0.4)];
    for k in 0..50u64 {
        let n = 3 + s.below(3);
        let theta = s.uniform_in(0.1, 0.9);
        let a = random_sectorial(n, theta, seed.wrapping_add(k));
        let b = s.gaussian(n, n);
        let scale = op_norm(&b).max(1.0);

        let r = sandwich(&b, &a, &a, false, false)?;
        factored.record(r.factored_residual / scale);
        similarity.record(sectorial_sandwich_identity(&b, &a)? / scale);

        let bp = s.pd(n, 0.2);
        let rep = power_sandwich_family(&bp, &a, &grid)?;
        let pscale = op_norm(&bp).max(1.0);
        for e in &rep.entries {
            split.record(e.split_residual / pscale);
        }
        conj.record(rep.t_conjugation_residual / pscale);

        // subordination constants on a subset (quadrature-heavy)
        if k % 10 == 0 {
            let q = &bp * &a;
            let rep = subordination(&q, &a, &a, &[0.5], seed.wrapping_add(k))?;
            subord.expect(rep.d1.is_finite() && rep.c_alpha[0].1.is_finite());
        }
    }
    Ok(assemble(
        "sandwich",
        seed,
        start,
        vec![factored, similarity, split, conj, subord],
    ))
}

/// Criterion 12: imaginary powers of matrices similar to Hermitian ones stay
/// below the similarity condition number.
fn suite_imagpow(seed: u64) -> Result<SuiteResult> {
    let start = Instant::now();
    let mut s = Stream::fork(seed, "suite-imagpow");
    let mut bound = Check::residual("imaginary-power norm excess", tol::IMAGINARY_SIMILARITY_SLACK);
    let mut ident = Check::residual("gamma = 0 is the identity", 0.0);
    let conds = [1.0, 3.0, 10.0, 30.0, 100.0];
    for k in 0..20u64 {
        let n = 3 + s.below(6);
        let cond_target = conds[(k as usize) % conds.len()];
        let (a, v, _) = similar_to_selfadjoint(n, cond_target, seed.wrapping_add(k));
        let cv = cond_2(&v);
        for gamma in [-4.0, -2.0, -1.0, 1.0, 2.0, 4.0] {
            let p = imaginary_power(&a, gamma)?;
            bound.record(op_norm(&p) - cv);
        }
        ident.record((imaginary_power(&a, 0.0)? - identity(n)).norm());
    }
    Ok(assemble("imagpow", seed, start, vec![bound, ident]))
}

/// Run one named suite.
pub fn run_suite(name: &str, seed: u64) -> Result<SuiteResult> {
    match name {
        "polar" => suite_polar(seed),
        "specproj" => suite_specproj(seed),
        "fracpow" => suite_fracpow(seed),
        "intertwine" => suite_intertwine(seed),
        "heinz" => suite_heinz(seed),
        "bounds" => suite_bounds(seed),
        "kato" => suite_kato(seed),
        "acute" => suite_acute(seed),
        "sandwich" => suite_sandwich(seed),
        "imagpow" => suite_imagpow(seed),
        other => Err(OpError::InvalidInput(format!(
            "unknown suite '{other}'; expected one of {}",
            SUITE_NAMES.join(", ")
        ))),
    }
}

/// Run every suite in canonical order.
pub fn run_all(seed: u64) -> Result<Vec<SuiteResult>> {
    SUITE_NAMES.iter().map(|n| run_suite(n, seed)).collect()
}
