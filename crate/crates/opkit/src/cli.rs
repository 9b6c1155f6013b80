//! Command-line interface.
//!
//! Every subcommand is a thin shell over one library entry point: it reads
//! matrices, calls the library with an explicit configuration, and emits a
//! deterministic JSON [`ReportDocument`](crate::report::ReportDocument) to
//! stdout or `--out`. Numeric behavior lives in the library so CLI output is
//! reproducible by direct calls with the same configuration.
//!
//! Exit codes: 0 success, 1 computation error (a structured error report is
//! still emitted), 2 usage error.
//!
//! The environment variable `OPKIT_DEFAULT_TOL` overrides the default
//! quadrature tolerance; an explicit `--rel-tol` flag wins over the
//! environment.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use crate::bounds::bound_report;
use crate::error::{OpError, Result};
use crate::funcalc::{
    complex_power, frac_power_m_accretive, neg_power_accretive, spectral_projection_resolvent,
    QuadratureConfig,
};
use crate::intertwine::{intertwining_residuals, require_intertwining, require_normal,
    spectral_projection_commutation, IntertwineTriple};
use crate::io::{detect_format, read_matrix, write_matrix, FileFormat};
use crate::matrix::{op_norm, CMatrix};
use crate::polar::{polar, FunctionPair};
use crate::report::{matrix_value, write_report, ReportDocument};
use crate::sectorial::{acute_angle, kato_decompose, numerical_range_boundary, sectorial_certificate};
use crate::tol;
use crate::verify::{run_all, run_suite, SuiteResult, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "opkit",
    version,
    about = "Matrix polar decompositions, fractional powers, sectoriality \
             certificates, and relative-bound analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Relative tolerance for quadrature-backed computations
    /// (default: OPKIT_DEFAULT_TOL or the built-in per-command default).
    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    /// Numerical rank threshold relative to the largest singular value
    /// (default: dimension-scaled machine epsilon).
    #[arg(long, global = true)]
    rank_tol: Option<f64>,

    /// Panel cap for adaptive quadrature.
    #[arg(long, global = true)]
    max_panels: Option<usize>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Matrix file format for inputs and generated outputs.
    #[arg(long, global = true, value_parser = ["mm", "json"])]
    format: Option<String>,
}

fn parse_complex_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected 're,im'".to_string());
    }
    let re: f64 = parts[0].trim().parse().map_err(|_| "bad real part".to_string())?;
    let im: f64 = parts[1].trim().parse().map_err(|_| "bad imaginary part".to_string())?;
    Ok((re, im))
}

#[derive(Subcommand)]
enum Command {
    /// Polar decomposition T = U·|T| with projections and residuals.
    Polar {
        /// Input matrix file.
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Generalized polar decomposition T = φ(|T*|)·U·ψ(|T|).
    Gpolar {
        #[arg(short, long)]
        input: PathBuf,
        /// Function pair: alpha:<x>, one_id, id_one, sqrt_sqrt, square_inv.
        #[arg(long, default_value = "alpha:0.5")]
        pair: String,
    },
    /// Fractional or complex power of an accretive matrix by resolvent
    /// quadrature: (S+I)^{-z} (shifted) or S^{-alpha} (unshifted).
    #[command(group(clap::ArgGroup::new("exponent").required(true).args(["alpha", "z"])))]
    Fracpow {
        #[arg(short, long)]
        input: PathBuf,
        /// Real exponent in (0,1).
        #[arg(long, conflicts_with = "z")]
        alpha: Option<f64>,
        /// Complex exponent 're,im' with re in (0,1).
        #[arg(long, value_parser = parse_complex_pair)]
        z: Option<(f64, f64)>,
        /// Compute S^{-alpha} instead of (S+I)^{-alpha} (needs invertible S;
        /// real exponents only).
        #[arg(long)]
        unshifted: bool,
    },
    /// Spectral projection E(lambda) of a Hermitian matrix by resolvent
    /// quadrature.
    Specproj {
        #[arg(short, long)]
        input: PathBuf,
        /// Query point on the real line.
        #[arg(long)]
        lambda: f64,
    },
    /// Numerical range boundary and the sectoriality certificate.
    Nrange {
        #[arg(short, long)]
        input: PathBuf,
        /// Support angles sampled on the circle.
        #[arg(long, default_value_t = 256)]
        points: usize,
    },
    /// Sectorial factorization A = A_R^{1/2}(I + iX)A_R^{1/2}.
    Kato {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Acute-angle constants between fractional powers of A and A*.
    Acute {
        #[arg(short, long)]
        input: PathBuf,
        /// Exponent in (0, 1/2].
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        /// Use the shifted powers (A+I)^alpha.
        #[arg(long)]
        shifted: bool,
        /// Seed for the sampled inequality check.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Relative-bound frontier, resolvent curve, form and sandwich norms.
    Bounds {
        /// Perturbation matrix B.
        #[arg(long = "B")]
        b_file: PathBuf,
        /// Reference Hermitian PSD matrix A.
        #[arg(long = "A")]
        a_file: PathBuf,
        /// Shifts for the resolvent curve.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        mus: Option<Vec<f64>>,
        /// Slopes for the admissible frontier.
        #[arg(long = "a-grid", value_delimiter = ',', num_args = 1..)]
        a_grid: Option<Vec<f64>>,
    },
    /// Intertwining residuals for (V, A1, A2); `--check` also verifies
    /// normality and spectral-projection commutation.
    Intertwine {
        /// Intertwiner V.
        #[arg(long = "V")]
        v_file: PathBuf,
        /// First matrix A1.
        #[arg(long = "A1")]
        a1_file: PathBuf,
        /// Second matrix A2.
        #[arg(long = "A2")]
        a2_file: PathBuf,
        /// Enforce the normal-case hypotheses and check projection
        /// commutation at lambda = 0.
        #[arg(long)]
        check: bool,
    },
    /// Write a named fixture matrix (or family) to disk.
    Gen {
        /// Fixture: sectorial, intertwined, dirichlet, skew_pair, heinz,
        /// similar.
        fixture: String,
        /// Dimension.
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Generator seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sector semi-angle for `sectorial`.
        #[arg(long, default_value_t = 0.4)]
        theta: f64,
        /// Parameter for `skew_pair`.
        #[arg(long, default_value_t = 1.0)]
        t0: f64,
        /// Condition target for `similar`.
        #[arg(long, default_value_t = 10.0)]
        cond: f64,
    },
    /// Run property suites.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Corpus seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Resolved global configuration.
struct Config {
    quad: QuadratureConfig,
    rel_tol_explicit: bool,
    rank_tol: f64,
    out: Option<PathBuf>,
    format: Option<FileFormat>,
}

impl Config {
    fn resolve(g: &GlobalOpts) -> Result<Config> {
        let env_tol = match std::env::var("OPKIT_DEFAULT_TOL") {
            Ok(s) => Some(s.parse::<f64>().map_err(|_| {
                OpError::InvalidInput(format!("OPKIT_DEFAULT_TOL is not a number: '{s}'"))
            })?),
            Err(_) => None,
        };
        // flag wins over environment; environment wins over the built-in
        let rel_tol = g.rel_tol.or(env_tol);
        let mut quad = match rel_tol {
            Some(t) => QuadratureConfig::with_rel_tol(t),
            None => QuadratureConfig::default(),
        };
        if let Some(p) = g.max_panels {
            quad.max_panels = p;
        }
        quad.validate()?;
        let format = g.format.as_deref().map(|f| match f {
            "json" => FileFormat::Json,
            _ => FileFormat::MatrixMarket,
        });
        Ok(Config {
            quad,
            rel_tol_explicit: rel_tol.is_some(),
            rank_tol: g.rank_tol.unwrap_or(0.0),
            out: g.out.clone(),
            format,
        })
    }

    fn read(&self, path: &Path) -> Result<CMatrix> {
        let fmt = self.format.unwrap_or_else(|| detect_format(path));
        read_matrix(path, fmt)
    }

    /// Projection commands default to the projection tolerance unless the
    /// user asked for something specific.
    fn projection_quad(&self) -> QuadratureConfig {
        if self.rel_tol_explicit {
            self.quad.clone()
        } else {
            QuadratureConfig::projection_default()
        }
    }
}

fn emit(report: &ReportDocument, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => write_report(report, path),
        None => {
            println!("{}", report.serialize()?);
            Ok(())
        }
    }
}

/// Execute one subcommand; returns the report and the process exit code
/// (nonzero only for `verify` runs with failing suites).
fn run_command(cmd: &Command, cfg: &Config) -> Result<(ReportDocument, i32)> {
    match cmd {
        Command::Polar { input } => {
            let t = cfg.read(input)?;
            let mut r = ReportDocument::new("polar");
            r.add_input(input)?;
            let p = polar(&t, cfg.rank_tol)?;
            r.insert_value("u", matrix_value(&p.u)?);
            r.insert_value("abs_t", matrix_value(&p.abs_t)?);
            r.insert_value("abs_t_star", matrix_value(&p.abs_t_star)?);
            r.insert_value("p_init", matrix_value(&p.p_init)?);
            r.insert_value("p_final", matrix_value(&p.p_final)?);
            r.insert_value("numerical_rank", json!(p.numerical_rank));
            r.insert_number("reconstruction_residual", (&p.u * &p.abs_t - &t).norm())?;
            r.insert_number(
                "left_form_residual",
                (&p.abs_t_star * &p.u - &t).norm(),
            )?;
            r.insert_tolerance(
                "rank_tol",
                if cfg.rank_tol > 0.0 {
                    cfg.rank_tol
                } else {
                    tol::default_rank_tol(t.nrows().max(t.ncols()))
                },
            );
            Ok((r, 0))
        }
        Command::Gpolar { input, pair } => {
            let t = cfg.read(input)?;
            let fpair = FunctionPair::named(pair).ok_or_else(|| {
                OpError::InvalidInput(format!(
                    "unknown function pair '{pair}' (try alpha:<x>, one_id, id_one, \
                     sqrt_sqrt, square_inv)"
                ))
            })?;
            let mut r = ReportDocument::new("gpolar");
            r.add_input(input)?;
            let gp = crate::polar::generalized_polar_with(&t, &fpair, cfg.rank_tol)?;
            r.insert_value("left", matrix_value(&gp.left)?);
            r.insert_value("mid", matrix_value(&gp.mid)?);
            r.insert_value("right", matrix_value(&gp.right)?);
            r.insert_value("pair", json!(gp.pair.label));
            r.insert_number(
                "reconstruction_residual",
                (gp.reconstruct() - &t).norm(),
            )?;
            r.insert_tolerance("reconstruct_rel", tol::GPOLAR_RECONSTRUCT_REL);
            Ok((r, 0))
        }
        Command::Fracpow {
            input,
            alpha,
            z,
            unshifted,
        } => {
            let s = cfg.read(input)?;
            let mut r = ReportDocument::new("fracpow");
            r.add_input(input)?;
            let result = match (alpha, z, unshifted) {
                (Some(a), None, false) => frac_power_m_accretive(&s, *a, &cfg.quad)?,
                (Some(a), None, true) => neg_power_accretive(&s, *a, &cfg.quad)?,
                (None, Some((re, im)), false) => {
                    complex_power(&s, Complex64::new(*re, *im), &cfg.quad)?
                }
                (None, Some(_), true) => {
                    return Err(OpError::InvalidInput(
                        "unshifted powers support real exponents only".into(),
                    ))
                }
                _ => {
                    return Err(OpError::InvalidInput(
                        "exactly one of --alpha or --z is required".into(),
                    ))
                }
            };
            r.insert_value("power", matrix_value(&result.value)?);
            r.insert_value(
                "exponent",
                json!({ "re": result.exponent.re, "im": result.exponent.im }),
            );
            r.insert_value("shifted", json!(!*unshifted));
            r.insert_number("estimated_error", result.estimated_error)?;
            r.insert_value("panels_used", json!(result.panels_used));
            r.insert_tolerance("rel_tol", cfg.quad.rel_tol);
            Ok((r, 0))
        }
        Command::Specproj { input, lambda } => {
            let h = cfg.read(input)?;
            let quad = cfg.projection_quad();
            let mut r = ReportDocument::new("specproj");
            r.add_input(input)?;
            let e = spectral_projection_resolvent(&h, *lambda, &quad)?;
            r.insert_value("projection", matrix_value(&e)?);
            r.insert_number("lambda", *lambda)?;
            r.insert_number("idempotency_defect", (&e * &e - &e).norm())?;
            r.insert_number("rank_estimate", e.trace().re)?;
            r.insert_tolerance("rel_tol", quad.rel_tol);
            Ok((r, 0))
        }
        Command::Nrange { input, points } => {
            let a = cfg.read(input)?;
            let mut r = ReportDocument::new("nrange");
            r.add_input(input)?;
            let boundary = numerical_range_boundary(&a, *points)?;
            let cert = sectorial_certificate(&a, *points)?;
            let pts: Vec<serde_json::Value> = boundary
                .points
                .iter()
                .map(|p| json!({ "re": p.re, "im": p.im }))
                .collect();
            r.insert_value("boundary", json!(pts));
            r.insert_value("accretive", json!(cert.accretive));
            r.insert_number("accretivity_margin", cert.accretivity_margin)?;
            r.insert_value("sectorial", json!(cert.sectorial));
            r.insert_number("semi_angle_theta", cert.semi_angle_theta)?;
            r.insert_value(
                "vertex",
                json!({ "re": cert.vertex.re, "im": cert.vertex.im }),
            );
            r.insert_tolerance("sector_angle_margin", tol::SECTOR_ANGLE_MARGIN);
            Ok((r, 0))
        }
        Command::Kato { input } => {
            let a = cfg.read(input)?;
            let mut r = ReportDocument::new("kato");
            r.add_input(input)?;
            let kd = kato_decompose(&a, cfg.rank_tol)?;
            r.insert_value("a_r", matrix_value(&kd.a_r)?);
            r.insert_value("x", matrix_value(&kd.x)?);
            r.insert_number("x_norm", op_norm(&kd.x))?;
            r.insert_number("reconstruction_residual", kd.reconstruction_residual)?;
            r.insert_tolerance("reconstruct_rel", tol::KATO_RECONSTRUCT_REL);
            Ok((r, 0))
        }
        Command::Acute {
            input,
            alpha,
            shifted,
            seed,
        } => {
            let a = cfg.read(input)?;
            let mut r = ReportDocument::new("acute");
            r.add_input(input)?;
            r.seed = Some(*seed);
            let rep = acute_angle(&a, *alpha, *shifted, *seed)?;
            r.insert_number("alpha", rep.alpha)?;
            r.insert_value("shifted", json!(rep.shifted));
            r.insert_number("eps0", rep.eps0)?;
            r.insert_number("eps1", rep.eps1)?;
            r.insert_number("eps2", rep.eps2)?;
            r.insert_tolerance("sampled_slack", tol::ACUTE_SLACK);
            Ok((r, 0))
        }
        Command::Bounds {
            b_file,
            a_file,
            mus,
            a_grid,
        } => {
            let b = cfg.read(b_file)?;
            let a = cfg.read(a_file)?;
            let mut r = ReportDocument::new("bounds");
            r.add_input(b_file)?;
            r.add_input(a_file)?;
            let default_grid = vec![0.0, 0.25, 0.5, 1.0, 2.0, 4.0];
            let default_mus: Vec<f64> = (0..9).map(|k| 10f64.powf(k as f64 / 2.0 - 1.0)).collect();
            let grid = a_grid.clone().unwrap_or(default_grid);
            let mus = mus.clone().unwrap_or(default_mus);
            let rep = bound_report(&b, &a, &grid, &mus)?;
            let pairs: Vec<serde_json::Value> = rep
                .pairs
                .iter()
                .map(|p| json!({ "a": p.a, "b": p.b, "quadratic": p.quadratic }))
                .collect();
            let curve: Vec<serde_json::Value> = rep
                .curve
                .iter()
                .map(|(mu, v)| json!({ "mu": mu, "norm": v }))
                .collect();
            r.insert_value("pairs", json!(pairs));
            r.insert_value("curve", json!(curve));
            r.insert_number("form_norm", rep.form_norm)?;
            r.insert_number("form_norm_adjoint", rep.form_norm_adjoint)?;
            r.insert_number("sandwich_norm", rep.sandwich_norm)?;
            r.insert_tolerance("form_bound_slack", tol::FORM_BOUND_SLACK);
            r.validate()?;
            Ok((r, 0))
        }
        Command::Intertwine {
            v_file,
            a1_file,
            a2_file,
            check,
        } => {
            let v = cfg.read(v_file)?;
            let a1 = cfg.read(a1_file)?;
            let a2 = cfg.read(a2_file)?;
            let mut r = ReportDocument::new("intertwine");
            r.add_input(v_file)?;
            r.add_input(a1_file)?;
            r.add_input(a2_file)?;
            let t = IntertwineTriple::new(v, a1, a2)?;
            let res = intertwining_residuals(&t);
            r.insert_number("r_primal", res.r_primal)?;
            r.insert_number("r_adjoint", res.r_adjoint)?;
            r.insert_number("scale", t.scale())?;
            if *check {
                require_intertwining(&t)?;
                require_normal(&t.a1, "A1")?;
                require_normal(&t.a2, "A2")?;
                let commutation = spectral_projection_commutation(&t, 0.0)?;
                r.insert_number("projection_commutation_residual", commutation)?;
            }
            r.insert_tolerance("intertwine_rel", tol::INTERTWINE_PRIMAL_REL);
            Ok((r, 0))
        }
        Command::Gen {
            fixture,
            n,
            seed,
            theta,
            t0,
            cond,
        } => {
            let out = cfg.out.clone().ok_or_else(|| {
                OpError::InvalidInput("gen requires --out <file>".into())
            })?;
            let fmt = cfg.format.unwrap_or_else(|| detect_format(&out));
            let mut r = ReportDocument::new("gen");
            r.seed = Some(*seed);
            r.insert_value("fixture", json!(fixture));
            let mut written: Vec<String> = Vec::new();
            let mut write_one = |m: &CMatrix, path: &Path| -> Result<()> {
                write_matrix(m, path, fmt)?;
                written.push(path.display().to_string());
                Ok(())
            };
            match fixture.as_str() {
                "sectorial" => {
                    write_one(&crate::fixtures::random_sectorial(*n, *theta, *seed), &out)?
                }
                "dirichlet" => write_one(&crate::fixtures::dirichlet_laplacian_1d(*n), &out)?,
                "skew_pair" => write_one(&crate::fixtures::skew_pair(*t0)?, &out)?,
                "intertwined" => {
                    let t = crate::fixtures::random_normal_intertwined(*n, *seed);
                    write_one(&t.v, &suffixed(&out, "v"))?;
                    write_one(&t.a1, &suffixed(&out, "a1"))?;
                    write_one(&t.a2, &suffixed(&out, "a2"))?;
                }
                "heinz" => {
                    let (a, b) = crate::fixtures::heinz_pair(*n, *seed);
                    write_one(&a, &suffixed(&out, "a"))?;
                    write_one(&b, &suffixed(&out, "b"))?;
                }
                "similar" => {
                    let (a, v, h) = crate::fixtures::similar_to_selfadjoint(*n, *cond, *seed);
                    write_one(&a, &suffixed(&out, "a"))?;
                    write_one(&v, &suffixed(&out, "v"))?;
                    write_one(&h, &suffixed(&out, "h"))?;
                }
                other => {
                    return Err(OpError::InvalidInput(format!(
                        "unknown fixture '{other}' (try sectorial, intertwined, dirichlet, \
                         skew_pair, heinz, similar)"
                    )))
                }
            }
            r.insert_value("written", json!(written));
            Ok((r, 0))
        }
        Command::Verify { suite, seed } => {
            let mut r = ReportDocument::new("verify");
            r.seed = Some(*seed);
            let results: Vec<SuiteResult> = if suite == "all" {
                run_all(*seed)?
            } else {
                vec![run_suite(suite, *seed)?]
            };
            let all_passed = results.iter().all(|s| s.passed);
            for s in &results {
                eprintln!(
                    "suite {:<11} {}  ({} checks, {} ms)",
                    s.suite,
                    if s.passed { "pass" } else { "FAIL" },
                    s.checks.len(),
                    s.elapsed_ms
                );
            }
            r.insert_value("suites", serde_json::to_value(&results).map_err(|e| {
                OpError::Internal(format!("suite serialization failed: {e}"))
            })?);
            r.insert_value("passed", json!(all_passed));
            r.insert_value("available_suites", json!(SUITE_NAMES));
            if !all_passed {
                let failing: Vec<String> = results
                    .iter()
                    .filter(|s| !s.passed)
                    .map(|s| s.suite.clone())
                    .collect();
                eprintln!(
                    "error: {}",
                    OpError::VerificationFailed(failing.join(", "))
                );
                return Ok((r, 1));
            }
            Ok((r, 0))
        }
    }
}

/// `base.ext` → `base.part.ext` for multi-matrix fixtures.
fn suffixed(base: &Path, part: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("fixture");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("mtx");
    base.with_file_name(format!("{stem}.{part}.{ext}"))
}

/// Parse arguments, run, and return the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match Config::resolve(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    // `gen` consumes --out as the matrix destination; its report always
    // goes to stdout.
    let report_out = if matches!(cli.command, Command::Gen { .. }) {
        None
    } else {
        cfg.out.clone()
    };
    match run_command(&cli.command, &cfg) {
        Ok((report, code)) => match emit(&report, report_out.as_deref()) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Err(e) => {
            // structured error report on stdout/--out, human line on stderr
            let mut r = ReportDocument::new("error");
            r.insert_value(
                "error",
                json!({ "kind": e.kind(), "message": e.to_string() }),
            );
            let _ = emit(&r, report_out.as_deref());
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suffixing_keeps_directory_and_extension() {
        let p = suffixed(Path::new("/tmp/x/fix.mtx"), "a1");
        assert_eq!(p, Path::new("/tmp/x/fix.a1.mtx"));
        let q = suffixed(Path::new("out.json"), "v");
        assert_eq!(q, Path::new("out.v.json"));
    }

    #[test]
    fn complex_pair_parser() {
        assert_eq!(parse_complex_pair("0.5,-0.25").unwrap(), (0.5, -0.25));
        assert!(parse_complex_pair("0.5").is_err());
        assert!(parse_complex_pair("a,b").is_err());
    }
}
