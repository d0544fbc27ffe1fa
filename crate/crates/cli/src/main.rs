//! `dtspace`: JSON front end for `dtspace-core`.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a computation
//! rejects its input on mathematical grounds, 2 on usage and parse errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use dtspace_core::gleason::{gleason_norms, gleason_solve};
use dtspace_core::gram_json::GramFile;
use dtspace_core::opmodel::{model_roundtrip, TruncatedKernel};
use dtspace_core::potential::{dirichlet_via_potential, u_mu, DEFAULT_ANGULAR, DEFAULT_RADIAL};
use dtspace_core::space1d::{dirichlet1, gram1};
use dtspace_core::space2d::{dirichlet2, dirichlet2_quadrature, gram2};
use dtspace_core::verify::{self, Check, Report, VerifyConfig};
use dtspace_core::{Axis, Complex64, Error, MeasureSpec, Poly1, Poly2, QuadratureGrid};

#[derive(Parser)]
#[command(
    name = "dtspace",
    version,
    about = "Dirichlet-type spaces on the disc and bidisc"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Moment table μ̂{i,j} for 0 <= i, j <= max-order.
    Moments {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_order: usize,
        /// Weight n of ∫ (1 - |ζ|²)^n conj(ζ)^i ζ^j dμ.
        #[arg(long, default_value_t = 0)]
        weight: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Potential U_μ at a point, or the Dirichlet integral of a one-variable
    /// polynomial by area quadrature.
    Potential {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        at: Option<Complex64>,
        #[arg(long)]
        poly: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gram matrix of D(μ).
    Gram1d {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gram matrix of D(μ₁, μ₂).
    Gram2d {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dirichlet integral of a two-variable polynomial with its interior and
    /// boundary parts.
    Dirichlet {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        poly: PathBuf,
        /// Also evaluate the area-quadrature route.
        #[arg(long)]
        quadrature: bool,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Truncated reproducing kernel k_T(z, w).
    Kernel {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z1: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z2: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w1: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        w2: Complex64,
        #[arg(long, default_value_t = 10)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical Gleason solution at (λ, 0) or (0, λ).
    Gleason {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Complex64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        axis: u8,
        /// Measures for the norm report (both or neither).
        #[arg(long, requires = "mu2")]
        mu1: Option<PathBuf>,
        #[arg(long, requires = "mu1")]
        mu2: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite: defect, hyperexpansive, two-isometry,
    /// wandering, kl-identity, roundtrip, beta-recursion, mult-identity,
    /// gram-structure, kernel, gleason, potential, intro-anchor, or all.
    Verify(VerifyArgs),
    /// Recover moments from a Gram matrix and rebuild it.
    Roundtrip {
        #[arg(long, conflicts_with_all = ["mu1", "mu2"])]
        gram: Option<PathBuf>,
        #[arg(long, requires = "mu2")]
        mu1: Option<PathBuf>,
        #[arg(long, requires = "mu1")]
        mu2: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Write the rebuilt Gram matrix here.
        #[arg(long)]
        rebuilt: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    mu1: PathBuf,
    #[arg(long)]
    mu2: PathBuf,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = DEFAULT_RADIAL)]
    grid_radial: usize,
    #[arg(long, default_value_t = DEFAULT_ANGULAR)]
    grid_angular: usize,
}

#[derive(Args)]
struct VerifyArgs {
    check: String,
    #[arg(long, requires = "mu2")]
    mu1: Option<PathBuf>,
    #[arg(long, requires = "mu1")]
    mu2: Option<PathBuf>,
    #[arg(long, default_value_t = verify::DEFAULT_ALPHA_MAX)]
    alpha_max: usize,
    #[arg(long, default_value_t = verify::DEFAULT_DEGREE)]
    degree: usize,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Number of random pairs in the seeded corpus.
    #[arg(long, default_value_t = verify::DEFAULT_PAIRS)]
    pairs: usize,
    /// Record wall time in the report (makes output run-dependent).
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(format!("expected 're,im', got '{s}'")),
    }
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            kind: "usage",
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Json(_) => (2, "parse"),
            Error::InvalidMeasure(_) => (2, "invalid_measure"),
            Error::InvalidPolynomial(_) => (2, "invalid_polynomial"),
            Error::InvalidGrid(_) => (2, "invalid_grid"),
            Error::InvalidArgument(_) => (2, "invalid_argument"),
            Error::OutsideDisc { .. } => (2, "outside_disc"),
            Error::SingularPoint { .. } => (1, "singular_point"),
            Error::DegreeOutOfRange { .. } => (1, "degree_out_of_range"),
            Error::InconsistentGram(_) => (1, "inconsistent_gram"),
            Error::IllConditioned { .. } => (1, "ill_conditioned"),
            Error::SliceNotZero { .. } => (1, "slice_not_zero"),
        };
        Self {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn digest(path: &Path) -> Result<String, Failure> {
    let bytes = fs::read(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let hex: String = Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    Ok(format!("sha256:{hex}"))
}

fn load_measure(path: &Path) -> Result<MeasureSpec, Failure> {
    MeasureSpec::from_json(&read(path)?).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_poly(path: &Path) -> Result<Poly2, Failure> {
    Poly2::from_json(&read(path)?).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn emit(value: &impl Serialize, out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pair(a: &Complex64) -> [f64; 2] {
    [a.re, a.im]
}

fn grid(args: &GridArgs) -> Result<QuadratureGrid, Failure> {
    Ok(QuadratureGrid::new(args.grid_radial, args.grid_angular)?)
}

fn as_poly1(p: &Poly2) -> Result<Poly1, Failure> {
    if p.degree_in(Axis::Two) > 0 {
        return Err(Error::InvalidPolynomial(
            "one-variable polynomials must have n = 0 in every term".into(),
        )
        .into());
    }
    Ok(p.restrict(Axis::Two, Complex64::new(0.0, 0.0)))
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Moments {
            measure,
            max_order,
            weight,
            out,
        } => {
            let spec = load_measure(&measure)?;
            let table = dtspace_core::MomentTable::from_fn(max_order, max_order, |i, j| {
                spec.weighted_moment(i, j, weight)
            });
            emit(&json!({"weight": weight, "moments": table}), out.as_deref())?;
            Ok(0)
        }
        Command::Potential {
            measure,
            at,
            poly,
            grid: grid_args,
            out,
        } => {
            let spec = load_measure(&measure)?;
            let mut report = serde_json::Map::new();
            if at.is_none() && poly.is_none() {
                return Err(Failure::usage("potential needs --at or --poly"));
            }
            if let Some(w) = at {
                report.insert("at".into(), json!(pair(&w)));
                report.insert("value".into(), json!(u_mu(&spec, w)?));
            }
            if let Some(path) = poly {
                let g = as_poly1(&load_poly(&path)?)?;
                let quad = dirichlet_via_potential(&spec, &g, &grid(&grid_args)?)?;
                let exact = dirichlet1(&spec, &g);
                report.insert(
                    "dirichlet".into(),
                    json!({
                        "quadrature": quad,
                        "moments": exact,
                        "relative_difference": if exact == 0.0 { quad.value.abs() } else { (quad.value - exact).abs() / exact.abs() },
                        "grid": [grid_args.grid_radial, grid_args.grid_angular],
                    }),
                );
            }
            emit(&Value::Object(report), out.as_deref())?;
            Ok(0)
        }
        Command::Gram1d {
            measure,
            order,
            out,
        } => {
            let spec = load_measure(&measure)?;
            emit(&GramFile::from_gram1(&gram1(&spec, order)), out.as_deref())?;
            Ok(0)
        }
        Command::Gram2d { pair: p, m, n, out } => {
            let (s1, s2) = (load_measure(&p.mu1)?, load_measure(&p.mu2)?);
            emit(
                &GramFile::from_gram2(&gram2(&s1, &s2, m, n)),
                out.as_deref(),
            )?;
            Ok(0)
        }
        Command::Dirichlet {
            pair: p,
            poly,
            quadrature,
            grid: grid_args,
            out,
        } => {
            let (s1, s2) = (load_measure(&p.mu1)?, load_measure(&p.mu2)?);
            let f = load_poly(&poly)?;
            let parts = dirichlet2(&s1, &s2, &f);
            let mut report = json!({
                "total": parts.total,
                "interior": parts.interior,
                "boundary": parts.boundary,
            });
            if quadrature {
                let q = dirichlet2_quadrature(&s1, &s2, &f, &grid(&grid_args)?)?;
                report["quadrature"] = json!(q);
            }
            emit(&report, out.as_deref())?;
            Ok(0)
        }
        Command::Kernel {
            pair: p,
            z1,
            z2,
            w1,
            w2,
            m,
            n,
            out,
        } => {
            let (s1, s2) = (load_measure(&p.mu1)?, load_measure(&p.mu2)?);
            for point in [z1, z2, w1, w2] {
                if point.norm() >= 1.0 {
                    return Err(Error::OutsideDisc {
                        re: point.re,
                        im: point.im,
                    }
                    .into());
                }
            }
            let kernel = TruncatedKernel::new(gram2(&s1, &s2, m, n))?;
            let value = kernel.eval((z1, z2), (w1, w2));
            emit(
                &json!({
                    "z": [pair(&z1), pair(&z2)],
                    "w": [pair(&w1), pair(&w2)],
                    "truncation": [m, n],
                    "condition": kernel.condition,
                    "value": pair(&value),
                }),
                out.as_deref(),
            )?;
            Ok(0)
        }
        Command::Gleason {
            poly,
            lambda,
            axis,
            mu1,
            mu2,
            out,
        } => {
            let f = load_poly(&poly)?;
            let axis = Axis::try_from(axis)?;
            let s = gleason_solve(&f, lambda, axis)?;
            let residual = s.residual(&f);
            let mut report = json!({
                "axis": axis.index(),
                "lambda": pair(&lambda),
                "value": pair(&s.value),
                "f1": s.f1.to_file(),
                "f2": s.f2.to_file(),
                "residual": residual,
            });
            if let (Some(a), Some(b)) = (mu1, mu2) {
                let norms = gleason_norms(&load_measure(&a)?, &load_measure(&b)?, &s)?;
                report["norms"] = json!(norms);
            }
            emit(&report, out.as_deref())?;
            Ok(0)
        }
        Command::Verify(args) => run_verify(args),
        Command::Roundtrip {
            gram,
            mu1,
            mu2,
            m,
            n,
            rebuilt,
            out,
        } => {
            let mut inputs = BTreeMap::new();
            let g = match (gram, mu1, mu2) {
                (Some(path), _, _) => {
                    inputs.insert("gram".to_string(), digest(&path)?);
                    GramFile::from_json(&read(&path)?)?.to_gram2()?
                }
                (None, Some(a), Some(b)) => {
                    inputs.insert("mu1".to_string(), digest(&a)?);
                    inputs.insert("mu2".to_string(), digest(&b)?);
                    gram2(&load_measure(&a)?, &load_measure(&b)?, m, n)
                }
                _ => {
                    return Err(Failure::usage(
                        "roundtrip needs --gram or both --mu1 and --mu2",
                    ))
                }
            };
            let rt = model_roundtrip(&g)?;
            let pass = rt.max_residual <= dtspace_core::space1d::RECOVERY_TOL;
            if let Some(path) = rebuilt {
                emit(&GramFile::from_gram2(&rt.rebuilt), Some(&path))?;
            }
            emit(
                &json!({
                    "inputs": inputs,
                    "orders": [g.orders().0, g.orders().1],
                    "moments1": rt.moments1,
                    "moments2": rt.moments2,
                    "max_residual": rt.max_residual,
                    "pass": pass,
                }),
                out.as_deref(),
            )?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}

#[derive(Serialize)]
struct Suite {
    schema_version: u32,
    pass: bool,
    reports: Vec<Report>,
}

fn run_verify(args: VerifyArgs) -> CmdResult {
    let checks: Vec<Check> = if args.check == "all" {
        Check::ALL.to_vec()
    } else {
        vec![args
            .check
            .parse()
            .map_err(|e: Error| Failure::usage(e.to_string()))?]
    };
    let mut inputs = BTreeMap::new();
    let measures = match (&args.mu1, &args.mu2) {
        (Some(a), Some(b)) => {
            inputs.insert("mu1".to_string(), digest(a)?);
            inputs.insert("mu2".to_string(), digest(b)?);
            Some((load_measure(a)?, load_measure(b)?))
        }
        _ => None,
    };
    let config = VerifyConfig {
        seed: args.seed,
        alpha_max: args.alpha_max,
        degree: args.degree,
        tol: args.tol,
        pairs: args.pairs.max(1),
        measures,
    };
    let mut reports = Vec::with_capacity(checks.len());
    for check in checks {
        let start = Instant::now();
        let mut report = verify::run(check, &config)?;
        report.inputs = inputs.clone();
        if args.timing {
            report.wall_time_s = Some(start.elapsed().as_secs_f64());
        }
        reports.push(report);
    }
    let pass = reports.iter().all(|r| r.pass);
    if args.check == "all" {
        emit(
            &Suite {
                schema_version: verify::REPORT_SCHEMA_VERSION,
                pass,
                reports,
            },
            args.out.as_deref(),
        )?;
    } else {
        emit(&reports[0], args.out.as_deref())?;
    }
    Ok(if pass { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let failure = Failure::usage(e.render().to_string());
            report_failure(&failure);
            return ExitCode::from(failure.code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            report_failure(&failure);
            ExitCode::from(failure.code)
        }
    }
}

fn report_failure(failure: &Failure) {
    let body = json!({"error": {"kind": failure.kind, "message": failure.message.trim_end()}});
    eprintln!(
        "{}",
        serde_json::to_string_pretty(&body).expect("error serializes")
    );
}
