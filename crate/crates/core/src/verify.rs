//! Verification suites over seeded corpora or a user-supplied measure pair,
//! producing deterministic JSON reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::RngExt;
use serde::Serialize;

use crate::corpus;
use crate::error::{Error, Result};
use crate::gleason::{divide_on_slice, gleason_norms, gleason_solve};
use crate::measure::{MeasureComponent, MeasureSpec};
use crate::opmodel::{
    beta_recursion_residual, check_nsd, defect_form, defect_from_norms, kl_identity_residual_with,
    model_roundtrip, moment_side_form, wandering_residual_with, DefectForm, TruncatedKernel,
    NSD_TOL,
};
use crate::poly::{Axis, Poly1, Poly2};
use crate::potential::{dirichlet_via_potential, QuadratureGrid};
use crate::space1d::{dirichlet1, gram1, recover_moments1, Gram1};
use crate::space2d::{gram2, mult_identity_residual_with, norm2_sq};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_ALPHA_MAX: usize = 4;
pub const DEFAULT_DEGREE: usize = 5;
pub const DEFAULT_PAIRS: usize = 20;

/// Tolerance for identities that hold exactly in exact arithmetic.
const IDENTITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Defect,
    Hyperexpansive,
    TwoIsometry,
    Wandering,
    KlIdentity,
    Roundtrip,
    BetaRecursion,
    MultIdentity,
    GramStructure,
    Kernel,
    Gleason,
    Potential,
    IntroAnchor,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::GramStructure,
        Check::Defect,
        Check::Hyperexpansive,
        Check::TwoIsometry,
        Check::Wandering,
        Check::KlIdentity,
        Check::BetaRecursion,
        Check::MultIdentity,
        Check::Roundtrip,
        Check::Kernel,
        Check::Gleason,
        Check::Potential,
        Check::IntroAnchor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Defect => "defect",
            Check::Hyperexpansive => "hyperexpansive",
            Check::TwoIsometry => "two-isometry",
            Check::Wandering => "wandering",
            Check::KlIdentity => "kl-identity",
            Check::Roundtrip => "roundtrip",
            Check::BetaRecursion => "beta-recursion",
            Check::MultIdentity => "mult-identity",
            Check::GramStructure => "gram-structure",
            Check::Kernel => "kernel",
            Check::Gleason => "gleason",
            Check::Potential => "potential",
            Check::IntroAnchor => "intro-anchor",
        }
    }

    /// The mathematical statement the check verifies.
    pub fn claim(self) -> &'static str {
        match self {
            Check::Defect => "beta_alpha(M_z) = 0 whenever alpha_1 >= 1 and alpha_2 >= 1; in particular the defect operator vanishes",
            Check::Hyperexpansive => "beta_alpha(M_z) <= 0 for alpha = (n,0), (0,n), and its form equals minus the (1-|z|^2)^(n-1)-weighted moment integral",
            Check::TwoIsometry => "M_z is a toral 2-isometry iff mu_1 and mu_2 live on the unit circle; an interior mass m at a gives <beta_(2,0) 1, 1> = -m(1-|a|^2)",
            Check::Wandering => "the constants form a wandering subspace: <z1^a, z1^b z2^c> = 0 for c != 0 and <z2^a, z1^b z2^c> = 0 for b != 0",
            Check::KlIdentity => "||z1^k z2^l f||^2 - ||z1^k f||^2 - ||z2^l f||^2 + ||f||^2 = 0 for all k, l",
            Check::Roundtrip => "the axis blocks of a D(mu_1, mu_2) Gram matrix determine the moments of mu_1, mu_2, and the moments determine the full Gram matrix",
            Check::BetaRecursion => "beta_(alpha + e_j) = beta_alpha - M_zj^* beta_alpha M_zj",
            Check::MultIdentity => "||z_j p||^2 - ||p||^2 equals the mu_j-integral of the slice norms of p",
            Check::GramStructure => "monomial Gram matrices are Hermitian, bounded below by the identity, and follow the zero/diagonal pattern; circle/circle gives diagonal 1+m+n",
            Check::Kernel => "the truncated reproducing kernel satisfies k(., 0) = 1 and reproduces polynomials in its span",
            Check::Gleason => "f - f(lambda e_j) = (z_j - lambda) f_2 + z_other f_1 with explicit polynomial f_1, f_2, and division by z_j - lambda succeeds exactly when the slice vanishes",
            Check::Potential => "the moment formula for the Dirichlet integral agrees with the area integral of |g'|^2 against the superharmonic potential",
            Check::IntroAnchor => "the four-norm defect expression of the introductory weighted-shift example equals -1/4",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check '{s}'")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub alpha_max: usize,
    pub degree: usize,
    /// Overrides every tolerance of the check when set.
    pub tol: Option<f64>,
    /// Number of random pairs when no explicit pair is given.
    pub pairs: usize,
    /// Checks run on this pair instead of the seeded corpus.
    pub measures: Option<(MeasureSpec, MeasureSpec)>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            alpha_max: DEFAULT_ALPHA_MAX,
            degree: DEFAULT_DEGREE,
            tol: None,
            pairs: DEFAULT_PAIRS,
            measures: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameters {
    pub seed: u64,
    pub alpha_max: usize,
    pub degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub source: &'static str,
    pub cases: usize,
}

/// Residual statistics for one labelled family of quantities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualStat {
    pub label: String,
    pub count: usize,
    pub max: f64,
    pub mean: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Eigenvalue statistics for one labelled family of forms that must be
/// negative semidefinite. `max_scaled` is the largest ratio
/// `max_eigenvalue / max(1, ‖F‖_F)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenStat {
    pub label: String,
    pub count: usize,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub max_scaled: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub check: Check,
    pub claim: &'static str,
    pub inputs: BTreeMap<String, String>,
    pub parameters: Parameters,
    pub residuals: Vec<ResidualStat>,
    pub min_eigenvalues: Vec<EigenStat>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl Report {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.max).fold(0.0, f64::max)
    }

    pub fn residual(&self, label: &str) -> Option<&ResidualStat> {
        self.residuals.iter().find(|r| r.label == label)
    }
}

/// `(min eigenvalue, max eigenvalue, Frobenius norm)` of one form.
type Spectrum = (f64, f64, f64);

/// Accumulates labelled residuals in insertion order, each label with its
/// values and tolerance.
struct Collector {
    tol_override: Option<f64>,
    residuals: Vec<(String, Vec<f64>, f64)>,
    eigen: Vec<(String, Vec<Spectrum>, f64)>,
}

impl Collector {
    fn new(tol_override: Option<f64>) -> Self {
        Self {
            tol_override,
            residuals: Vec::new(),
            eigen: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, value: f64, tol: f64) {
        let label = label.into();
        let tol = self.tol_override.unwrap_or(tol);
        match self.residuals.iter_mut().find(|(l, ..)| *l == label) {
            Some((_, values, _)) => values.push(value),
            None => self.residuals.push((label, vec![value], tol)),
        }
    }

    fn push_nsd(&mut self, label: impl Into<String>, form: &DefectForm) {
        let tol = self.tol_override.unwrap_or(NSD_TOL);
        let c = check_nsd(form, tol);
        let label = label.into();
        let entry = (c.min_eigenvalue, c.max_eigenvalue, c.frobenius);
        match self.eigen.iter_mut().find(|(l, ..)| *l == label) {
            Some((_, values, _)) => values.push(entry),
            None => self.eigen.push((label, vec![entry], tol)),
        }
    }

    fn finish(self, check: Check, parameters: Parameters) -> Report {
        let residuals: Vec<ResidualStat> = self
            .residuals
            .into_iter()
            .map(|(label, values, tol)| {
                let max = values.iter().copied().fold(0.0, f64::max);
                let mean = values.iter().sum::<f64>() / values.len() as f64;
                // NaN fails the comparison and therefore the check.
                let pass = values.iter().all(|v| *v <= tol);
                ResidualStat {
                    label,
                    count: values.len(),
                    max,
                    mean,
                    tol,
                    pass,
                }
            })
            .collect();
        let min_eigenvalues: Vec<EigenStat> = self
            .eigen
            .into_iter()
            .map(|(label, values, tol)| {
                let min_eigenvalue = values.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
                let max_eigenvalue = values.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
                let max_scaled = values
                    .iter()
                    .map(|v| v.1 / v.2.max(1.0))
                    .fold(f64::NEG_INFINITY, f64::max);
                EigenStat {
                    label,
                    count: values.len(),
                    min_eigenvalue,
                    max_eigenvalue,
                    max_scaled,
                    tol,
                    pass: max_scaled <= tol,
                }
            })
            .collect();
        let pass = residuals.iter().all(|r| r.pass) && min_eigenvalues.iter().all(|e| e.pass);
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            check,
            claim: check.claim(),
            inputs: BTreeMap::new(),
            parameters,
            residuals,
            min_eigenvalues,
            pass,
            wall_time_s: None,
        }
    }
}

fn pairs_for(config: &VerifyConfig) -> (Vec<(MeasureSpec, MeasureSpec)>, &'static str) {
    match &config.measures {
        Some(pair) => (vec![pair.clone()], "input"),
        None => (corpus::mixture_pairs(config.seed, config.pairs), "corpus"),
    }
}

fn params(config: &VerifyConfig, source: &'static str, cases: usize) -> Parameters {
    Parameters {
        seed: config.seed,
        alpha_max: config.alpha_max,
        degree: config.degree,
        tol: config.tol,
        source,
        cases,
    }
}

fn alpha_label(alpha: (usize, usize)) -> String {
    format!("alpha=({},{})", alpha.0, alpha.1)
}

/// Runs one check.
pub fn run(check: Check, config: &VerifyConfig) -> Result<Report> {
    if config.alpha_max == 0 {
        return Err(Error::InvalidArgument(
            "alpha-max must be at least 1".into(),
        ));
    }
    if let Some(t) = config.tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::InvalidArgument(
                "tol must be positive and finite".into(),
            ));
        }
    }
    match check {
        Check::Defect => defect(config),
        Check::Hyperexpansive => hyperexpansive(config),
        Check::TwoIsometry => two_isometry(config),
        Check::Wandering => wandering(config),
        Check::KlIdentity => kl_identity(config),
        Check::Roundtrip => roundtrip(config),
        Check::BetaRecursion => beta_recursion(config),
        Check::MultIdentity => mult_identity(config),
        Check::GramStructure => gram_structure(config),
        Check::Kernel => kernel(config),
        Check::Gleason => gleason(config),
        Check::Potential => potential(config),
        Check::IntroAnchor => intro_anchor(config),
    }
}

/// Runs every check in [`Check::ALL`] order.
pub fn run_all(config: &VerifyConfig) -> Result<Vec<Report>> {
    Check::ALL.iter().map(|&c| run(c, config)).collect()
}

fn defect(config: &VerifyConfig) -> Result<Report> {
    let (pairs, source) = pairs_for(config);
    let d = config.degree;
    let mut col = Collector::new(config.tol);
    for (s1, s2) in &pairs {
        for a1 in 1..config.alpha_max {
            for a2 in 1..=(config.alpha_max - a1) {
                let f = defect_form(s1, s2, (a1, a2), d, d)?;
                col.push(alpha_label((a1, a2)), f.max_abs_entry(), IDENTITY_TOL);
            }
        }
    }
    Ok(col.finish(Check::Defect, params(config, source, pairs.len())))
}

fn hyperexpansive(config: &VerifyConfig) -> Result<Report> {
    let (pairs, source) = pairs_for(config);
    let d = config.degree;
    let mut col = Collector::new(config.tol);
    let monomials: Vec<(usize, usize)> =
        (0..=d).flat_map(|m| (0..=d).map(move |n| (m, n))).collect();
    for (s1, s2) in &pairs {
        for n in 1..=config.alpha_max {
            for (axis, alpha) in [(Axis::One, (n, 0)), (Axis::Two, (0, n))] {
                let form = defect_form(s1, s2, alpha, d, d)?;
                let label = alpha_label(alpha);
                col.push_nsd(label.clone(), &form);
                let mut worst: f64 = 0.0;
                for &u in &monomials {
                    for &v in &monomials {
                        let side = moment_side_form(
                            s1,
                            s2,
                            axis,
                            n,
                            &Poly2::monomial(u.0, u.1),
                            &Poly2::monomial(v.0, v.1),
                        )?;
                        worst = worst.max((form.get(u, v) - side).norm());
                    }
                }
                col.push(format!("moment-side {label}"), worst, IDENTITY_TOL);
            }
        }
    }
    Ok(col.finish(Check::Hyperexpansive, params(config, source, pairs.len())))
}

/// `∫ (1 - |ζ|²) dμ`.
fn interior_weight(spec: &MeasureSpec) -> f64 {
    spec.weighted_moment(0, 0, 1).re
}

fn two_isometry(config: &VerifyConfig) -> Result<Report> {
    let d = config.degree;
    let mut col = Collector::new(config.tol);
    let alphas = [(2, 0), (0, 2), (1, 1)];
    let cases;
    let source;
    match &config.measures {
        Some((s1, s2)) => {
            source = "input";
            cases = 1;
            let boundary = s1.interior().is_zero() && s2.interior().is_zero();
            let mut forms_zero = true;
            for alpha in alphas {
                let f = defect_form(s1, s2, alpha, d, d)?;
                forms_zero &= f.max_abs_entry() <= IDENTITY_TOL;
                if boundary {
                    col.push(alpha_label(alpha), f.max_abs_entry(), IDENTITY_TOL);
                }
            }
            // The pair is a 2-isometry exactly when both measures live on the circle.
            col.push(
                "equivalence",
                if forms_zero == boundary { 0.0 } else { 1.0 },
                0.0,
            );
            for (axis, alpha, spec) in [(Axis::One, (2, 0), s1), (Axis::Two, (0, 2), s2)] {
                let f = defect_form(s1, s2, alpha, 0, 0)?;
                let want = -interior_weight(spec);
                col.push(
                    format!("interior-weight axis {}", axis.index()),
                    (f.get((0, 0), (0, 0)).re - want).abs(),
                    1e-12,
                );
            }
        }
        None => {
            source = "corpus";
            let pairs = corpus::boundary_pairs(config.seed, config.pairs);
            cases = pairs.len();
            let mut rng = corpus::rng(config.seed ^ 0x2150);
            for (s1, s2) in &pairs {
                for alpha in alphas {
                    let f = defect_form(s1, s2, alpha, d, d)?;
                    col.push(alpha_label(alpha), f.max_abs_entry(), IDENTITY_TOL);
                }
                let a = corpus::random_point(&mut rng, corpus::MAX_ATOM_RADIUS);
                let m = rng.random_range(0.05..2.0);
                let mut shifted = s1.clone();
                shifted.components.push(MeasureComponent::atom(a, m));
                let f = defect_form(&shifted, s2, (2, 0), 0, 0)?;
                let want = -m * (1.0 - a.norm_sqr());
                col.push(
                    "interior-atom shift",
                    (f.get((0, 0), (0, 0)).re - want).abs(),
                    1e-12,
                );
            }
        }
    }
    Ok(col.finish(Check::TwoIsometry, params(config, source, cases)))
}

fn wandering(config: &VerifyConfig) -> Result<Report> {
    let (pairs, source) = pairs_for(config);
    let d = config.degree;
    let mut col = Collector::new(config.tol);
    for (s1, s2) in &pairs {
        let g = gram2(s1, s2, d, d);
        col.push("wandering", wandering_residual_with(&g, d, d), 1e-12);
    }
    Ok(col.finish(Check::Wandering, params(config, source, pairs.len())))
}

fn kl_identity(config: &VerifyConfig) -> Result<Report> {
    let (pairs, source) = pairs_for(config);
    let d = config.degree;
    let k_max = config.alpha_max;
    let mut col = Collector::new(config.tol);
    let mut rng = corpus::rng(config.seed ^ 0x6b6c);
    for (s1, s2) in &pairs {
        let g = gram2(s1, s2, d + k_max, d + k_max);
        let f = corpus::random_poly2(&mut rng, d, d);
        let scale = norm2_sq(&g, &f.shift(k_max, k_max))?.max(1.0);
        for k in 0..=k_max {
            for l in 0..=k_max {
                let r = kl_identity_residual_with(&g, k, l, &f)?;
                col.push("kl-identity", r, IDENTITY_TOL);
                col.push("kl-identity relative", r / scale, 1e-13);
            }
        }
    }
    Ok(col.finish(Check::KlIdentity, params(config, source, pairs.len())))
}

fn max_moment_diff(a: &MeasureSpec, b: &MeasureSpec, order: usize) -> f64 {
    a.moment_table(order, order)
        .max_abs_diff(&b.moment_table(order, order))
}

fn roundtrip(config: &VerifyConfig) -> Result<Report> {
    let (pairs, source) = pairs_for(config);
    let d = config.degree;
    let mut col = Collector::new(config.tol);
    let grams: Vec<_> = pairs
        .iter()
        .map(|(s1, s2)| gram2(s1, s2, d + 1, d + 1))
        .collect();
    for ((s1, s2), g) in pairs.iter().zip(&grams) {
        let rt = model_roundtrip(g)?;
        col.push("rebuild", rt.max_residual, IDENTITY_TOL);
        col.push(
            "moments mu1",
            rt.moments1.max_abs_diff(&s1.moment_table(d, d)),
            IDENTITY_TOL,
        );
        col.push(
            "moments mu2",
            rt.moments2.max_abs_diff(&s2.moment_table(d, d)),
            IDENTITY_TOL,
        );

        let axis = gram1(s1, d + 1);
        let again = Gram1::from_moments(&recover_moments1(&axis)?, d + 1)?;
        col.push(
            "gram1 identity",
            crate::linalg::max_abs_diff(axis.matrix(), again.matrix()),
            1e-12,
        );
    }
    // A moment difference δ forces a Gram difference of at least δ/2, since
    // each moment is the difference of two Gram entries.
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let delta = max_moment_diff(&pairs[i].0, &pairs[j].0, d).max(max_moment_diff(
                &pairs[i].1,
                &pairs[j].1,
                d,
            ));
            let gap = grams[i].max_abs_diff(&grams[j]);
            col.push("separation shortfall", (delta / 2.0 - gap).max(0.0), 0.0);
        }
    }
    Ok(col.finish(Check::Roundtrip, params(config, source, pairs.len())))
}

fn beta_recursion(config: &VerifyConfig) -> Result<Report> {
    let (pairs, source) = pairs_for(config);
    let d = config.degree;
    let mut col = Collector::new(config.tol);
    for (s1, s2) in &pairs {
        for a1 in 0..config.alpha_max {
            for a2 in 0..(config.alpha_max - a1) {
                if (a1, a2) == (0, 0) {
                    continue;
                }
                for axis in [Axis::One, Axis::Two] {
                    let r = beta_recursion_residual(s1, s2, (a1, a2), axis, d, d)?;
                    col.push(
                        format!("{} axis {}", alpha_label((a1, a2)), axis.index()),
                        r,
                        IDENTITY_TOL,
                    );
                }
            }
        }
    }
    Ok(col.finish(Check::BetaRecursion, params(config, source, pairs.len())))
}

fn mult_identity(config: &VerifyConfig) -> Result<Report> {
    let (pairs, source) = pairs_for(config);
    let d = config.degree;
    let mut col = Collector::new(config.tol);
    let mut rng = corpus::rng(config.seed ^ 0x6d75);
    for (s1, s2) in &pairs {
        let g = gram2(s1, s2, d + 1, d + 1);
        let p = corpus::random_poly2(&mut rng, d, d);
        for axis in [Axis::One, Axis::Two] {
            let r = mult_identity_residual_with(&g, s1, s2, &p, axis)?;
            col.push(format!("axis {}", axis.index()), r.abs(), IDENTITY_TOL);
            let grow = norm2_sq(&g, &p)? - norm2_sq(&g, &p.shift_axis(axis, 1))?;
            col.push(
                format!("expansive axis {}", axis.index()),
                grow.max(0.0),
                IDENTITY_TOL,
            );
        }
    }
    Ok(col.finish(Check::MultIdentity, params(config, source, pairs.len())))
}

fn gram_structure(config: &VerifyConfig) -> Result<Report> {
    let (pairs, source) = pairs_for(config);
    let mut col = Collector::new(config.tol);
    let circle = MeasureSpec::new(vec![MeasureComponent::circle_uniform(1.0)])?;
    let anchor_order = 8;
    let g = gram2(&circle, &circle, anchor_order, anchor_order);
    let mut worst: f64 = 0.0;
    for m in 0..=anchor_order {
        for n in 0..=anchor_order {
            for p in 0..=anchor_order {
                for q in 0..=anchor_order {
                    let want = if (m, n) == (p, q) {
                        (1 + m + n) as f64
                    } else {
                        0.0
                    };
                    worst = worst.max((g.get((m, n), (p, q)) - want).norm());
                }
            }
        }
    }
    col.push("circle anchor", worst, 1e-12);

    let d = config.degree;
    for (s1, s2) in &pairs {
        let g = gram2(s1, s2, d, d);
        let herm = crate::linalg::max_abs_diff(g.matrix(), &g.matrix().adjoint());
        col.push("hermitian", herm, 0.0);
        col.push("four-case structure", g.structure_defect(), 1e-12);
        // ‖p‖² >= ‖p‖²_{H²}: the Gram matrix dominates the identity.
        col.push(
            "identity lower bound",
            (1.0 - g.min_eigenvalue()).max(0.0),
            1e-10,
        );
    }
    Ok(col.finish(Check::GramStructure, params(config, source, pairs.len())))
}

fn kernel(config: &VerifyConfig) -> Result<Report> {
    let (pairs, source) = pairs_for(config);
    let mut col = Collector::new(config.tol);
    let mut rng = corpus::rng(config.seed ^ 0x6b65);
    let trunc = 10;
    let zero = (Complex64::from(0.0), Complex64::from(0.0));

    let circle = MeasureSpec::new(vec![MeasureComponent::circle_uniform(1.0)])?;
    let k = TruncatedKernel::new(gram2(&circle, &circle, trunc, trunc))?;
    let half = (Complex64::from(0.5), Complex64::from(0.0));
    let series: f64 = (0..=trunc)
        .map(|m| 0.25f64.powi(m as i32) / (1.0 + m as f64))
        .sum();
    col.push(
        "circle diagonal series",
        (k.eval(half, half) - series).norm(),
        1e-12,
    );

    for (s1, s2) in &pairs {
        let k = TruncatedKernel::new(gram2(s1, s2, trunc, trunc))?;
        let z = (
            corpus::random_point(&mut rng, 0.9),
            corpus::random_point(&mut rng, 0.9),
        );
        col.push("k(z,0) = 1", (k.eval(z, zero) - 1.0).norm(), 1e-12);
        let w = (
            corpus::random_point(&mut rng, 0.7),
            corpus::random_point(&mut rng, 0.7),
        );
        let section = k.section(w);
        let mut worst: f64 = 0.0;
        for m in 0..=trunc {
            for n in 0..=trunc {
                let p = Poly2::monomial(m, n);
                let got = crate::space2d::inner2(k.gram(), &p, &section)?;
                worst = worst.max((got - p.eval(w.0, w.1)).norm());
            }
        }
        col.push("reproducing", worst, 1e-8);
    }
    Ok(col.finish(Check::Kernel, params(config, source, pairs.len())))
}

fn gleason(config: &VerifyConfig) -> Result<Report> {
    let (pairs, source) = pairs_for(config);
    let mut col = Collector::new(config.tol);
    let mut rng = corpus::rng(config.seed ^ 0x676c);
    let instances = 100;
    for i in 0..instances {
        let d1 = rng.random_range(0..=8);
        let d2 = rng.random_range(0..=8);
        let f = corpus::random_poly2(&mut rng, d1, d2);
        let lambda = corpus::random_point(&mut rng, 0.9);
        let axis = if rng.random_bool(0.5) {
            Axis::One
        } else {
            Axis::Two
        };
        let s = gleason_solve(&f, lambda, axis)?;
        col.push("gleason reconstruction", s.residual(&f), 1e-13);

        let factor = crate::gleason::linear_factor(axis, lambda);
        let q = divide_on_slice(&f.mul(&factor), lambda, axis)?;
        col.push("division reconstruction", q.sub(&f).max_abs_coeff(), 1e-13);

        // f(λ, ·) is generically nonzero, so division must refuse.
        let refused = match divide_on_slice(&f.add(&Poly2::one()), lambda, axis) {
            Err(Error::SliceNotZero { .. }) => true,
            Ok(_) => f.add(&Poly2::one()).restrict(axis, lambda).is_zero(),
            Err(e) => return Err(e),
        };
        col.push("slice hypothesis", if refused { 0.0 } else { 1.0 }, 0.0);

        let (s1, s2) = &pairs[i % pairs.len()];
        let n = gleason_norms(s1, s2, &s)?;
        col.push("norm bound", if n.bound_holds { 0.0 } else { 1.0 }, 0.0);
    }
    Ok(col.finish(Check::Gleason, params(config, source, instances)))
}

fn potential(config: &VerifyConfig) -> Result<Report> {
    let mut col = Collector::new(config.tol);
    let grid = QuadratureGrid::default();
    let mut rng = corpus::rng(config.seed ^ 0x706f);
    let (specs, source) = match &config.measures {
        Some((s1, s2)) => (vec![s1.clone(), s2.clone()], "input"),
        None => (corpus::measure_corpus(config.seed, 3), "corpus"),
    };
    let deg = config.degree;
    for spec in &specs {
        for _ in 0..2 {
            let g = Poly1::new(
                (0..=deg)
                    .map(|_| {
                        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                    })
                    .collect(),
            );
            let exact = dirichlet1(spec, &g);
            let quad = dirichlet_via_potential(spec, &g, &grid)?;
            let rel = (quad.value - exact).abs() / exact.abs().max(1e-300);
            col.push(
                "relative difference",
                if exact == 0.0 { quad.value.abs() } else { rel },
                1e-4,
            );
        }
    }
    Ok(col.finish(Check::Potential, params(config, source, specs.len())))
}

fn intro_anchor(config: &VerifyConfig) -> Result<Report> {
    let mut col = Collector::new(config.tol);
    let mut rng = corpus::rng(config.seed ^ 0x696e);
    for _ in 0..10 {
        let b1 = rng.random_range(0.0..10.0);
        let b2 = rng.random_range(0.0..10.0);
        let d = defect_from_norms(1.0, 1.0 + b1 + 0.5, 1.0 + b2 + 0.5, 1.0 + b1 + b2 + 0.75);
        col.push("defect + 1/4", (d + 0.25).abs(), 1e-12);
    }
    Ok(col.finish(Check::IntroAnchor, params(config, "corpus", 10)))
}
