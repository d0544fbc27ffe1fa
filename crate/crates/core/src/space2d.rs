//! The bidisc space `D(μ₁, μ₂)`.
//!
//! Monomials `z₁^m z₂^n` and `z₁^p z₂^q` are orthogonal unless `m = p` or
//! `n = q`; the surviving entries come from the one-variable Gram matrices:
//!
//! ```text
//! m = p, n ≠ q  →  ⟨z₂^n, z₂^q⟩_{D(μ₂)}
//! m ≠ p, n = q  →  ⟨z₁^m, z₁^p⟩_{D(μ₁)}
//! m = p, n = q  →  ‖z₁^m‖²_{D(μ₁)} + ‖z₂^n‖²_{D(μ₂)} - 1
//! ```

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, max_abs_diff, CMatrix};
use crate::measure::MeasureSpec;
use crate::poly::{Axis, Poly2};
use crate::potential::{self, QuadratureGrid};
use crate::space1d::{dirichlet1, gram1, Gram1};

/// `G[(m,n),(p,q)] = ⟨z₁^m z₂^n, z₁^p z₂^q⟩` over `0..=M × 0..=N`, flattened
/// row-major with index `m * (N + 1) + n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram2 {
    orders: (usize, usize),
    entries: CMatrix,
}

impl Gram2 {
    /// Four-case assembly from the axis Gram matrices.
    pub fn from_axes(g1: &Gram1, g2: &Gram1) -> Self {
        let orders = (g1.order(), g2.order());
        let dim = (orders.0 + 1) * (orders.1 + 1);
        let mut entries = DMatrix::from_element(dim, dim, Complex64::from(0.0));
        for m in 0..=orders.0 {
            for n in 0..=orders.1 {
                let u = m * (orders.1 + 1) + n;
                for p in 0..=orders.0 {
                    for q in 0..=orders.1 {
                        let v = p * (orders.1 + 1) + q;
                        entries[(u, v)] = match (m == p, n == q) {
                            (false, false) => Complex64::from(0.0),
                            (true, false) => g2.get(n, q),
                            (false, true) => g1.get(m, p),
                            (true, true) => g1.get(m, m) + g2.get(n, n) - 1.0,
                        };
                    }
                }
            }
        }
        Self { orders, entries }
    }

    /// Wraps an arbitrary matrix laid out over the `(M, N)` rectangle.
    pub fn from_matrix(orders: (usize, usize), entries: CMatrix) -> Result<Self> {
        let dim = (orders.0 + 1) * (orders.1 + 1);
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::InvalidArgument(format!(
                "orders ({}, {}) need a {dim}x{dim} matrix, got {}x{}",
                orders.0,
                orders.1,
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self { orders, entries })
    }

    pub fn orders(&self) -> (usize, usize) {
        self.orders
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn index(&self, m: usize, n: usize) -> usize {
        m * (self.orders.1 + 1) + n
    }

    /// Inverse of [`Gram2::index`].
    pub fn exponents(&self, u: usize) -> (usize, usize) {
        (u / (self.orders.1 + 1), u % (self.orders.1 + 1))
    }

    pub fn get(&self, (m, n): (usize, usize), (p, q): (usize, usize)) -> Complex64 {
        self.entries[(self.index(m, n), self.index(p, q))]
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    /// `G[(m,0),(p,0)]`.
    pub fn axis_gram(&self, axis: Axis) -> Gram1 {
        let order = match axis {
            Axis::One => self.orders.0,
            Axis::Two => self.orders.1,
        };
        let sub = DMatrix::from_fn(order + 1, order + 1, |a, b| match axis {
            Axis::One => self.get((a, 0), (b, 0)),
            Axis::Two => self.get((0, a), (0, b)),
        });
        Gram1::from_matrix(sub).expect("axis Gram is square and nonempty")
    }

    pub fn fits(&self, p: &Poly2) -> bool {
        let (d1, d2) = p.degrees();
        d1 <= self.orders.0 && d2 <= self.orders.1
    }

    fn check_fits(&self, p: &Poly2) -> Result<()> {
        if self.fits(p) {
            return Ok(());
        }
        let (deg1, deg2) = p.degrees();
        Err(Error::DegreeOutOfRange {
            deg1,
            deg2,
            order1: self.orders.0,
            order2: self.orders.1,
        })
    }

    /// Largest deviation from the four-case pattern built from this matrix's
    /// own axis entries.
    pub fn structure_defect(&self) -> f64 {
        let rebuilt = Gram2::from_axes(&self.axis_gram(Axis::One), &self.axis_gram(Axis::Two));
        max_abs_diff(&rebuilt.entries, &self.entries)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.entries)[0]
    }

    pub fn max_abs_diff(&self, other: &Gram2) -> f64 {
        max_abs_diff(&self.entries, &other.entries)
    }
}

/// Exact Gram matrix of `D(μ₁, μ₂)` over the `(M, N)` rectangle.
pub fn gram2(spec1: &MeasureSpec, spec2: &MeasureSpec, m: usize, n: usize) -> Gram2 {
    Gram2::from_axes(&gram1(spec1, m), &gram1(spec2, n))
}

/// Sesquilinear extension `⟨p, q⟩ = Σ p_u conj(q_v) G[u,v]`.
pub fn inner2(gram: &Gram2, p: &Poly2, q: &Poly2) -> Result<Complex64> {
    gram.check_fits(p)?;
    gram.check_fits(q)?;
    let mut acc = Complex64::from(0.0);
    for ((m, n), a) in p.terms() {
        let u = gram.index(m, n);
        for ((r, s), b) in q.terms() {
            acc += a * b.conj() * gram.entries[(u, gram.index(r, s))];
        }
    }
    Ok(acc)
}

/// `‖p‖²` in `D(μ₁, μ₂)`.
pub fn norm2_sq(gram: &Gram2, p: &Poly2) -> Result<f64> {
    Ok(inner2(gram, p, p)?.re)
}

/// Dirichlet integral with its interior and boundary parts.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DirichletParts {
    pub total: f64,
    pub interior: f64,
    pub boundary: f64,
}

fn slice_dirichlet(spec1: &MeasureSpec, spec2: &MeasureSpec, f: &Poly2) -> f64 {
    let along1: f64 = f
        .slice_decompose(Axis::Two)
        .iter()
        .map(|p| dirichlet1(spec1, p))
        .sum();
    let along2: f64 = f
        .slice_decompose(Axis::One)
        .iter()
        .map(|q| dirichlet1(spec2, q))
        .sum();
    along1 + along2
}

/// `𝒟_{μ₁,μ₂}(f) = Σ_n 𝒟_{μ₁}(p_n) + Σ_m 𝒟_{μ₂}(q_m)` over the slices
/// `f = Σ_n p_n(z₁) z₂^n = Σ_m q_m(z₂) z₁^m`; the interior and boundary parts
/// use the restricted measures.
pub fn dirichlet2(spec1: &MeasureSpec, spec2: &MeasureSpec, f: &Poly2) -> DirichletParts {
    let (int1, bdy1) = spec1.split_interior_boundary();
    let (int2, bdy2) = spec2.split_interior_boundary();
    let interior = slice_dirichlet(&int1, &int2, f);
    let boundary = slice_dirichlet(&bdy1, &bdy2, f);
    DirichletParts {
        total: interior + boundary,
        interior,
        boundary,
    }
}

/// Area quadrature of the Dirichlet integral on the unit circle slices:
/// `∫_𝕋 ∫_𝔻 |∂₁f(w, e^{iθ})|² U_{μ₁}(w) dA(w) dθ/2π` plus the symmetric term.
/// The θ average is taken by an equispaced rule exact for the polynomial.
pub fn dirichlet2_quadrature(
    spec1: &MeasureSpec,
    spec2: &MeasureSpec,
    f: &Poly2,
    grid: &QuadratureGrid,
) -> Result<potential::QuadratureValue> {
    let mut out = potential::QuadratureValue::default();
    for axis in [Axis::One, Axis::Two] {
        let (spec, other_deg) = match axis {
            Axis::One => (spec1, f.degree_in(Axis::Two)),
            Axis::Two => (spec2, f.degree_in(Axis::One)),
        };
        // ∂_axis f as coefficient list, evaluated directly at each node.
        let deriv: Vec<((usize, usize), Complex64)> = f
            .terms()
            .filter_map(|((m, n), c)| match axis {
                Axis::One if m > 0 => Some(((m - 1, n), c * m as f64)),
                Axis::Two if n > 0 => Some(((m, n - 1), c * n as f64)),
                _ => None,
            })
            .collect();
        if deriv.is_empty() {
            continue;
        }
        let slices = 2 * other_deg + 1;
        let boundary_points: Vec<Complex64> = (0..slices)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / slices as f64))
            .collect();
        let integrand = |w: Complex64| -> f64 {
            let mut acc = 0.0;
            for &e in &boundary_points {
                let (z1, z2) = match axis {
                    Axis::One => (w, e),
                    Axis::Two => (e, w),
                };
                let v: Complex64 = deriv
                    .iter()
                    .map(|&((m, n), c)| c * z1.powu(m as u32) * z2.powu(n as u32))
                    .sum();
                acc += v.norm_sqr();
            }
            acc / slices as f64
        };
        let part = potential::potential_weighted_integral(spec, grid, &integrand)?;
        out.value += part.value;
        out.error_estimate += part.error_estimate;
    }
    Ok(out)
}

/// `∫_𝕋 ∫ (1 - |ζ|²)^weight f(ζ, e^{iθ}) conj(g(ζ, e^{iθ})) dμ(ζ) dθ/2π` for
/// axis 1 (the measure acts on `z₁`), and the mirrored integral for axis 2.
/// Exact through weighted moments.
pub fn slice_moment_form(
    spec: &MeasureSpec,
    f: &Poly2,
    g: &Poly2,
    axis: Axis,
    weight: usize,
) -> Complex64 {
    let mut acc = Complex64::from(0.0);
    for ((m, n), a) in f.terms() {
        for ((p, q), b) in g.terms() {
            let (same_free, fa, gc) = match axis {
                Axis::One => (n == q, m, p),
                Axis::Two => (m == p, n, q),
            };
            if same_free {
                acc += a * b.conj() * spec.weighted_moment(gc, fa, weight);
            }
        }
    }
    acc
}

/// `‖z_axis p‖² - ‖p‖² - ∫_𝕋∫_{closed disc} |p|² dμ_axis dθ/2π`.
pub fn mult_identity_residual(
    spec1: &MeasureSpec,
    spec2: &MeasureSpec,
    p: &Poly2,
    axis: Axis,
) -> Result<f64> {
    let (d1, d2) = p.degrees();
    let (e1, e2) = axis.unit();
    let gram = gram2(spec1, spec2, d1 + e1, d2 + e2);
    mult_identity_residual_with(&gram, spec1, spec2, p, axis)
}

/// As [`mult_identity_residual`] against a precomputed Gram matrix, which must
/// contain `z_axis p`.
pub fn mult_identity_residual_with(
    gram: &Gram2,
    spec1: &MeasureSpec,
    spec2: &MeasureSpec,
    p: &Poly2,
    axis: Axis,
) -> Result<f64> {
    let shifted = p.shift_axis(axis, 1);
    let lhs = norm2_sq(gram, &shifted)?;
    let base = norm2_sq(gram, p)?;
    let spec = match axis {
        Axis::One => spec1,
        Axis::Two => spec2,
    };
    let moment_side = slice_moment_form(spec, p, p, axis, 0).re;
    Ok(lhs - base - moment_side)
}
