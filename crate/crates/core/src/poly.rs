//! Complex polynomials in one and two variables.
//!
//! Hardy norms are coefficient sums of squares; the other operations are the
//! exact coefficient manipulations used by the Dirichlet integrals and the
//! Gleason solvers (synthetic division, dilation, slicing).

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinate axis of the bidisc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    One,
    Two,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::One => Axis::Two,
            Axis::Two => Axis::One,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Axis::One => 1,
            Axis::Two => 2,
        }
    }

    /// Unit step `ε_axis`.
    pub fn unit(self) -> (usize, usize) {
        match self {
            Axis::One => (1, 0),
            Axis::Two => (0, 1),
        }
    }
}

impl TryFrom<u8> for Axis {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Axis::One),
            2 => Ok(Axis::Two),
            other => Err(Error::InvalidArgument(format!(
                "axis must be 1 or 2, got {other}"
            ))),
        }
    }
}

/// Polynomial `a_0 + a_1 z + ... + a_d z^d`; trailing zeros are trimmed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly1 {
    coeffs: Vec<Complex64>,
}

impl Poly1 {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::from(0.0)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Complex64::from(0.0); k + 1];
        coeffs[k] = Complex64::from(1.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::from(0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly1 {
        Poly1::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn hardy_norm_sq(&self) -> f64 {
        self.coeffs.iter().map(Complex64::norm_sqr).sum()
    }

    /// `(g - g(ζ)) / (z - ζ)` by synthetic division.
    pub fn difference_quotient(&self, zeta: Complex64) -> Poly1 {
        self.divide_linear(zeta).0
    }

    /// Divides by `z - ζ`, returning quotient and remainder `g(ζ)`.
    pub fn divide_linear(&self, zeta: Complex64) -> (Poly1, Complex64) {
        let Some(d) = self.degree() else {
            return (Poly1::zero(), Complex64::from(0.0));
        };
        let mut q = vec![Complex64::from(0.0); d];
        let mut carry = Complex64::from(0.0);
        for k in (0..=d).rev() {
            carry = carry * zeta + self.coeffs[k];
            if k > 0 {
                q[k - 1] = carry;
            }
        }
        (Poly1::new(q), carry)
    }

    pub fn scale(&self, s: Complex64) -> Poly1 {
        Poly1::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly1::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly1) -> Poly1 {
        self.add(&other.scale(Complex64::from(-1.0)))
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        if self.is_zero() || other.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![Complex64::from(0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, &x) in self.coeffs.iter().enumerate() {
            for (b, &y) in other.coeffs.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        Poly1::new(out)
    }

    /// `g(Rz)`.
    pub fn dilate(&self, r: f64) -> Poly1 {
        let mut scale = 1.0;
        Poly1::new(
            self.coeffs
                .iter()
                .map(|&c| {
                    let out = c * scale;
                    scale *= r;
                    out
                })
                .collect(),
        )
    }

    /// Embeds as a polynomial in `z_axis`.
    pub fn to_poly2(&self, axis: Axis) -> Poly2 {
        Poly2::from_terms(self.coeffs.iter().enumerate().map(|(k, &c)| match axis {
            Axis::One => ((k, 0), c),
            Axis::Two => ((0, k), c),
        }))
    }
}

/// Polynomial `Σ c_{m,n} z₁^m z₂^n`; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Poly2 {
    terms: BTreeMap<(usize, usize), Complex64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn monomial(m: usize, n: usize) -> Self {
        Self::from_terms([((m, n), Complex64::from(1.0))])
    }

    /// Sums repeated indices; drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), Complex64)>) -> Self {
        let mut map = BTreeMap::new();
        for (key, c) in terms {
            *map.entry(key).or_insert(Complex64::from(0.0)) += c;
        }
        map.retain(|_, c| *c != Complex64::from(0.0));
        Self { terms: map }
    }

    /// Terms in lexicographic `(m, n)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), Complex64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, m: usize, n: usize) -> Complex64 {
        self.terms.get(&(m, n)).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(deg₁, deg₂)`; `(0, 0)` for the zero polynomial.
    pub fn degrees(&self) -> (usize, usize) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), &(m, n)| (a.max(m), b.max(n)))
    }

    pub fn degree_in(&self, axis: Axis) -> usize {
        let (d1, d2) = self.degrees();
        match axis {
            Axis::One => d1,
            Axis::Two => d2,
        }
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        self.terms()
            .map(|((m, n), c)| c * z1.powu(m as u32) * z2.powu(n as u32))
            .sum()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `H²(𝔻²)` norm squared: the sum of squared coefficient moduli.
    pub fn hardy_norm_sq(&self) -> f64 {
        self.terms.values().map(Complex64::norm_sqr).sum()
    }

    pub fn scale(&self, s: Complex64) -> Poly2 {
        Poly2::from_terms(self.terms().map(|(k, c)| (k, c * s)))
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        Poly2::from_terms(self.terms().chain(other.terms()))
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        Poly2::from_terms(self.terms().chain(other.terms().map(|(k, c)| (k, -c))))
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        Poly2::from_terms(self.terms().flat_map(|((m, n), a)| {
            other
                .terms()
                .map(move |((p, q), b)| ((m + p, n + q), a * b))
        }))
    }

    /// Multiplies by `z₁^a z₂^b`.
    pub fn shift(&self, a: usize, b: usize) -> Poly2 {
        Poly2 {
            terms: self
                .terms()
                .map(|((m, n), c)| ((m + a, n + b), c))
                .collect(),
        }
    }

    /// Multiplies by `z_axis^k`.
    pub fn shift_axis(&self, axis: Axis, k: usize) -> Poly2 {
        match axis {
            Axis::One => self.shift(k, 0),
            Axis::Two => self.shift(0, k),
        }
    }

    /// `f_R(z) = f(R₁ z₁, R₂ z₂)`.
    pub fn dilate(&self, r1: f64, r2: f64) -> Poly2 {
        Poly2::from_terms(
            self.terms()
                .map(|((m, n), c)| ((m, n), c * r1.powi(m as i32) * r2.powi(n as i32))),
        )
    }

    /// Axis 2 gives `[p_0, p_1, ...]` with `f = Σ_n p_n(z₁) z₂^n`; axis 1
    /// gives `[q_0, q_1, ...]` with `f = Σ_m q_m(z₂) z₁^m`. The zero
    /// polynomial gives an empty list.
    pub fn slice_decompose(&self, axis: Axis) -> Vec<Poly1> {
        if self.is_zero() {
            return Vec::new();
        }
        let len = self.degree_in(axis) + 1;
        let inner = self.degree_in(axis.other()) + 1;
        let mut slices = vec![vec![Complex64::from(0.0); inner]; len];
        for ((m, n), c) in self.terms() {
            match axis {
                Axis::Two => slices[n][m] = c,
                Axis::One => slices[m][n] = c,
            }
        }
        slices.into_iter().map(Poly1::new).collect()
    }

    /// Inverse of [`Poly2::slice_decompose`].
    pub fn from_slices(slices: &[Poly1], axis: Axis) -> Poly2 {
        Poly2::from_terms(slices.iter().enumerate().flat_map(|(outer, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(k, &c)| match axis {
                    Axis::Two => ((k, outer), c),
                    Axis::One => ((outer, k), c),
                })
        }))
    }

    /// `f(λ, ·)` (axis 1) or `f(·, λ)` (axis 2), as a polynomial in the
    /// remaining variable.
    pub fn restrict(&self, axis: Axis, lambda: Complex64) -> Poly1 {
        let slices = self.slice_decompose(axis);
        let len = self.degree_in(axis.other()) + 1;
        let mut out = vec![Complex64::from(0.0); if self.is_zero() { 0 } else { len }];
        let mut power = Complex64::from(1.0);
        for s in &slices {
            for (k, &c) in s.coeffs().iter().enumerate() {
                out[k] += c * power;
            }
            power *= lambda;
        }
        Poly1::new(out)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PolyFile = serde_json::from_str(text)?;
        for t in &file.terms {
            if !t.re.is_finite() || !t.im.is_finite() {
                return Err(Error::InvalidPolynomial(format!(
                    "coefficient of ({}, {}) is not finite",
                    t.m, t.n
                )));
            }
        }
        Ok(Poly2::from_terms(
            file.terms
                .into_iter()
                .map(|t| ((t.m, t.n), Complex64::new(t.re, t.im))),
        ))
    }

    pub fn to_file(&self) -> PolyFile {
        PolyFile {
            terms: self
                .terms()
                .map(|((m, n), c)| PolyTerm {
                    m,
                    n,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

/// On-disk polynomial format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyFile {
    pub terms: Vec<PolyTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTerm {
    pub m: usize,
    pub n: usize,
    pub re: f64,
    pub im: f64,
}
