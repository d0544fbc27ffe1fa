//! Division by `z_j - λ` and the Gleason problem at the axis points `(λ, 0)`
//! and `(0, λ)`.
//!
//! Gleason solutions are not unique; [`gleason_solve`] returns the canonical
//! one obtained by subtracting the slice at zero and then dividing the slice
//! by a linear factor.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::MeasureSpec;
use crate::poly::{Axis, Poly1, Poly2};
use crate::space2d::{gram2, norm2_sq};

/// Coefficient tolerance for the vanishing-slice hypothesis.
pub const SLICE_TOL: f64 = 1e-12;

fn check_disc(lambda: Complex64) -> Result<()> {
    if lambda.is_finite() && lambda.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisc {
            re: lambda.re,
            im: lambda.im,
        })
    }
}

/// `z₁ - λ` (axis 1) or `z₂ - λ` (axis 2).
pub fn linear_factor(axis: Axis, lambda: Complex64) -> Poly2 {
    let (a, b) = axis.unit();
    Poly2::from_terms([((a, b), Complex64::from(1.0)), ((0, 0), -lambda)])
}

/// Quotient `g` with `f = (z_axis - λ) g`, provided the slice `f(λ, ·)`
/// (axis 1) or `f(·, λ)` (axis 2) vanishes.
pub fn divide_on_slice(f: &Poly2, lambda: Complex64, axis: Axis) -> Result<Poly2> {
    check_disc(lambda)?;
    let slice = f.restrict(axis, lambda);
    let max_abs = slice.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    if max_abs > SLICE_TOL {
        return Err(Error::SliceNotZero { max_abs });
    }
    // Each coefficient polynomial in z_axis has a root at λ.
    let quotients: Vec<Poly1> = f
        .slice_decompose(axis.other())
        .iter()
        .map(|p| p.divide_linear(lambda).0)
        .collect();
    Ok(Poly2::from_slices(&quotients, axis.other()))
}

/// Canonical Gleason solution at `(λ, 0)` (axis 1) or `(0, λ)` (axis 2).
///
/// Axis 1: `f - f(λ, 0) = (z₁ - λ) f2 + z₂ f1` with `f2` a polynomial in `z₁`.
/// Axis 2: `f - f(0, λ) = (z₂ - λ) f2 + z₁ f1` with `f2` a polynomial in `z₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct GleasonSolution {
    pub axis: Axis,
    pub lambda: Complex64,
    /// `f(λ, 0)` or `f(0, λ)`.
    pub value: Complex64,
    pub f1: Poly2,
    pub f2: Poly2,
}

impl GleasonSolution {
    /// Largest coefficient of `f - value - (z_axis - λ) f2 - z_other f1`.
    pub fn residual(&self, f: &Poly2) -> f64 {
        let (a, b) = self.axis.other().unit();
        let rebuilt = linear_factor(self.axis, self.lambda)
            .mul(&self.f2)
            .add(&self.f1.shift(a, b))
            .add(&Poly2::from_terms([((0, 0), self.value)]));
        f.sub(&rebuilt).max_abs_coeff()
    }
}

pub fn gleason_solve(f: &Poly2, lambda: Complex64, axis: Axis) -> Result<GleasonSolution> {
    check_disc(lambda)?;
    let other = axis.other();
    // f = Σ_k s_k(z_axis) z_other^k
    let slices = f.slice_decompose(other);
    let base = slices.first().cloned().unwrap_or_else(Poly1::zero);
    let (quotient, value) = base.divide_linear(lambda);
    let f1 = if slices.len() > 1 {
        Poly2::from_slices(&slices[1..], other)
    } else {
        Poly2::zero()
    };
    Ok(GleasonSolution {
        axis,
        lambda,
        value,
        f1,
        f2: quotient.to_poly2(axis),
    })
}

/// Norms of a Gleason solution in `D(μ₁, μ₂)` together with the lower bound
/// `(1 - |λ|)² ‖f2‖² <= ‖(z_axis - λ) f2‖²` that follows from expansivity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GleasonNorms {
    pub f1_norm_sq: f64,
    pub f2_norm_sq: f64,
    pub factor_f2_norm_sq: f64,
    pub lower_bound: f64,
    pub bound_holds: bool,
}

pub fn gleason_norms(
    spec1: &MeasureSpec,
    spec2: &MeasureSpec,
    solution: &GleasonSolution,
) -> Result<GleasonNorms> {
    let factored = linear_factor(solution.axis, solution.lambda).mul(&solution.f2);
    let (d1a, d2a) = solution.f1.degrees();
    let (d1b, d2b) = factored.degrees();
    let gram = gram2(spec1, spec2, d1a.max(d1b), d2a.max(d2b));
    let f1_norm_sq = norm2_sq(&gram, &solution.f1)?;
    let f2_norm_sq = norm2_sq(&gram, &solution.f2)?;
    let factor_f2_norm_sq = norm2_sq(&gram, &factored)?;
    let lower_bound = (1.0 - solution.lambda.norm()).powi(2) * f2_norm_sq;
    Ok(GleasonNorms {
        f1_norm_sq,
        f2_norm_sq,
        factor_f2_norm_sq,
        lower_bound,
        bound_holds: lower_bound <= factor_f2_norm_sq * (1.0 + 1e-12) + 1e-14,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::measure::MeasureComponent;
    use proptest::prelude::*;

    fn r(x: f64) -> Complex64 {
        c64(x, 0.0)
    }

    #[test]
    fn division_examples() {
        let f = Poly2::from_terms([((1, 1), r(1.0)), ((0, 1), r(-0.5))]);
        let g = divide_on_slice(&f, r(0.5), Axis::One).unwrap();
        assert_eq!(g, Poly2::monomial(0, 1));

        let f = Poly2::from_terms([((2, 1), r(1.0)), ((0, 1), r(-0.25))]);
        let g = divide_on_slice(&f, r(0.5), Axis::One).unwrap();
        let want = Poly2::from_terms([((1, 1), r(1.0)), ((0, 1), r(0.5))]);
        assert!(g.sub(&want).max_abs_coeff() <= 1e-15);

        let err = divide_on_slice(&Poly2::monomial(1, 0), r(0.5), Axis::One).unwrap_err();
        assert!(matches!(err, Error::SliceNotZero { max_abs } if (max_abs - 0.5).abs() < 1e-15));
    }

    #[test]
    fn division_along_axis_two() {
        let f = Poly2::from_terms([((3, 2), c64(0.0, 1.0)), ((3, 0), c64(0.0, 0.09))]);
        let lambda = c64(0.0, 0.3);
        let g = divide_on_slice(&f, lambda, Axis::Two).unwrap();
        let back = linear_factor(Axis::Two, lambda).mul(&g);
        assert!(back.sub(&f).max_abs_coeff() <= 1e-15);
        assert!(divide_on_slice(&f, r(1.0), Axis::Two).is_err());
    }

    #[test]
    fn gleason_examples() {
        let f = Poly2::from_terms([((2, 1), r(1.0)), ((1, 0), r(1.0))]);
        let s = gleason_solve(&f, r(0.5), Axis::One).unwrap();
        assert_eq!(s.f1, Poly2::monomial(2, 0));
        assert_eq!(s.f2, Poly2::one());
        assert_eq!(s.value, r(0.5));
        assert_eq!(s.residual(&f), 0.0);

        let c = Poly2::from_terms([((0, 0), c64(2.0, -1.0))]);
        let s = gleason_solve(&c, r(0.3), Axis::Two).unwrap();
        assert!(s.f1.is_zero() && s.f2.is_zero());
        assert_eq!(s.value, c64(2.0, -1.0));

        let s = gleason_solve(&Poly2::monomial(0, 1), r(0.0), Axis::One).unwrap();
        assert_eq!(s.f1, Poly2::one());
        assert!(s.f2.is_zero());
    }

    #[test]
    fn norm_bound_holds() {
        let s1 = MeasureSpec::new(vec![MeasureComponent::atom(c64(0.2, 0.1), 1.0)]).unwrap();
        let s2 = MeasureSpec::new(vec![MeasureComponent::circle_uniform(1.0)]).unwrap();
        let f = Poly2::from_terms([((3, 1), r(1.0)), ((2, 0), c64(0.0, -2.0)), ((0, 2), r(0.7))]);
        let s = gleason_solve(&f, c64(-0.4, 0.6), Axis::One).unwrap();
        let n = gleason_norms(&s1, &s2, &s).unwrap();
        assert!(n.bound_holds);
        assert!(n.f1_norm_sq.is_finite() && n.f2_norm_sq > 0.0);
    }

    fn coeff() -> impl Strategy<Value = Complex64> {
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| c64(a, b))
    }

    fn point() -> impl Strategy<Value = Complex64> {
        (0.0..0.9f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
    }

    proptest! {
        #[test]
        fn reconstruction_is_exact(
            terms in proptest::collection::vec(((0usize..=8, 0usize..=8), coeff()), 0..30),
            lambda in point(),
            axis_two in any::<bool>(),
        ) {
            let axis = if axis_two { Axis::Two } else { Axis::One };
            let f = Poly2::from_terms(terms);
            let s = gleason_solve(&f, lambda, axis).unwrap();
            prop_assert!(s.residual(&f) <= 1e-13);

            let g = f.mul(&linear_factor(axis, lambda));
            let q = divide_on_slice(&g, lambda, axis).unwrap();
            prop_assert!(q.sub(&f).max_abs_coeff() <= 1e-13);
        }
    }
}
