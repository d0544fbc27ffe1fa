//! Finite sections of the multiplication pair `(M_z1, M_z2)` on `D(μ₁, μ₂)`.
//!
//! `β_α = Σ_{0<=β<=α} (-1)^{|β|} C(α,β) T^{*β} T^β` is represented by its
//! quadratic form on monomials:
//!
//! ```text
//! F_α[(m,n),(p,q)] = Σ_β (-1)^{|β|} C(α,β) G[(m+β₁, n+β₂), (p+β₁, q+β₂)]
//! ```
//!
//! Each form on test orders `(D1, D2)` reads a Gram matrix of orders
//! `(D1 + α₁, D2 + α₂)`, so its entries are exact rather than compressions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{frobenius, hermitian_eigenvalues, max_abs, CMatrix};
use crate::measure::{MeasureSpec, MomentTable};
use crate::poly::{Axis, Poly2};
use crate::space1d::{recover_moments1, Gram1};
use crate::space2d::{gram2, inner2, norm2_sq, slice_moment_form, Gram2};

/// Default relative tolerance for negative-semidefiniteness.
pub const NSD_TOL: f64 = 1e-9;
/// Gate on the Gram condition estimate for kernel evaluation.
pub const MAX_CONDITION: f64 = 1e12;
/// Gate on the four-case structure in [`model_roundtrip`].
pub const STRUCTURE_TOL: f64 = 1e-9;

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Quadratic form of `β_α(M_z)` on the test rectangle `0..=D1 × 0..=D2`.
#[derive(Debug, Clone)]
pub struct DefectForm {
    pub alpha: (usize, usize),
    pub test_orders: (usize, usize),
    entries: CMatrix,
}

impl DefectForm {
    /// Builds the form from a Gram matrix that covers the shifted rectangle.
    pub fn from_gram(gram: &Gram2, alpha: (usize, usize), d1: usize, d2: usize) -> Result<Self> {
        if alpha == (0, 0) {
            return Err(Error::InvalidArgument("alpha must be nonzero".into()));
        }
        let (o1, o2) = gram.orders();
        if d1 + alpha.0 > o1 || d2 + alpha.1 > o2 {
            return Err(Error::DegreeOutOfRange {
                deg1: d1 + alpha.0,
                deg2: d2 + alpha.1,
                order1: o1,
                order2: o2,
            });
        }
        let width = d2 + 1;
        let dim = (d1 + 1) * width;
        let mut entries = DMatrix::from_element(dim, dim, Complex64::from(0.0));
        for b1 in 0..=alpha.0 {
            for b2 in 0..=alpha.1 {
                let sign = if (b1 + b2) % 2 == 0 { 1.0 } else { -1.0 };
                let coef = sign * binomial(alpha.0, b1) * binomial(alpha.1, b2);
                for u in 0..dim {
                    let (m, n) = (u / width, u % width);
                    for v in 0..dim {
                        let (p, q) = (v / width, v % width);
                        entries[(u, v)] += gram.get((m + b1, n + b2), (p + b1, q + b2)) * coef;
                    }
                }
            }
        }
        Ok(Self {
            alpha,
            test_orders: (d1, d2),
            entries,
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn get(&self, (m, n): (usize, usize), (p, q): (usize, usize)) -> Complex64 {
        let w = self.test_orders.1 + 1;
        self.entries[(m * w + n, p * w + q)]
    }

    pub fn max_abs_entry(&self) -> f64 {
        max_abs(&self.entries)
    }

    pub fn frobenius(&self) -> f64 {
        frobenius(&self.entries)
    }

    /// `⟨β_α f, g⟩` for `f, g` inside the test rectangle.
    pub fn form(&self, f: &Poly2, g: &Poly2) -> Result<Complex64> {
        let (d1, d2) = self.test_orders;
        for p in [f, g] {
            let (a, b) = p.degrees();
            if a > d1 || b > d2 {
                return Err(Error::DegreeOutOfRange {
                    deg1: a,
                    deg2: b,
                    order1: d1,
                    order2: d2,
                });
            }
        }
        let mut acc = Complex64::from(0.0);
        for (u, a) in f.terms() {
            for (v, b) in g.terms() {
                acc += a * b.conj() * self.get(u, v);
            }
        }
        Ok(acc)
    }
}

/// Defect form of `β_α(M_z)` on `D(μ₁, μ₂)` over the test rectangle `(D1, D2)`.
pub fn defect_form(
    spec1: &MeasureSpec,
    spec2: &MeasureSpec,
    alpha: (usize, usize),
    d1: usize,
    d2: usize,
) -> Result<DefectForm> {
    let gram = gram2(spec1, spec2, d1 + alpha.0, d2 + alpha.1);
    DefectForm::from_gram(&gram, alpha, d1, d2)
}

/// Outcome of a negative-semidefiniteness test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NsdCheck {
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub frobenius: f64,
    pub pass: bool,
}

/// Passes iff the largest eigenvalue of the Hermitian part of `matrix` is at
/// most `tol · max(1, ‖matrix‖_F)`.
pub fn check_nsd_matrix(matrix: &CMatrix, tol: f64) -> NsdCheck {
    let eig = hermitian_eigenvalues(matrix);
    let frob = frobenius(matrix);
    let (min_eigenvalue, max_eigenvalue) = match (eig.first(), eig.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0.0, 0.0),
    };
    NsdCheck {
        min_eigenvalue,
        max_eigenvalue,
        frobenius: frob,
        pass: max_eigenvalue <= tol * frob.max(1.0),
    }
}

pub fn check_nsd(form: &DefectForm, tol: f64) -> NsdCheck {
    check_nsd_matrix(&form.entries, tol)
}

/// Largest entry of `F_{α+ε_j} - (F_α - S_j^* F_α S_j)` on the test rectangle.
pub fn beta_recursion_residual(
    spec1: &MeasureSpec,
    spec2: &MeasureSpec,
    alpha: (usize, usize),
    axis: Axis,
    d1: usize,
    d2: usize,
) -> Result<f64> {
    let (e1, e2) = axis.unit();
    let next = (alpha.0 + e1, alpha.1 + e2);
    let gram = gram2(spec1, spec2, d1 + next.0, d2 + next.1);
    let lhs = DefectForm::from_gram(&gram, next, d1, d2)?;
    let base = DefectForm::from_gram(&gram, alpha, d1 + e1, d2 + e2)?;
    let mut worst: f64 = 0.0;
    for m in 0..=d1 {
        for n in 0..=d2 {
            for p in 0..=d1 {
                for q in 0..=d2 {
                    let rhs =
                        base.get((m, n), (p, q)) - base.get((m + e1, n + e2), (p + e1, q + e2));
                    worst = worst.max((lhs.get((m, n), (p, q)) - rhs).norm());
                }
            }
        }
    }
    Ok(worst)
}

/// `⟨β_{(n,0)} f, g⟩` (axis 1) or `⟨β_{(0,n)} f, g⟩` (axis 2) from the measure
/// side: `-∫_𝕋∫ (1 - |ζ|²)^{n-1} f conj(g) dμ dθ/2π`. For `n = 1` the whole
/// closed disc contributes; for `n >= 2` only the open disc does.
pub fn moment_side_form(
    spec1: &MeasureSpec,
    spec2: &MeasureSpec,
    axis: Axis,
    n: usize,
    f: &Poly2,
    g: &Poly2,
) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let spec = match axis {
        Axis::One => spec1,
        Axis::Two => spec2,
    };
    let value = if n == 1 {
        slice_moment_form(spec, f, g, axis, 0)
    } else {
        slice_moment_form(&spec.interior(), f, g, axis, n - 1)
    };
    Ok(-value)
}

/// `|‖z₁^k z₂^l f‖² - ‖z₁^k f‖² - ‖z₂^l f‖² + ‖f‖²|`.
pub fn kl_identity_residual(
    spec1: &MeasureSpec,
    spec2: &MeasureSpec,
    k: usize,
    l: usize,
    f: &Poly2,
) -> Result<f64> {
    let (d1, d2) = f.degrees();
    let gram = gram2(spec1, spec2, d1 + k, d2 + l);
    kl_identity_residual_with(&gram, k, l, f)
}

pub fn kl_identity_residual_with(gram: &Gram2, k: usize, l: usize, f: &Poly2) -> Result<f64> {
    let both = norm2_sq(gram, &f.shift(k, l))?;
    let first = norm2_sq(gram, &f.shift(k, 0))?;
    let second = norm2_sq(gram, &f.shift(0, l))?;
    let base = norm2_sq(gram, f)?;
    Ok((both - first - second + base).abs())
}

/// Largest `|⟨z₁^a, z₁^b z₂^c⟩|` with `c ≠ 0` together with the mirrored family
/// `|⟨z₂^a, z₁^b z₂^c⟩|` with `b ≠ 0`, over `a, b <= D1`, `c <= D2` (and the
/// mirrored ranges).
pub fn wandering_residual(spec1: &MeasureSpec, spec2: &MeasureSpec, d1: usize, d2: usize) -> f64 {
    let gram = gram2(spec1, spec2, d1.max(d2), d1.max(d2));
    wandering_residual_with(&gram, d1, d2)
}

pub fn wandering_residual_with(gram: &Gram2, d1: usize, d2: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..=d1 {
        for b in 0..=d1 {
            for c in 1..=d2 {
                worst = worst.max(gram.get((a, 0), (b, c)).norm());
            }
        }
    }
    for a in 0..=d2 {
        for c in 0..=d2 {
            for b in 1..=d1 {
                worst = worst.max(gram.get((0, a), (b, c)).norm());
            }
        }
    }
    worst
}

/// Truncated reproducing kernel `κ_T(·, w)` of the span of monomials in the
/// `(M, N)` rectangle.
///
/// The coefficients `c` of `κ_T(·, w) = Σ_u c_u z^u` solve `G conj(c) = (w^v)_v`,
/// so that `⟨p, κ_T(·,w)⟩ = p(w)` for every `p` in the span.
#[derive(Debug, Clone)]
pub struct TruncatedKernel {
    gram: Gram2,
    cholesky: nalgebra::Cholesky<Complex64, nalgebra::Dyn>,
    pub condition: f64,
}

impl TruncatedKernel {
    pub fn new(gram: Gram2) -> Result<Self> {
        let eig = hermitian_eigenvalues(gram.matrix());
        let (lo, hi) = (eig[0], eig[eig.len() - 1]);
        let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
        if condition > MAX_CONDITION {
            return Err(Error::IllConditioned { condition });
        }
        let cholesky = gram
            .matrix()
            .clone()
            .cholesky()
            .ok_or(Error::IllConditioned { condition })?;
        Ok(Self {
            gram,
            cholesky,
            condition,
        })
    }

    pub fn gram(&self) -> &Gram2 {
        &self.gram
    }

    /// `κ_T(·, w)` as a polynomial.
    pub fn section(&self, w: (Complex64, Complex64)) -> Poly2 {
        // ⟨z^v, κ_w⟩ = w^v  ⇔  G conj(c) = (w^v)_v.
        let dim = self.gram.dim();
        let rhs = nalgebra::DVector::from_fn(dim, |u, _| {
            let (m, n) = self.gram.exponents(u);
            w.0.powu(m as u32) * w.1.powu(n as u32)
        });
        let solved = self.cholesky.solve(&rhs);
        Poly2::from_terms((0..dim).map(|u| (self.gram.exponents(u), solved[u].conj())))
    }

    pub fn eval(&self, z: (Complex64, Complex64), w: (Complex64, Complex64)) -> Complex64 {
        self.section(w).eval(z.0, z.1)
    }

    /// `|⟨p, κ_T(·,w)⟩ - p(w)|`.
    pub fn reproducing_residual(&self, p: &Poly2, w: (Complex64, Complex64)) -> Result<f64> {
        let k = self.section(w);
        Ok((inner2(&self.gram, p, &k)? - p.eval(w.0, w.1)).norm())
    }
}

/// `κ_T(z, w)` for the truncation `(M, N)`.
pub fn kernel_eval(
    spec1: &MeasureSpec,
    spec2: &MeasureSpec,
    z: (Complex64, Complex64),
    w: (Complex64, Complex64),
    trunc: (usize, usize),
) -> Result<Complex64> {
    let kernel = TruncatedKernel::new(gram2(spec1, spec2, trunc.0, trunc.1))?;
    Ok(kernel.eval(z, w))
}

/// Moment tables recovered from a Gram matrix and the Gram matrix rebuilt
/// from them.
#[derive(Debug, Clone)]
pub struct Roundtrip {
    pub moments1: MomentTable,
    pub moments2: MomentTable,
    pub rebuilt: Gram2,
    pub max_residual: f64,
}

/// Recovers the moments of `μ₁, μ₂` from the axis blocks of `G` and rebuilds
/// the full Gram matrix. Fails with `InconsistentGram` when `G` does not have
/// the four-case structure of a `D(μ₁, μ₂)` Gram matrix.
pub fn model_roundtrip(gram: &Gram2) -> Result<Roundtrip> {
    let (o1, o2) = gram.orders();
    if o1 == 0 || o2 == 0 {
        return Err(Error::InvalidArgument(
            "roundtrip needs orders of at least (1, 1)".into(),
        ));
    }
    let defect = gram.structure_defect();
    if defect > STRUCTURE_TOL {
        return Err(Error::InconsistentGram(format!(
            "entries deviate from the zero-pattern/diagonal structure by {defect:e}"
        )));
    }
    let moments1 = recover_moments1(&gram.axis_gram(Axis::One))?;
    let moments2 = recover_moments1(&gram.axis_gram(Axis::Two))?;
    let rebuilt = Gram2::from_axes(
        &Gram1::from_moments(&moments1, o1)?,
        &Gram1::from_moments(&moments2, o2)?,
    );
    let max_residual = rebuilt.max_abs_diff(gram);
    Ok(Roundtrip {
        moments1,
        moments2,
        rebuilt,
        max_residual,
    })
}

/// `n00 - n10 - n01 + n11` from the squared norms of `e₀, T₁e₀, T₂e₀, T₁T₂e₀`.
pub fn defect_from_norms(n00: f64, n10: f64, n01: f64, n11: f64) -> f64 {
    n00 - n10 - n01 + n11
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::measure::MeasureComponent;

    fn circle() -> MeasureSpec {
        MeasureSpec::new(vec![MeasureComponent::circle_uniform(1.0)]).unwrap()
    }

    fn atom(re: f64, im: f64, mass: f64) -> MeasureSpec {
        MeasureSpec::new(vec![MeasureComponent::atom(c64(re, im), mass)]).unwrap()
    }

    fn mixture() -> MeasureSpec {
        MeasureSpec::new(vec![
            MeasureComponent::atom(c64(0.4, -0.2), 0.8),
            MeasureComponent::atom(c64(-0.6, 0.8), 0.3),
            MeasureComponent::circle_arc(-1.0, 1.5, 0.6),
            MeasureComponent::area_disc(0.9, 0.5),
            MeasureComponent::circle_uniform(0.2),
        ])
        .unwrap()
    }

    #[test]
    fn zero_defect_for_mixtures() {
        let f = defect_form(&mixture(), &atom(0.3, 0.1, 2.0), (1, 1), 4, 4).unwrap();
        assert!(f.max_abs_entry() <= 1e-12);
    }

    #[test]
    fn beta_20_at_constant_for_atom_at_origin() {
        let f = defect_form(&atom(0.0, 0.0, 1.0), &circle(), (2, 0), 2, 2).unwrap();
        assert!((f.get((0, 0), (0, 0)) - c64(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn boundary_measures_give_two_isometries() {
        let b1 = MeasureSpec::new(vec![
            MeasureComponent::circle_arc(0.0, 2.0, 0.5),
            MeasureComponent::atom(c64(0.0, -1.0), 1.0),
        ])
        .unwrap();
        for alpha in [(2, 0), (0, 2), (1, 1)] {
            let f = defect_form(&b1, &circle(), alpha, 3, 3).unwrap();
            assert!(f.max_abs_entry() <= 1e-12, "{alpha:?}");
        }
    }

    #[test]
    fn nsd_examples() {
        let zero = DefectForm {
            alpha: (1, 0),
            test_orders: (0, 0),
            entries: CMatrix::zeros(1, 1),
        };
        let c = check_nsd(&zero, NSD_TOL);
        assert!(c.pass && c.min_eigenvalue == 0.0);

        let f = defect_form(&atom(0.5, 0.3, 1.0), &atom(-0.2, 0.0, 0.5), (3, 0), 3, 3).unwrap();
        assert!(check_nsd(&f, NSD_TOL).pass);

        let mut bad = CMatrix::zeros(2, 2);
        bad[(0, 0)] = c64(1.0, 0.0);
        bad[(1, 1)] = c64(-3.0, 0.0);
        let c = check_nsd_matrix(&bad, NSD_TOL);
        assert!(!c.pass);
        assert!((c.max_eigenvalue - 1.0).abs() < 1e-14);
    }

    #[test]
    fn beta_recursion_examples() {
        let r = beta_recursion_residual(&circle(), &circle(), (1, 0), Axis::One, 3, 3).unwrap();
        assert!(r <= 1e-14);
        let r = beta_recursion_residual(&mixture(), &mixture(), (1, 1), Axis::Two, 3, 3).unwrap();
        assert!(r <= 1e-12);
        let r = beta_recursion_residual(
            &atom(0.3, 0.0, 1.0),
            &atom(0.0, 0.5, 1.0),
            (2, 0),
            Axis::One,
            3,
            3,
        )
        .unwrap();
        assert!(r <= 1e-12);
    }

    #[test]
    fn moment_side_examples() {
        let one = Poly2::one();
        let v =
            moment_side_form(&atom(0.0, 0.0, 1.0), &circle(), Axis::One, 2, &one, &one).unwrap();
        assert!((v - c64(-1.0, 0.0)).norm() < 1e-15);
        let v = moment_side_form(&circle(), &circle(), Axis::One, 2, &one, &one).unwrap();
        assert_eq!(v, c64(0.0, 0.0));
        let v =
            moment_side_form(&atom(0.6, 0.0, 1.0), &circle(), Axis::One, 3, &one, &one).unwrap();
        assert!((v - c64(-0.4096, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn moment_side_matches_defect_form_on_monomials() {
        let (s1, s2) = (mixture(), atom(0.5, -0.5, 0.7));
        for (axis, n) in [
            (Axis::One, 1),
            (Axis::One, 2),
            (Axis::Two, 3),
            (Axis::Two, 1),
            (Axis::One, 4),
        ] {
            let alpha = match axis {
                Axis::One => (n, 0),
                Axis::Two => (0, n),
            };
            let f = defect_form(&s1, &s2, alpha, 3, 3).unwrap();
            for u in 0..16 {
                for v in 0..16 {
                    let (pu, pv) = ((u / 4, u % 4), (v / 4, v % 4));
                    let (mu, mv) = (Poly2::monomial(pu.0, pu.1), Poly2::monomial(pv.0, pv.1));
                    let side = moment_side_form(&s1, &s2, axis, n, &mu, &mv).unwrap();
                    assert!(
                        (f.get(pu, pv) - side).norm() <= 1e-10,
                        "{alpha:?} {pu:?} {pv:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn kl_identity_examples() {
        let one = Poly2::one();
        assert!(kl_identity_residual(&circle(), &circle(), 1, 1, &one).unwrap() < 1e-15);
        let f = Poly2::from_terms([
            ((0, 0), c64(1.0, 2.0)),
            ((2, 1), c64(-0.5, 0.0)),
            ((1, 3), c64(0.0, 0.3)),
        ]);
        assert!(kl_identity_residual(&mixture(), &atom(0.2, 0.2, 1.0), 3, 2, &f).unwrap() <= 1e-10);
        assert_eq!(
            kl_identity_residual(&mixture(), &mixture(), 0, 2, &f).unwrap(),
            0.0
        );
    }

    #[test]
    fn wandering_examples() {
        assert_eq!(wandering_residual(&circle(), &circle(), 4, 4), 0.0);
        assert!(wandering_residual(&mixture(), &atom(0.1, 0.9, 1.0), 4, 3) <= 1e-12);
        // ⟨z₁, z₁⟩ is outside the wandering families and need not vanish.
        let g = gram2(&atom(0.0, 0.0, 1.0), &circle(), 1, 1);
        assert_eq!(g.get((1, 0), (1, 0)), c64(2.0, 0.0));
    }

    #[test]
    fn kernel_examples() {
        let zero = (c64(0.0, 0.0), c64(0.0, 0.0));
        let z = (c64(0.3, -0.4), c64(0.6, 0.1));
        let k = kernel_eval(&mixture(), &atom(0.2, 0.0, 1.0), z, zero, (6, 6)).unwrap();
        assert!((k - c64(1.0, 0.0)).norm() < 1e-14);

        let half = (c64(0.5, 0.0), c64(0.0, 0.0));
        let k = kernel_eval(&circle(), &circle(), half, half, (10, 10)).unwrap();
        let series: f64 = (0..=10).map(|m| 0.25f64.powi(m) / (1.0 + m as f64)).sum();
        assert!((k.re - series).abs() < 1e-12 && k.im.abs() < 1e-14);
        assert!((k.re - 1.150728).abs() < 1e-5);

        let kernel = TruncatedKernel::new(gram2(&mixture(), &mixture(), 4, 4)).unwrap();
        let w = (c64(0.3, 0.0), c64(0.2, 0.0));
        assert!(
            kernel
                .reproducing_residual(&Poly2::monomial(1, 0), w)
                .unwrap()
                <= 1e-10
        );
    }

    #[test]
    fn roundtrip_recovers_generating_moments() {
        let (s1, s2) = (atom(0.5, 0.0, 1.0), circle());
        let g = gram2(&s1, &s2, 6, 6);
        let rt = model_roundtrip(&g).unwrap();
        assert!(rt.moments1.max_abs_diff(&s1.moment_table(5, 5)) <= 1e-12);
        assert!(rt.moments2.max_abs_diff(&s2.moment_table(5, 5)) <= 1e-12);
        assert!(rt.max_residual <= 1e-12);
    }

    #[test]
    fn roundtrip_of_hardy_gram_gives_zero_measures() {
        let g = Gram2::from_matrix((3, 3), CMatrix::identity(16, 16)).unwrap();
        let rt = model_roundtrip(&g).unwrap();
        assert_eq!(rt.moments1.max_abs_diff(&MomentTable::zeros(2, 2)), 0.0);
        assert_eq!(rt.moments2.max_abs_diff(&MomentTable::zeros(2, 2)), 0.0);
    }

    #[test]
    fn roundtrip_rejects_non_model_grams() {
        let mut m = gram2(&circle(), &circle(), 2, 2).matrix().clone();
        // break the zero pattern at ((1,1),(2,2))
        m[(4, 8)] = c64(0.1, 0.0);
        m[(8, 4)] = c64(0.1, 0.0);
        let g = Gram2::from_matrix((2, 2), m).unwrap();
        assert!(matches!(
            model_roundtrip(&g),
            Err(Error::InconsistentGram(_))
        ));
    }

    #[test]
    fn nearby_measures_give_distinguishable_grams() {
        let a = MeasureSpec::new(vec![MeasureComponent::area_disc(1.0, 0.2)]).unwrap();
        let b = MeasureSpec::new(vec![
            MeasureComponent::area_disc(1.0, 0.2),
            MeasureComponent::circle_uniform(0.1),
        ])
        .unwrap();
        assert!((b.moment(1, 1) - a.moment(1, 1)).norm() > 0.099);
        let ga = gram2(&a, &circle(), 6, 6);
        let gb = gram2(&b, &circle(), 6, 6);
        assert!(ga.max_abs_diff(&gb) >= 0.05);
    }

    #[test]
    fn intro_defect_value() {
        let (b1, b2) = (0.37, 1.9);
        let d = defect_from_norms(1.0, 1.0 + b1 + 0.5, 1.0 + b2 + 0.5, 1.0 + b1 + b2 + 0.75);
        assert!((d + 0.25).abs() < 1e-15);
        assert_eq!(defect_from_norms(1.0, 1.0, 1.0, 1.0), 0.0);
        assert_eq!(defect_from_norms(1.0, 2.0, 2.0, 3.0), 0.0);
    }
}
