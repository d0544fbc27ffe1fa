//! The one-variable space `D(μ)`.
//!
//! For `i <= j` the monomial inner product is
//! `⟨z^i, z^j⟩ = δ(i,j) + Σ_{k<i} μ̂{j-k-1, i-k-1}`, and the `i > j` entries
//! follow by Hermitian symmetry. Inner products are linear in the first slot.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, CMatrix};
use crate::measure::{MeasureSpec, MomentTable};
use crate::poly::Poly1;

/// Tolerance for the Hermitian consistency of recovered moment tables.
pub const RECOVERY_TOL: f64 = 1e-10;

/// `G[i,j] = ⟨z^i, z^j⟩_{D(μ)}` for `0 <= i, j <= order`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram1 {
    order: usize,
    entries: CMatrix,
}

impl Gram1 {
    /// Assembles the Gram matrix from a moment oracle `μ̂{a,b}`; only indices
    /// `a, b < order` are queried.
    pub fn from_moment_fn(order: usize, moment: impl Fn(usize, usize) -> Complex64) -> Self {
        let n = order + 1;
        let mut entries = DMatrix::from_element(n, n, Complex64::from(0.0));
        for i in 0..n {
            for j in i..n {
                let mut g = Complex64::from(if i == j { 1.0 } else { 0.0 });
                for k in 0..i {
                    g += moment(j - k - 1, i - k - 1);
                }
                entries[(i, j)] = g;
                if i != j {
                    entries[(j, i)] = g.conj();
                }
            }
        }
        Self { order, entries }
    }

    /// Requires `table.max_i, table.max_j >= order - 1`.
    pub fn from_moments(table: &MomentTable, order: usize) -> Result<Self> {
        if order > 0 && (table.max_i + 1 < order || table.max_j + 1 < order) {
            return Err(Error::InvalidArgument(format!(
                "moment table of orders ({}, {}) cannot build a Gram matrix of order {order}",
                table.max_i, table.max_j
            )));
        }
        Ok(Self::from_moment_fn(order, |a, b| table.get(a, b)))
    }

    /// Wraps an arbitrary square matrix; no invariants are checked.
    pub fn from_matrix(entries: CMatrix) -> Result<Self> {
        if entries.nrows() == 0 || entries.nrows() != entries.ncols() {
            return Err(Error::InvalidArgument(format!(
                "Gram matrix must be square and nonempty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Self {
            order: entries.nrows() - 1,
            entries,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    /// `⟨g, h⟩` for polynomials of degree at most `order`.
    pub fn inner(&self, g: &Poly1, h: &Poly1) -> Result<Complex64> {
        let deg = g.degree().unwrap_or(0).max(h.degree().unwrap_or(0));
        if deg > self.order {
            return Err(Error::DegreeOutOfRange {
                deg1: deg,
                deg2: 0,
                order1: self.order,
                order2: 0,
            });
        }
        let mut acc = Complex64::from(0.0);
        for (i, &a) in g.coeffs().iter().enumerate() {
            for (j, &b) in h.coeffs().iter().enumerate() {
                acc += a * b.conj() * self.entries[(i, j)];
            }
        }
        Ok(acc)
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.entries)[0]
    }
}

/// Exact Gram matrix of `D(μ)` up to `order`.
pub fn gram1(spec: &MeasureSpec, order: usize) -> Gram1 {
    let table = spec.moment_table(order.saturating_sub(1), order.saturating_sub(1));
    Gram1::from_moment_fn(order, |a, b| table.get(a, b))
}

/// Local Dirichlet integral `D_ζ(g) = ‖(g - g(ζ))/(z - ζ)‖²_{H²}`.
pub fn local_dirichlet(g: &Poly1, zeta: Complex64) -> f64 {
    g.difference_quotient(zeta).hardy_norm_sq()
}

/// Polarized local Dirichlet integral `⟨(g-g(ζ))/(z-ζ), (h-h(ζ))/(z-ζ)⟩_{H²}`.
pub fn local_dirichlet_form(g: &Poly1, h: &Poly1, zeta: Complex64) -> Complex64 {
    let (qg, qh) = (g.difference_quotient(zeta), h.difference_quotient(zeta));
    qg.coeffs()
        .iter()
        .zip(qh.coeffs())
        .map(|(a, b)| a * b.conj())
        .sum()
}

/// Sesquilinear Dirichlet form `∫ ⟨q_g(ζ), q_h(ζ)⟩ dμ(ζ)` expanded through
/// moments: `Σ_k Σ_{l,l'>k} a_l conj(b_l') μ̂{l'-1-k, l-1-k}`.
pub fn dirichlet1_form(spec: &MeasureSpec, g: &Poly1, h: &Poly1) -> Complex64 {
    let (dg, dh) = match (g.degree(), h.degree()) {
        (Some(a), Some(b)) if a > 0 && b > 0 => (a, b),
        _ => return Complex64::from(0.0),
    };
    let table = spec.moment_table(dh - 1, dg - 1);
    let mut acc = Complex64::from(0.0);
    for k in 0..dg.min(dh) {
        for l in (k + 1)..=dg {
            let a = g.coeff(l);
            if a == Complex64::from(0.0) {
                continue;
            }
            for lp in (k + 1)..=dh {
                acc += a * h.coeff(lp).conj() * table.get(lp - 1 - k, l - 1 - k);
            }
        }
    }
    acc
}

/// `𝒟_μ(g) = ∫ D_ζ(g) dμ(ζ)`, exact through moments.
pub fn dirichlet1(spec: &MeasureSpec, g: &Poly1) -> f64 {
    dirichlet1_form(spec, g, g).re.max(0.0)
}

/// `‖g‖²_{D(μ)} = ‖g‖²_{H²} + 𝒟_μ(g)`.
pub fn norm1_sq(spec: &MeasureSpec, g: &Poly1) -> f64 {
    g.hardy_norm_sq() + dirichlet1(spec, g)
}

/// Inverts the Gram formula: `μ̂{j-1, i-1} = G[i,j] - G[i-1,j-1]`.
///
/// Returns the moment table of orders `(N-1, N-1)`, Hermitian-averaged after
/// the consistency gate.
pub fn recover_moments1(gram: &Gram1) -> Result<MomentTable> {
    let n = gram.order();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "moment recovery needs a Gram matrix of order >= 1".into(),
        ));
    }
    let g00 = gram.get(0, 0);
    let row0 = (1..=n).map(|j| gram.get(0, j).norm().max(gram.get(j, 0).norm()));
    let row_defect = row0.fold((g00 - 1.0).norm(), f64::max);
    if row_defect > RECOVERY_TOL {
        return Err(Error::InconsistentGram(format!(
            "first row deviates from the unit vector by {row_defect:e}"
        )));
    }
    let raw = MomentTable::from_fn(n - 1, n - 1, |a, b| {
        // a = j - 1, b = i - 1
        gram.get(b + 1, a + 1) - gram.get(b, a)
    });
    let defect = raw.hermitian_defect();
    if defect > RECOVERY_TOL {
        return Err(Error::InconsistentGram(format!(
            "recovered moments violate Hermitian symmetry by {defect:e}"
        )));
    }
    Ok(MomentTable::from_fn(n - 1, n - 1, |a, b| {
        (raw.get(a, b) + raw.get(b, a).conj()) * 0.5
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::measure::MeasureComponent;

    fn atoms(list: &[(Complex64, f64)]) -> MeasureSpec {
        MeasureSpec::new(
            list.iter()
                .map(|&(p, m)| MeasureComponent::atom(p, m))
                .collect(),
        )
        .unwrap()
    }

    fn circle() -> MeasureSpec {
        MeasureSpec::new(vec![MeasureComponent::circle_uniform(1.0)]).unwrap()
    }

    // Independent route for atomic measures: polarized local Dirichlet
    // integrals summed over atoms.
    fn atomic_gram_oracle(list: &[(Complex64, f64)], i: usize, j: usize) -> Complex64 {
        let (zi, zj) = (Poly1::monomial(i), Poly1::monomial(j));
        let mut g = c64(if i == j { 1.0 } else { 0.0 }, 0.0);
        for &(p, m) in list {
            g += local_dirichlet_form(&zi, &zj, p) * m;
        }
        g
    }

    #[test]
    fn circle_gram_is_diagonal_one_plus_index() {
        let g = gram1(&circle(), 6);
        for i in 0..=6 {
            for j in 0..=6 {
                let want = if i == j { 1.0 + i as f64 } else { 0.0 };
                assert!((g.get(i, j) - c64(want, 0.0)).norm() < 1e-15);
            }
        }
        assert_eq!(g.get(2, 2), c64(3.0, 0.0));
    }

    #[test]
    fn atom_gram_entry() {
        let g = gram1(&atoms(&[(c64(0.5, 0.0), 1.0)]), 3);
        assert!((g.get(1, 2) - c64(0.5, 0.0)).norm() < 1e-15);
        assert!((g.get(1, 2) - atomic_gram_oracle(&[(c64(0.5, 0.0), 1.0)], 1, 2)).norm() < 1e-15);
    }

    #[test]
    fn first_row_is_unit_vector() {
        let s = atoms(&[(c64(0.3, 0.4), 2.0), (c64(-0.9, 0.0), 0.5)]);
        let g = gram1(&s, 5);
        assert_eq!(g.get(0, 0), c64(1.0, 0.0));
        for j in 1..=5 {
            assert_eq!(g.get(0, j), c64(0.0, 0.0));
        }
    }

    #[test]
    fn gram_matches_atomic_oracle() {
        let list = [
            (c64(0.3, 0.4), 2.0),
            (c64(-0.9, 0.1), 0.5),
            (c64(0.0, 1.0), 0.7),
        ];
        let g = gram1(&atoms(&list), 8);
        for i in 0..=8 {
            for j in 0..=8 {
                let d = (g.get(i, j) - atomic_gram_oracle(&list, i, j)).norm();
                assert!(d < 1e-12, "({i},{j}) off by {d}");
            }
        }
        assert!(g.min_eigenvalue() > 0.0);
    }

    #[test]
    fn local_dirichlet_examples() {
        let z2 = Poly1::monomial(2);
        assert_eq!(local_dirichlet(&z2, c64(0.0, 0.0)), 1.0);
        assert_eq!(local_dirichlet(&z2, c64(1.0, 0.0)), 2.0);
        assert_eq!(local_dirichlet(&Poly1::monomial(1), c64(-0.3, 0.8)), 1.0);
    }

    #[test]
    fn dirichlet1_examples() {
        let edge = atoms(&[(c64(1.0, 0.0), 1.0)]);
        assert!((dirichlet1(&edge, &Poly1::monomial(2)) - 2.0).abs() < 1e-15);
        assert!((dirichlet1(&circle(), &Poly1::monomial(3)) - 3.0).abs() < 1e-15);
        let g = Poly1::from_real(&[1.0, -2.0, 0.5, 3.0]);
        assert_eq!(dirichlet1(&MeasureSpec::zero(), &g), 0.0);
    }

    #[test]
    fn dirichlet1_of_atomic_measure_sums_local_integrals() {
        let list = [(c64(0.3, 0.4), 2.0), (c64(-0.9, 0.1), 0.5)];
        let g = Poly1::new(vec![
            c64(1.0, 1.0),
            c64(-0.5, 0.2),
            c64(0.0, 2.0),
            c64(0.7, -0.1),
        ]);
        let oracle: f64 = list.iter().map(|&(p, m)| m * local_dirichlet(&g, p)).sum();
        assert!((dirichlet1(&atoms(&list), &g) - oracle).abs() < 1e-13);
    }

    #[test]
    fn gram_agrees_with_dirichlet_polarization() {
        let s = MeasureSpec::new(vec![
            MeasureComponent::atom(c64(0.2, -0.5), 1.3),
            MeasureComponent::circle_arc(0.5, 2.0, 0.4),
            MeasureComponent::area_disc(0.8, 0.9),
            MeasureComponent::circle_uniform(0.3),
        ])
        .unwrap();
        let g = gram1(&s, 10);
        for i in 0..=10 {
            for j in 0..=10 {
                let (zi, zj) = (Poly1::monomial(i), Poly1::monomial(j));
                let direct =
                    c64(if i == j { 1.0 } else { 0.0 }, 0.0) + dirichlet1_form(&s, &zi, &zj);
                assert!((g.get(i, j) - direct).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn recovery_examples() {
        let g = gram1(&atoms(&[(c64(0.5, 0.0), 1.0)]), 4);
        let t = recover_moments1(&g).unwrap();
        assert!((t.get(1, 0) - c64(0.5, 0.0)).norm() < 1e-15);

        let t = recover_moments1(&gram1(&circle(), 5)).unwrap();
        for i in 0..5 {
            assert!((t.get(i, i) - c64(1.0, 0.0)).norm() < 1e-15);
        }

        let id = Gram1::from_matrix(CMatrix::identity(5, 5)).unwrap();
        let t = recover_moments1(&id).unwrap();
        assert_eq!(t.max_abs_diff(&MomentTable::zeros(3, 3)), 0.0);
    }

    #[test]
    fn recovery_rejects_non_hermitian_input() {
        let mut m = gram1(&circle(), 3).matrix().clone();
        m[(1, 2)] = c64(0.3, 0.0);
        assert!(matches!(
            recover_moments1(&Gram1::from_matrix(m).unwrap()),
            Err(Error::InconsistentGram(_))
        ));
        let mut m = gram1(&circle(), 3).matrix().clone();
        m[(0, 2)] = c64(0.3, 0.0);
        m[(2, 0)] = c64(0.3, 0.0);
        assert!(recover_moments1(&Gram1::from_matrix(m).unwrap()).is_err());
    }

    #[test]
    fn dilation_does_not_increase_dirichlet_integral() {
        let s = MeasureSpec::new(vec![
            MeasureComponent::atom(c64(0.6, 0.3), 1.0),
            MeasureComponent::circle_arc(1.0, 4.0, 0.5),
            MeasureComponent::area_disc(1.0, 0.7),
        ])
        .unwrap();
        let g = Poly1::new(vec![
            c64(0.1, 0.0),
            c64(1.0, -1.0),
            c64(-0.4, 0.5),
            c64(0.9, 0.0),
        ]);
        let full = dirichlet1(&s, &g);
        for r in [0.1, 0.5, 0.9, 0.99, 1.0] {
            assert!(dirichlet1(&s, &g.dilate(r)) <= full + 1e-13);
        }
    }
}
