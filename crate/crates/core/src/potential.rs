//! The superharmonic potential
//!
//! ```text
//! U_μ(w) = ∫_𝔻 log|(1 - conj(ζ) w)/(w - ζ)|² dμ(ζ)/(1 - |ζ|²) + ∫_𝕋 (1 - |w|²)/|ζ - w|² dμ(ζ)
//! ```
//!
//! and area quadratures `∫_𝔻 h(w) U_μ(w) dA(w)` against normalized area
//! measure, used to evaluate `𝒟_μ(g) = ∫ |g'|² U_μ dA` independently of the
//! moment formulas.
//!
//! Quadrature layout: polar tensor grids with Gauss–Legendre radii and
//! equispaced angles. Interior atoms are integrated in coordinates centred at
//! the atom (`w = (ζ - v)/(1 - conj(ζ) v)`), which turns their logarithmic
//! singularity into `-2 log|v|`. Rings near the unit circle use enough angles
//! that the Poisson-kernel peak does not alias.

use std::f64::consts::{PI, TAU};
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::{MeasureComponent, MeasureSpec};
use crate::poly::Poly1;

pub const MIN_NODES: usize = 16;
pub const DEFAULT_RADIAL: usize = 128;
pub const DEFAULT_ANGULAR: usize = 256;

/// Evaluation points closer than this to an interior atom are singular.
pub const SINGULAR_TOL: f64 = 1e-12;

// Ring angle count ~ RING_DECAY / (1 - r s): aliasing then decays like e^-30.
const RING_DECAY: f64 = 30.0;
const MAX_RING_NODES: usize = 1 << 21;

/// Polar tensor grid on the unit disc.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    radial: usize,
    angular: usize,
    // Gauss–Legendre nodes and weights on [-1, 1].
    reference: Vec<(f64, f64)>,
}

impl QuadratureGrid {
    pub fn new(radial: usize, angular: usize) -> Result<Self> {
        if radial < MIN_NODES || angular < MIN_NODES {
            return Err(Error::InvalidGrid(format!(
                "node counts must be >= {MIN_NODES}, got {radial} radial x {angular} angular"
            )));
        }
        let rule = GaussLegendre::new(NonZeroUsize::new(radial).expect("radial > 0"));
        let reference = rule.as_node_weight_pairs().to_vec();
        Ok(Self {
            radial,
            angular,
            reference,
        })
    }

    pub fn radial_count(&self) -> usize {
        self.radial
    }

    pub fn angular_count(&self) -> usize {
        self.angular
    }

    /// Gauss–Legendre abscissas and weights on `(a, b)`.
    pub fn radial_nodes(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (half, mid) = (0.5 * (b - a), 0.5 * (b + a));
        self.reference
            .iter()
            .map(move |&(x, w)| (mid + half * x, half * w))
    }

    /// `Σ w_k · 2 r_k` over `(0, 1)`: normalized area of the disc.
    pub fn area_of_disc(&self) -> f64 {
        self.radial_nodes(0.0, 1.0).map(|(r, w)| 2.0 * r * w).sum()
    }

    /// Grid with half the nodes in each direction (floored at the minimum).
    pub fn coarsened(&self) -> Self {
        Self::new(
            (self.radial / 2).max(MIN_NODES),
            (self.angular / 2).max(MIN_NODES),
        )
        .expect("counts are above the minimum")
    }

    pub fn refined(&self) -> Self {
        Self::new(self.radial * 2, self.angular * 2).expect("counts are above the minimum")
    }

    fn ring_count(&self, r: f64, concentration: f64) -> usize {
        let x = r * concentration;
        if x <= 0.0 {
            return self.angular;
        }
        let extra = (RING_DECAY / (1.0 - x)).ceil();
        ((self.angular as f64 + extra) as usize).min(MAX_RING_NODES)
    }
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self::new(DEFAULT_RADIAL, DEFAULT_ANGULAR).expect("default grid is valid")
    }
}

/// A quadrature value with an error estimate from the coarsened grid.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct QuadratureValue {
    pub value: f64,
    pub error_estimate: f64,
}

/// `Li₂(x)` for `0 <= x <= 1`.
fn dilog(x: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x));
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return PI * PI / 6.0;
    }
    if x > 0.5 {
        return PI * PI / 6.0 - x.ln() * (1.0 - x).ln() - dilog(1.0 - x);
    }
    let mut term = x;
    let mut sum = 0.0;
    for k in 1..200 {
        let add = term / (k * k) as f64;
        sum += add;
        if add < 1e-18 * sum {
            break;
        }
        term *= x;
    }
    sum
}

fn check_in_disc(w: Complex64) -> Result<()> {
    if w.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisc { re: w.re, im: w.im })
    }
}

/// Potential of one component at `w` (`|w| < 1`).
pub fn component_potential(component: &MeasureComponent, w: Complex64) -> Result<f64> {
    check_in_disc(w)?;
    let mass = component.mass();
    if mass == 0.0 {
        return Ok(0.0);
    }
    let value = match *component {
        MeasureComponent::Atom { point, .. } if component.is_boundary() => {
            mass * (1.0 - w.norm_sqr()) / (point - w).norm_sqr()
        }
        MeasureComponent::Atom { point, .. } => {
            let gap = (w - point).norm_sqr();
            if gap.sqrt() <= SINGULAR_TOL {
                return Err(Error::SingularPoint {
                    re: point.re,
                    im: point.im,
                });
            }
            let green = ((Complex64::from(1.0) - point.conj() * w).norm_sqr() / gap).ln();
            mass * green / (1.0 - point.norm_sqr())
        }
        MeasureComponent::CircleUniform { .. } => mass,
        MeasureComponent::CircleArc {
            start_angle,
            end_angle,
            ..
        } => {
            // ∫_a^b P(w, e^{it}) dt = 2Δ - (b - a), with Δ the increase of
            // arg(e^{it} - w) along the arc.
            let width = end_angle - start_angle;
            let ratio = (Complex64::from_polar(1.0, end_angle) - w)
                / (Complex64::from_polar(1.0, start_angle) - w);
            let mut delta = ratio.arg().rem_euclid(TAU);
            if delta < 0.5 * width {
                delta += TAU;
            }
            mass * (2.0 * delta - width) / width
        }
        MeasureComponent::AreaDisc { radius, .. } => {
            // Angular average of the Green function over |ζ| = s is
            // -2 log max(|w|, s); the radial integral has a closed form.
            let r = w.norm();
            let r0 = r.min(radius);
            let mut acc = if r > 0.0 {
                r.ln() * (1.0 - r0 * r0).ln()
            } else {
                0.0
            };
            if r < radius {
                acc += 0.5 * (dilog(1.0 - r * r) - dilog(1.0 - radius * radius));
            }
            2.0 * mass / (radius * radius) * acc
        }
    };
    Ok(value)
}

/// `U_μ(w)` for `|w| < 1`.
pub fn u_mu(spec: &MeasureSpec, w: Complex64) -> Result<f64> {
    check_in_disc(w)?;
    spec.components
        .iter()
        .map(|c| component_potential(c, w))
        .sum()
}

/// Equispaced mean of `f` over the circle of radius `r`.
fn ring_mean(count: usize, r: f64, f: &dyn Fn(Complex64) -> f64) -> f64 {
    let step = TAU / count as f64;
    (0..count)
        .map(|k| f(Complex64::from_polar(r, k as f64 * step)))
        .sum::<f64>()
        / count as f64
}

/// Sum over rings of `weight · 2r · mean_θ f(r e^{iθ})` on `(a, b)`.
fn polar_integral(
    grid: &QuadratureGrid,
    a: f64,
    b: f64,
    concentration: f64,
    f: &dyn Fn(Complex64) -> f64,
) -> f64 {
    let mut total = 0.0;
    for (r, weight) in grid.radial_nodes(a, b) {
        total += weight * 2.0 * r * ring_mean(grid.ring_count(r, concentration), r, f);
    }
    total
}

fn weighted_integral_on(
    spec: &MeasureSpec,
    grid: &QuadratureGrid,
    h: &dyn Fn(Complex64) -> f64,
) -> Result<f64> {
    let (interior_atoms, rest): (Vec<_>, Vec<_>) = spec
        .components
        .iter()
        .filter(|c| c.mass() > 0.0)
        .partition(|c| matches!(c, MeasureComponent::Atom { .. }) && !c.is_boundary());

    let mut total = 0.0;

    // Interior atoms: ∫ h(w) G_ζ(w) dA(w) with w = φ(v) = (ζ - v)/(1 - conj(ζ) v),
    // G_ζ(φ(v)) = -2 log|v| and |φ'(v)|² = (1 - |ζ|²)² / |1 - conj(ζ) v|⁴.
    for atom in interior_atoms {
        let MeasureComponent::Atom { point, mass } = *atom else {
            unreachable!("partitioned on atoms")
        };
        let one = Complex64::from(1.0);
        let scale = mass * (1.0 - point.norm_sqr());
        let integrand = |v: Complex64| {
            let denom = one - point.conj() * v;
            let w = (point - v) / denom;
            scale * h(w) * (-2.0 * v.norm().ln()) / denom.norm_sqr().powi(2)
        };
        total += polar_integral(grid, 0.0, 1.0, point.norm(), &integrand);
    }

    // Radially symmetric pieces are evaluated once per ring and integrated
    // piecewise; arcs and boundary atoms get rings refined toward the circle.
    let (radial, angular): (Vec<&MeasureComponent>, Vec<_>) = rest.into_iter().partition(|c| {
        matches!(
            c,
            MeasureComponent::CircleUniform { .. } | MeasureComponent::AreaDisc { .. }
        )
    });
    // Area-disc potentials have a derivative jump at their radius.
    let mut breaks: Vec<f64> = radial
        .iter()
        .filter_map(|c| match **c {
            MeasureComponent::AreaDisc { radius, .. } if radius < 1.0 => Some(radius),
            _ => None,
        })
        .collect();
    breaks.push(0.0);
    breaks.push(1.0);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    for pair in breaks.windows(2) {
        for (r, weight) in grid.radial_nodes(pair[0], pair[1]) {
            let u = radial
                .iter()
                .map(|c| component_potential(c, Complex64::from(r)))
                .sum::<Result<f64>>()?;
            if u != 0.0 {
                total += weight * 2.0 * r * u * ring_mean(grid.angular, r, h);
            }
        }
    }
    if !angular.is_empty() {
        // Arcs and boundary atoms are finite inside the open disc.
        let integrand = |w: Complex64| {
            let u: f64 = angular
                .iter()
                .map(|c| component_potential(c, w).unwrap_or(f64::NAN))
                .sum();
            h(w) * u
        };
        total += polar_integral(grid, 0.0, 1.0, 1.0, &integrand);
    }
    if total.is_nan() {
        return Err(Error::InvalidArgument(
            "potential evaluation failed on the quadrature grid".into(),
        ));
    }
    Ok(total)
}

/// `∫_𝔻 h(w) U_μ(w) dA(w)` with an error estimate `|I(grid) - I(coarse)|`.
pub fn potential_weighted_integral(
    spec: &MeasureSpec,
    grid: &QuadratureGrid,
    h: &dyn Fn(Complex64) -> f64,
) -> Result<QuadratureValue> {
    let value = weighted_integral_on(spec, grid, h)?;
    let coarse = weighted_integral_on(spec, &grid.coarsened(), h)?;
    Ok(QuadratureValue {
        value,
        error_estimate: (value - coarse).abs().max(1e-12 * (1.0 + value.abs())),
    })
}

/// `𝒟_μ(g) = ∫_𝔻 |g'(w)|² U_μ(w) dA(w)` by area quadrature.
pub fn dirichlet_via_potential(
    spec: &MeasureSpec,
    g: &Poly1,
    grid: &QuadratureGrid,
) -> Result<QuadratureValue> {
    let dg = g.derivative();
    if dg.is_zero() {
        return Ok(QuadratureValue::default());
    }
    potential_weighted_integral(spec, grid, &|w| dg.eval(w).norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;
    use crate::space1d::dirichlet1;

    fn one(c: MeasureComponent) -> MeasureSpec {
        MeasureSpec::new(vec![c]).unwrap()
    }

    // Midpoint rule on the Poisson kernel over the arc.
    fn arc_potential_numeric(a: f64, b: f64, mass: f64, w: Complex64) -> f64 {
        let n = 400_000;
        let h = (b - a) / n as f64;
        let mut acc = 0.0;
        for k in 0..n {
            let z = Complex64::from_polar(1.0, a + (k as f64 + 0.5) * h);
            acc += (1.0 - w.norm_sqr()) / (z - w).norm_sqr();
        }
        mass * acc / n as f64
    }

    // Radial integral of the angular-averaged Green function, midpoint rule.
    fn area_potential_numeric(radius: f64, mass: f64, r: f64) -> f64 {
        let n = 2_000_000;
        let h = radius / n as f64;
        let mut acc = 0.0;
        for k in 0..n {
            let s = (k as f64 + 0.5) * h;
            acc += s * (-2.0 * r.max(s).ln()) / (1.0 - s * s) * h;
        }
        2.0 * mass / (radius * radius) * acc
    }

    #[test]
    fn dilog_reference_values() {
        assert!((dilog(0.5) - (PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2))).abs() < 1e-15);
        assert!((dilog(1.0) - PI * PI / 6.0).abs() < 1e-15);
        assert!((dilog(0.9) - 1.299_714_723_004_958_8).abs() < 1e-14);
    }

    #[test]
    fn atom_at_origin_potential() {
        let s = one(MeasureComponent::atom(c64(0.0, 0.0), 1.0));
        assert!((u_mu(&s, c64(0.5, 0.0)).unwrap() - 2.0 * 2f64.ln()).abs() < 1e-15);
        assert!((u_mu(&s, c64(0.5, 0.0)).unwrap() - 1.386294).abs() < 1e-6);
        assert!((u_mu(&s, c64(0.99, 0.0)).unwrap() - 0.020101).abs() < 1e-6);
    }

    #[test]
    fn circle_potential_is_constant() {
        let s = one(MeasureComponent::circle_uniform(1.0));
        for w in [c64(0.0, 0.0), c64(0.9, 0.0), c64(-0.3, 0.7)] {
            assert_eq!(u_mu(&s, w).unwrap(), 1.0);
        }
        // Full arc agrees with the uniform circle.
        let full = one(MeasureComponent::circle_arc(0.4, 0.4 + TAU, 1.0));
        for w in [c64(0.0, 0.0), c64(0.9, 0.0), c64(-0.3, 0.7)] {
            assert!((u_mu(&full, w).unwrap() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn singular_and_outside_points_are_rejected() {
        let s = one(MeasureComponent::atom(c64(0.3, 0.2), 1.0));
        assert!(matches!(
            u_mu(&s, c64(0.3, 0.2)),
            Err(Error::SingularPoint { .. })
        ));
        assert!(matches!(
            u_mu(&s, c64(1.0, 0.0)),
            Err(Error::OutsideDisc { .. })
        ));
    }

    #[test]
    fn arc_potential_matches_poisson_integral() {
        for (a, b) in [(0.0, PI), (1.0, 5.5), (-2.0, 0.1), (0.0, 6.2)] {
            let c = MeasureComponent::circle_arc(a, b, 0.7);
            for w in [
                c64(0.0, 0.0),
                c64(0.5, 0.5),
                c64(-0.8, 0.1),
                c64(0.1, -0.95),
            ] {
                let exact = component_potential(&c, w).unwrap();
                let num = arc_potential_numeric(a, b, 0.7, w);
                assert!(
                    (exact - num).abs() < 1e-6 * (1.0 + num),
                    "[{a},{b}] at {w}: {exact} vs {num}"
                );
            }
        }
    }

    #[test]
    fn area_potential_matches_radial_integral() {
        for radius in [0.4, 0.8, 1.0] {
            let c = MeasureComponent::area_disc(radius, 1.3);
            for r in [0.0, 0.2, 0.5, 0.79, 0.95] {
                let exact = component_potential(&c, c64(r, 0.0)).unwrap();
                let num = area_potential_numeric(radius, 1.3, r);
                assert!(
                    (exact - num).abs() < 1e-6,
                    "ρ={radius} r={r}: {exact} vs {num}"
                );
            }
        }
    }

    #[test]
    fn area_potential_matches_brute_force_green_integral() {
        // 2-D midpoint rule on the Green function itself (no angular averaging).
        let (radius, mass) = (0.8, 1.0);
        let w = c64(0.3, 0.4);
        let (nr, nt) = (800, 800);
        let mut acc = 0.0;
        for a in 0..nr {
            let s = (a as f64 + 0.5) * radius / nr as f64;
            for b in 0..nt {
                let z = Complex64::from_polar(s, (b as f64 + 0.5) * TAU / nt as f64);
                let green = ((c64(1.0, 0.0) - z.conj() * w).norm_sqr() / (w - z).norm_sqr()).ln();
                acc += green / (1.0 - s * s) * s;
            }
        }
        let num = acc * (radius / nr as f64) * (TAU / nt as f64) * mass / (PI * radius * radius);
        let exact = component_potential(&MeasureComponent::area_disc(radius, mass), w).unwrap();
        assert!((num - exact).abs() < 2e-3, "{num} vs {exact}");
    }

    #[test]
    fn interior_atom_potential_is_superharmonic_on_small_circles() {
        let s = MeasureSpec::new(vec![
            MeasureComponent::atom(c64(0.2, -0.3), 1.0),
            MeasureComponent::atom(c64(-0.6, 0.5), 0.4),
            MeasureComponent::area_disc(0.7, 0.5),
            MeasureComponent::circle_arc(0.0, 2.0, 0.3),
        ])
        .unwrap();
        for center in [
            c64(0.0, 0.0),
            c64(0.5, 0.5),
            c64(-0.3, -0.6),
            c64(0.25, -0.35),
        ] {
            let u0 = u_mu(&s, center).unwrap();
            let n = 720;
            let mean: f64 = (0..n)
                .map(|k| {
                    u_mu(
                        &s,
                        center + Complex64::from_polar(0.05, TAU * k as f64 / n as f64),
                    )
                    .unwrap()
                })
                .sum::<f64>()
                / n as f64;
            assert!(mean <= u0 + 1e-6, "{center}: mean {mean} > {u0}");
        }
    }

    #[test]
    fn grid_integrates_area_to_one() {
        let g = QuadratureGrid::default();
        assert!((g.area_of_disc() - 1.0).abs() < 1e-12);
        assert!(QuadratureGrid::new(8, 256).is_err());
        assert!(g.radial_nodes(0.0, 1.0).all(|(_, w)| w > 0.0));
    }

    #[test]
    fn dirichlet_via_potential_examples() {
        let grid = QuadratureGrid::default();
        let z = Poly1::monomial(1);
        let v =
            dirichlet_via_potential(&one(MeasureComponent::atom(c64(0.0, 0.0), 1.0)), &z, &grid)
                .unwrap();
        assert!((v.value - 1.0).abs() < 1e-4, "{}", v.value);
        let v = dirichlet_via_potential(&one(MeasureComponent::circle_uniform(1.0)), &z, &grid)
            .unwrap();
        assert!((v.value - 1.0).abs() < 1e-6);
        let c = Poly1::from_real(&[2.5]);
        let v = dirichlet_via_potential(&one(MeasureComponent::circle_uniform(1.0)), &c, &grid)
            .unwrap();
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn quadrature_agrees_with_moment_route_per_component() {
        let grid = QuadratureGrid::default();
        let g = Poly1::new(vec![
            c64(0.0, 0.0),
            c64(1.0, 0.5),
            c64(-0.7, 0.2),
            c64(0.3, -0.9),
            c64(0.0, 0.4),
        ]);
        let components = [
            MeasureComponent::atom(c64(0.85, -0.3), 0.7),
            MeasureComponent::atom(c64(0.0, 1.0), 0.5),
            MeasureComponent::circle_arc(0.5, 2.5, 1.0),
            MeasureComponent::area_disc(0.6, 1.0),
            MeasureComponent::area_disc(1.0, 1.0),
        ];
        for c in components {
            let s = one(c.clone());
            let exact = dirichlet1(&s, &g);
            let q = dirichlet_via_potential(&s, &g, &grid).unwrap();
            assert!(
                (q.value - exact).abs() <= 1e-4 * (1.0 + exact),
                "{c:?}: {} vs {exact}",
                q.value
            );
        }
    }

    #[test]
    fn refinement_moves_less_than_the_error_estimate() {
        let s = MeasureSpec::new(vec![
            MeasureComponent::atom(c64(0.5, 0.5), 1.0),
            MeasureComponent::atom(c64(-1.0, 0.0), 0.4),
            MeasureComponent::area_disc(0.5, 0.3),
        ])
        .unwrap();
        let g = Poly1::new(vec![
            c64(0.0, 0.0),
            c64(1.0, 0.0),
            c64(0.0, 1.0),
            c64(0.5, 0.0),
        ]);
        let grid = QuadratureGrid::new(64, 128).unwrap();
        let base = dirichlet_via_potential(&s, &g, &grid).unwrap();
        let fine = dirichlet_via_potential(&s, &g, &grid.refined()).unwrap();
        assert!((fine.value - base.value).abs() <= base.error_estimate);
    }
}
