//! Finite positive measures on the closed unit disc, described as sums of
//! closed-form components, and their moments
//! `μ̂{i,j} = ∫ conj(ζ)^i ζ^j dμ(ζ)`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Atoms with `|point| >= 1 - BOUNDARY_TOL` belong to the unit circle.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// One closed-form piece of a measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureComponent {
    /// Point mass.
    Atom { point: Complex64, mass: f64 },
    /// `mass` times normalized arclength on the unit circle.
    CircleUniform { mass: f64 },
    /// Uniform density on the arc `{e^{it} : start_angle <= t <= end_angle}`
    /// with total mass `mass`.
    CircleArc {
        start_angle: f64,
        end_angle: f64,
        mass: f64,
    },
    /// `mass` times normalized area measure on the disc `|ζ| < radius`.
    AreaDisc { radius: f64, mass: f64 },
}

impl MeasureComponent {
    pub fn atom(point: Complex64, mass: f64) -> Self {
        Self::Atom { point, mass }
    }

    pub fn circle_uniform(mass: f64) -> Self {
        Self::CircleUniform { mass }
    }

    pub fn circle_arc(start_angle: f64, end_angle: f64, mass: f64) -> Self {
        Self::CircleArc {
            start_angle,
            end_angle,
            mass,
        }
    }

    pub fn area_disc(radius: f64, mass: f64) -> Self {
        Self::AreaDisc { radius, mass }
    }

    pub fn mass(&self) -> f64 {
        match *self {
            Self::Atom { mass, .. }
            | Self::CircleUniform { mass }
            | Self::CircleArc { mass, .. }
            | Self::AreaDisc { mass, .. } => mass,
        }
    }

    /// True when the component is carried by the unit circle.
    pub fn is_boundary(&self) -> bool {
        match *self {
            Self::Atom { point, .. } => point.norm() >= 1.0 - BOUNDARY_TOL,
            Self::CircleUniform { .. } | Self::CircleArc { .. } => true,
            Self::AreaDisc { .. } => false,
        }
    }

    fn validate(&self) -> Result<()> {
        let mass = self.mass();
        if !mass.is_finite() || mass < 0.0 {
            return Err(Error::InvalidMeasure(format!(
                "mass must be finite and nonnegative, got {mass}"
            )));
        }
        match *self {
            Self::Atom { point, .. } => {
                if !point.re.is_finite() || !point.im.is_finite() {
                    return Err(Error::InvalidMeasure("atom point is not finite".into()));
                }
                if point.norm() > 1.0 + BOUNDARY_TOL {
                    return Err(Error::InvalidMeasure(format!(
                        "atom at |point| = {} lies outside the closed disc",
                        point.norm()
                    )));
                }
            }
            Self::CircleUniform { .. } => {}
            Self::CircleArc {
                start_angle,
                end_angle,
                ..
            } => {
                if !start_angle.is_finite() || !end_angle.is_finite() {
                    return Err(Error::InvalidMeasure("arc angles must be finite".into()));
                }
                if !(start_angle < end_angle && end_angle <= start_angle + TAU) {
                    return Err(Error::InvalidMeasure(format!(
                        "arc needs start < end <= start + 2π, got [{start_angle}, {end_angle}]"
                    )));
                }
            }
            Self::AreaDisc { radius, .. } => {
                if !(radius > 0.0 && radius <= 1.0) {
                    return Err(Error::InvalidMeasure(format!(
                        "area disc radius must lie in (0, 1], got {radius}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `∫ conj(ζ)^i ζ^j` against this component, in closed form.
    pub fn moment(&self, i: usize, j: usize) -> Complex64 {
        match *self {
            Self::Atom { point, mass } => point.conj().powu(i as u32) * point.powu(j as u32) * mass,
            Self::CircleUniform { mass } => {
                if i == j {
                    Complex64::from(mass)
                } else {
                    Complex64::from(0.0)
                }
            }
            Self::CircleArc {
                start_angle,
                end_angle,
                mass,
            } => {
                if i == j {
                    return Complex64::from(mass);
                }
                // conj(e^{it})^i e^{it j} = e^{i k t}, k = j - i
                let k = j as f64 - i as f64;
                let width = end_angle - start_angle;
                let diff = Complex64::from_polar(1.0, k * end_angle)
                    - Complex64::from_polar(1.0, k * start_angle);
                diff / Complex64::new(0.0, k * width) * mass
            }
            Self::AreaDisc { radius, mass } => {
                if i == j {
                    Complex64::from(mass * radius.powi(2 * i as i32) / (i as f64 + 1.0))
                } else {
                    Complex64::from(0.0)
                }
            }
        }
    }
}

/// A finite positive Borel measure on the closed unit disc.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureSpec {
    pub components: Vec<MeasureComponent>,
}

impl MeasureSpec {
    /// Validates every component.
    pub fn new(components: Vec<MeasureComponent>) -> Result<Self> {
        let spec = Self { components };
        spec.validate()?;
        Ok(spec)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        self.components
            .iter()
            .try_for_each(MeasureComponent::validate)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("measure serialization cannot fail")
    }

    pub fn total_mass(&self) -> f64 {
        self.components.iter().map(MeasureComponent::mass).sum()
    }

    /// True when no component carries positive mass.
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.mass() == 0.0)
    }

    /// `μ̂{i,j} = ∫ conj(ζ)^i ζ^j dμ(ζ)`.
    pub fn moment(&self, i: usize, j: usize) -> Complex64 {
        self.components.iter().map(|c| c.moment(i, j)).sum()
    }

    /// `∫ conj(ζ)^i ζ^j (1 - |ζ|²)^n dμ(ζ)`, expanded binomially into
    /// `Σ_l (-1)^l C(n,l) μ̂{i+l, j+l}`.
    pub fn weighted_moment(&self, i: usize, j: usize, n: usize) -> Complex64 {
        let mut acc = Complex64::from(0.0);
        let mut binom = 1.0;
        for l in 0..=n {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            acc += self.moment(i + l, j + l) * (sign * binom);
            binom = binom * (n - l) as f64 / (l + 1) as f64;
        }
        acc
    }

    /// Splits into the restriction to the open disc and the restriction to
    /// the unit circle.
    pub fn split_interior_boundary(&self) -> (MeasureSpec, MeasureSpec) {
        let (boundary, interior): (Vec<_>, Vec<_>) = self
            .components
            .iter()
            .cloned()
            .partition(MeasureComponent::is_boundary);
        (
            MeasureSpec {
                components: interior,
            },
            MeasureSpec {
                components: boundary,
            },
        )
    }

    pub fn interior(&self) -> MeasureSpec {
        self.split_interior_boundary().0
    }

    pub fn boundary(&self) -> MeasureSpec {
        self.split_interior_boundary().1
    }

    /// Moments `μ̂{i,j}` for `i <= max_i`, `j <= max_j`.
    pub fn moment_table(&self, max_i: usize, max_j: usize) -> MomentTable {
        MomentTable::from_fn(max_i, max_j, |i, j| self.moment(i, j))
    }
}

/// Table of moments `μ̂{i,j}`, `0 <= i <= max_i`, `0 <= j <= max_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentTable {
    pub max_i: usize,
    pub max_j: usize,
    /// Row `i` holds `μ̂{i, 0..=max_j}`.
    pub entries: Vec<Vec<Complex64>>,
}

impl MomentTable {
    pub fn from_fn(max_i: usize, max_j: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let entries = (0..=max_i)
            .map(|i| (0..=max_j).map(|j| f(i, j)).collect())
            .collect();
        Self {
            max_i,
            max_j,
            entries,
        }
    }

    pub fn zeros(max_i: usize, max_j: usize) -> Self {
        Self::from_fn(max_i, max_j, |_, _| Complex64::from(0.0))
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    /// Largest `|μ̂{i,j} - conj(μ̂{j,i})|` over indices present in both orders.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.max_i.min(self.max_j);
        let mut worst: f64 = 0.0;
        for i in 0..=n {
            for j in 0..=n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise distance to another table of the same shape.
    pub fn max_abs_diff(&self, other: &MomentTable) -> f64 {
        assert_eq!((self.max_i, self.max_j), (other.max_i, other.max_j));
        self.entries
            .iter()
            .flatten()
            .zip(other.entries.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
