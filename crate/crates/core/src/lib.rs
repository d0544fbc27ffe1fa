//! Numerical construction of Dirichlet-type spaces `D(μ)` on the unit disc and
//! `D(μ₁, μ₂)` on the unit bidisc, for measures built from closed-form
//! components on the closed disc.
//!
//! Everything runs through exact moment arithmetic: monomial Gram matrices are
//! assembled from moments, and the operator-theoretic properties of the
//! multiplication pair `(M_z1, M_z2)` (zero defect, complete hyperexpansivity,
//! wandering subspace, moment uniqueness) are checked on finite truncations.
//! An independent area-quadrature route through the superharmonic potential
//! `U_μ` cross-checks the moment route.
//!
//! Module map:
//!
//! | module      | contents                                              |
//! |-------------|-------------------------------------------------------|
//! | [`measure`] | measure components, moments, interior/boundary split |
//! | [`poly`]    | one- and two-variable complex polynomials             |
//! | [`potential`] | `U_μ` and the quadrature Dirichlet integral         |
//! | [`space1d`] | `D(μ)`: Gram matrix, local Dirichlet integrals        |
//! | [`space2d`] | `D(μ₁, μ₂)`: Gram matrix, Dirichlet integral, splits  |
//! | [`opmodel`] | defect forms, kernels, model roundtrip                |
//! | [`gleason`] | division and Gleason solvers                          |
//! | [`verify`]  | seeded verification suites and JSON reports          |

pub mod corpus;
pub mod error;
pub mod gleason;
pub mod gram_json;
pub mod measure;
pub mod opmodel;
pub mod poly;
pub mod potential;
pub mod space1d;
pub mod space2d;
pub mod verify;

mod linalg;

pub use error::{Error, Result};
pub use measure::{MeasureComponent, MeasureSpec, MomentTable};
pub use num_complex::Complex64;
pub use poly::{Axis, Poly1, Poly2};
pub use potential::QuadratureGrid;
pub use space1d::Gram1;
pub use space2d::Gram2;

/// Shorthand for `Complex64::new`.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
