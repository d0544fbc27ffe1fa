//! Seeded random measures and polynomials for property checks.
//!
//! All generation goes through `ChaCha8Rng`, so a seed fixes the corpus on
//! every platform.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::measure::{MeasureComponent, MeasureSpec};
use crate::poly::Poly2;

/// Largest modulus of a random interior atom.
pub const MAX_ATOM_RADIUS: f64 = 0.9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn mass(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(0.05..1.0)
}

fn interior_atom(rng: &mut ChaCha8Rng) -> MeasureComponent {
    let r = MAX_ATOM_RADIUS * rng.random::<f64>().sqrt();
    let t = rng.random_range(0.0..TAU);
    MeasureComponent::atom(Complex64::from_polar(r, t), mass(rng))
}

fn boundary_component(rng: &mut ChaCha8Rng) -> MeasureComponent {
    match rng.random_range(0..3) {
        0 => MeasureComponent::circle_uniform(mass(rng)),
        1 => {
            let a = rng.random_range(-TAU..TAU);
            let len = rng.random_range(0.1..TAU);
            MeasureComponent::circle_arc(a, a + len, mass(rng))
        }
        _ => {
            let t = rng.random_range(0.0..TAU);
            MeasureComponent::atom(Complex64::from_polar(1.0, t), mass(rng))
        }
    }
}

fn area_disc(rng: &mut ChaCha8Rng) -> MeasureComponent {
    let radius = if rng.random_bool(0.3) {
        1.0
    } else {
        rng.random_range(0.2..1.0)
    };
    MeasureComponent::area_disc(radius, mass(rng))
}

/// A mixture containing at least one component of each kind (atom,
/// uniform circle measure, arc, area disc) plus a few random extras.
pub fn random_mixture(rng: &mut ChaCha8Rng) -> MeasureSpec {
    let a = rng.random_range(-TAU..TAU);
    let len = rng.random_range(0.1..TAU);
    let mut components = vec![
        interior_atom(rng),
        MeasureComponent::circle_uniform(mass(rng)),
        MeasureComponent::circle_arc(a, a + len, mass(rng)),
        area_disc(rng),
    ];
    for _ in 0..rng.random_range(0..3) {
        components.push(match rng.random_range(0..3) {
            0 => interior_atom(rng),
            1 => boundary_component(rng),
            _ => area_disc(rng),
        });
    }
    MeasureSpec::new(components).expect("generated components are valid")
}

/// A measure supported on the unit circle.
pub fn random_boundary(rng: &mut ChaCha8Rng) -> MeasureSpec {
    let count = rng.random_range(1..4);
    let components = (0..count).map(|_| boundary_component(rng)).collect();
    MeasureSpec::new(components).expect("generated components are valid")
}

/// Random polynomial with every coefficient of bidegree at most `(d1, d2)`
/// drawn uniformly from `[-1, 1]²`.
pub fn random_poly2(rng: &mut ChaCha8Rng, d1: usize, d2: usize) -> Poly2 {
    let mut terms = Vec::with_capacity((d1 + 1) * (d2 + 1));
    for m in 0..=d1 {
        for n in 0..=d2 {
            let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            terms.push(((m, n), c));
        }
    }
    Poly2::from_terms(terms)
}

/// Random point with modulus below `radius`.
pub fn random_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    Complex64::from_polar(
        radius * rng.random::<f64>().sqrt(),
        rng.random_range(0.0..TAU),
    )
}

/// `count` seeded pairs of random mixtures.
pub fn mixture_pairs(seed: u64, count: usize) -> Vec<(MeasureSpec, MeasureSpec)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| (random_mixture(&mut rng), random_mixture(&mut rng)))
        .collect()
}

/// `count` seeded pairs of circle-supported measures.
pub fn boundary_pairs(seed: u64, count: usize) -> Vec<(MeasureSpec, MeasureSpec)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|_| (random_boundary(&mut rng), random_boundary(&mut rng)))
        .collect()
}

/// Fixed single measures exercising each component kind alone and together.
pub fn measure_corpus(seed: u64, random_count: usize) -> Vec<MeasureSpec> {
    let mut out = vec![
        MeasureSpec::new(vec![MeasureComponent::circle_uniform(1.0)]).unwrap(),
        MeasureSpec::new(vec![MeasureComponent::atom(Complex64::new(0.5, 0.0), 1.0)]).unwrap(),
        MeasureSpec::new(vec![MeasureComponent::atom(Complex64::new(-0.3, 0.7), 0.6)]).unwrap(),
        MeasureSpec::new(vec![MeasureComponent::atom(Complex64::new(0.0, 1.0), 1.0)]).unwrap(),
        MeasureSpec::new(vec![MeasureComponent::circle_arc(0.0, 1.0, 1.0)]).unwrap(),
        MeasureSpec::new(vec![MeasureComponent::area_disc(1.0, 1.0)]).unwrap(),
        MeasureSpec::new(vec![MeasureComponent::area_disc(0.6, 0.8)]).unwrap(),
    ];
    let mut rng = rng(seed);
    out.extend((0..random_count).map(|_| random_mixture(&mut rng)));
    out
}
