//! Shared fixtures for the benchmarks.

use dtspace_core::corpus;
use dtspace_core::{MeasureSpec, Poly1, Poly2};

/// Seeded mixture pair used by every Gram benchmark.
pub fn mixture_pair() -> (MeasureSpec, MeasureSpec) {
    corpus::mixture_pairs(7, 1).remove(0)
}

/// Degree-5 polynomial with fixed pseudo-random coefficients.
pub fn poly1() -> Poly1 {
    let f = corpus::random_poly2(&mut corpus::rng(11), 5, 0);
    f.slice_decompose(dtspace_core::Axis::Two).remove(0)
}

pub fn poly2(degree: usize) -> Poly2 {
    corpus::random_poly2(&mut corpus::rng(13), degree, degree)
}
