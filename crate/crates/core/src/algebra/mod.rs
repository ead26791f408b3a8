//! Polynomial arithmetic, slices, homotopies, and seeded randomness.

pub mod homotopy;
pub mod poly;
pub mod rng;
pub mod slice;

pub use homotopy::Homotopy;
pub use poly::{Polynomial, PolynomialSystem, Term};
pub use rng::Rng;
pub use slice::LinearSlice;

use num_complex::Complex64;

/// Straight-line gamma-trick homotopy between systems of identical shape.
/// Rows that agree bitwise in `start` and `target` are held constant, so a
/// slice deformation with the witness system fixed only moves slice rows.
pub fn make_segment_homotopy(
    start: &PolynomialSystem,
    target: &PolynomialSystem,
    rng: &mut Rng,
) -> crate::error::Result<Homotopy> {
    let gamma = rng.unit_complex();
    Homotopy::segment(start, target, gamma)
}

/// Random slice of the given codimension, optionally through a point.
pub fn random_slice(
    num_vars: usize,
    codim: usize,
    through: Option<&[Complex64]>,
    rng: &mut Rng,
) -> crate::error::Result<LinearSlice> {
    LinearSlice::random(num_vars, codim, through, rng)
}
