//! Numerical computation of ranks, border ranks, decompositions, and
//! boundaries of points with respect to joins and secant varieties, using
//! witness and pseudowitness sets in place of defining equations.

pub mod algebra;
pub mod error;
pub mod io;
pub mod linalg;
pub mod realness;
pub mod reproduce;
pub mod solver;
pub mod boundary;
pub mod generic;
pub mod membership;
pub mod models;
pub mod varieties;
pub mod tracker;

pub use algebra::{Homotopy, LinearSlice, Polynomial, PolynomialSystem, Rng, Term};
pub use error::{CoreError, Result};
pub use solver::SolutionSet;
pub use tracker::{PathResult, PathStatus, TrackOptions};
