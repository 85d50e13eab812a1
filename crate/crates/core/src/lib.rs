//! Exact computation of triply-graded homology for closures of braids.
//!
//! The pipeline runs entirely over the rationals:
//!
//! * [`braid`] parses braid words, applies Markov moves and lays out a marked
//!   diagram of the closure.
//! * [`koszul`] turns resolution graphs into Koszul matrices and performs the
//!   row operations and variable exclusions that shrink them.
//! * [`factor_complex`] realizes Koszul matrices as matrix factorizations and
//!   provides cones, tensor products and Gaussian simplification.
//! * [`cube`] assembles the cube of resolutions of a braid closure.
//! * [`homology`] computes the bigraded homology of every vertex slice by slice
//!   and the cube cohomology on top of it.
//! * [`homfly`] evaluates the HOMFLYPT polynomial through the Hecke algebra
//!   and the Ocneanu trace, which serves as an independent check of the Euler
//!   characteristic.
//!
//! The crate is `no_std` with `alloc`. The default `std` feature enables
//! parallel evaluation through rayon.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod algebra;
pub mod braid;
pub mod cube;
pub mod error;
pub mod factor_complex;
pub mod homfly;
pub mod homology;
pub mod koszul;
mod par;

pub use algebra::{Bidegree, Monomial, Polynomial, Rational, Ring};
pub use error::Error;

/// Knobs shared by every computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Highest q-degree (`l`) that is computed. Everything at or below it is exact.
    pub qmax: i32,
    /// Compute reduced homology by setting the basepoint variable to zero.
    pub reduced: bool,
    /// Strand position (1-based) whose bottom variable is the basepoint.
    pub basepoint: usize,
    /// Number of marks on each closure segment (at least 1).
    pub marks_per_segment: usize,
    /// Worker count hint. Zero means "let the runtime decide".
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            qmax: 12,
            reduced: false,
            basepoint: 1,
            marks_per_segment: 1,
            workers: 0,
        }
    }
}
