//! Certified growth-factor computations for Gaussian elimination with
//! complete pivoting.
//!
//! The crate has two halves. The exact half reproduces the lower-bound
//! pipeline for the 5x5 growth maximum: the polynomial system extracted from
//! the optimizer's equality pattern, its elimination, the discriminant
//! factorization, and the degree-61 polynomial whose root in (4,5) is the
//! conjectured maximum. The rigorous-numeric half builds dyadic-box covers of
//! high-growth 3x3 matrices and certifies rank-2 infeasibility over them,
//! which yields the 4.84-style upper-bound case split.

pub mod candidate;
pub mod cover;
pub mod data;
pub mod elim;
pub mod infeas;
pub mod manifest;
pub mod multipoly;
pub mod numerics;
pub mod search;
pub mod unipoly;
