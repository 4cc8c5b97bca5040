//! Exact computation with submodular, supermodular, base, and bisubmodular
//! polyhedra over small ground sets: membership and tight-set structure,
//! greedy vertex generation, separable quadratic minimization, majorization
//! order comparisons, and decision procedures that recognize whether a finite
//! set of points is (sandwiched by) one of these polyhedra.
//!
//! All values are arbitrary-precision rationals; every check and solver
//! result is exact. Ground sets are deliberately small (`n <= 16` for set
//! functions, `n <= 12` for biset functions) so that all structural
//! properties can be decided by exhaustive scans.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod characterize;
mod error;
pub mod gen;
pub mod ground;
pub mod majorization;
pub mod optimize;
pub mod polyhedra;
pub mod rat;
pub mod setfn;

pub use error::{Constraint, Error};
pub use ground::{Biset, GroundSet, Mask, Permutation, SignVector};
pub use polyhedra::{Point, Polyhedron};
pub use rat::Rat;
pub use setfn::{BisetFunction, Kind, SetFunction};

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
