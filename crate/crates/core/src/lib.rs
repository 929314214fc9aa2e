//! Exact Euler calculus for piecewise-linear constructible functions.
//!
//! A constructible function on `ℝⁿ` is stored as a hyperplane arrangement
//! together with one integer per cell. All geometry is carried out over
//! arbitrary-precision rationals, so every identity of the calculus
//! (duality involution, base change, projection formula, Radon inversion,
//! ...) can be checked as an exact equality.
//!
//! Functions on real projective space `ℙⁿ` are represented on central
//! arrangements in `ℝⁿ⁺¹` which always contain the coordinate hyperplanes;
//! `ℙⁿ` is the compactification of `ℝⁿ` used throughout.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod arrangement;
pub mod constructible;
mod error;
pub mod projective;
pub mod radon;
pub mod ratgeom;

pub use arrangement::{Arrangement, Cell, FacePoset, Sign};
pub use constructible::{AffineCF, Budget, Cone, PolyhedronSpec, Relation};
pub use error::{Error, Result};
pub use projective::ProjectiveCF;
pub use ratgeom::{AffineForm, AffineMap, AffineSubspace, RatVector, Rational};
