//! Exact computer algebra for rational curves given over number fields.
//!
//! The crate computes witness varieties by parametric Weil descent, finds
//! their points at infinity, and uses them to produce an affine
//! reparametrization `t -> a*t + b` whose coefficient field has the smallest
//! possible degree over the rationals. It also generates infinite families of
//! pairwise distinct quadratic fields of parametrization for conics
//! `a*x^2 + b*y^2 + c`.
//!
//! Everything is exact: coefficients are arbitrary precision rationals, and
//! algebraic numbers live in explicit towers `Q`, `Q(a)`, `Q(g)(a)`.

pub mod arith;
pub mod curvefile;
pub mod descent;
pub mod error;
pub mod exec;
pub mod field;
pub mod groebner;
pub mod hypercircle;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod quadfields;
pub mod reparam;
pub mod report;

pub use error::{Error, Result};
pub use exec::{ExecMode, Settings};
