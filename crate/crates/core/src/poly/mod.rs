//! Univariate and sparse multivariate polynomials over any [`Field`], plus
//! univariate rational functions.
//!
//! [`Field`]: crate::field::Field

mod multi;
mod ratfun;
mod uni;

pub use multi::{default_names, Monomial, MultiPoly, PolyDomain};
pub use ratfun::RatFun;
pub use uni::{resultant_in, UniPoly};
