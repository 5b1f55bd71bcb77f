//! Buchberger's algorithm and the ideal operations built on it.

mod basis;
mod ideal;
mod order;

pub use basis::GroebnerBasis;
pub use ideal::{dimension_of, linear_part_of, Ideal};
pub use order::MonomialOrder;
