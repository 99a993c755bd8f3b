//! Buchberger's algorithm over ordinary polynomial rings.

mod buchberger;
mod order;
mod poly;

pub use buchberger::{groebner_basis, reduce, GbLimits};
pub use order::MonomialOrder;
pub use poly::{divides, Poly};
