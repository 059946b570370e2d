//! Exact scalars: roots of unity as rational exponents, and cyclotomic fields
//! for the linear algebra that needs sums of them.

mod cyclotomic;
mod linalg;
mod phase;

pub use cyclotomic::{Cyclotomic, CyclotomicField, Elem};
pub use linalg::{cyc_rank, rank_in_field, row_basis};
pub use phase::Phase;
