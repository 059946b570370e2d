//! Exact computations for Nichols algebras over quasi-Hopf group algebras of
//! finite abelian groups.

pub mod cocycles;
pub mod dynkin;
pub mod error;
pub mod groups;
pub mod oracle;
pub mod scalars;
pub mod ydmod;

pub use error::{Error, Result};
