pub mod barycentric;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod exact;
pub mod harness;
pub mod lattice;
pub mod planar;
pub mod polytope;

pub use error::{Error, Result};
