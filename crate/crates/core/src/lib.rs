pub mod error;
pub mod field;
pub mod intersect;
pub mod poly;
pub mod resolve;
pub mod invariants;
pub mod tameness;

pub use error::{Error, Result};
