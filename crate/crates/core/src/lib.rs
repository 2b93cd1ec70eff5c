pub mod arith;
pub mod cantor;
pub mod recurrence;
pub mod renorm;
pub mod error;

pub use error::{Error, Result};
