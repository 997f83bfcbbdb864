pub mod error;
pub mod extended;
pub mod lattice;
pub mod reflection;
pub mod roots;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
