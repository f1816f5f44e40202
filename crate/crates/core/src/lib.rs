pub mod classes;
pub mod classical;
pub mod classifier;
pub mod corpus;
pub mod error;
pub mod extraspecial;
pub mod forms;
pub mod gf;
pub mod group;
pub mod module;
pub mod selftest;

pub use error::{Error, Result};
