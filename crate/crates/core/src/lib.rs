//! Twin-width toolkit for geometric graph classes.

pub mod budget;
pub mod error;
pub mod graph;
pub mod matrix;

pub use budget::Budget;
pub use error::{Error, Result};
pub mod contraction;
pub mod structures;
pub mod geometry;
pub mod generators;
pub mod orders;
pub mod extraction;
pub mod winwin;
