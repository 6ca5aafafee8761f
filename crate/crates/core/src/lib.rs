pub mod adversary;
pub mod certificate;
pub mod cli;
pub mod colorers;
pub mod combin;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod lists;
pub mod sampling;
pub mod solver;

pub use error::{Error, Result};
