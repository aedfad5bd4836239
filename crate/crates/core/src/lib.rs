pub mod error;
pub mod analysis;
pub mod bifurcation;
pub mod cfdyn;
pub mod cli;
pub mod exactnum;
pub mod matching;

pub use error::{Error, Result};
