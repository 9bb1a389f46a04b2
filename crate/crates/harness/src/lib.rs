//! Instance I/O, random sweeps and demonstrations on top of `sps-core`.

pub mod demo;
pub mod error;
pub mod generate;
pub mod hunt;
pub mod io;
pub mod report;

pub use error::{HarnessError, Result};
