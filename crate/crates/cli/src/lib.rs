//! File formats and the command-line front end for `sdrep`.

pub mod app;
pub mod raster;
pub mod repfile;
pub mod sdpa;

pub use repfile::{load, save, RepFile, RepFileError};
