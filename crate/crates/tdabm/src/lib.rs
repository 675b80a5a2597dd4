//! Ball Mapper tooling on top of [`tdabm_core`]: CSV ingest, JSON/DOT/GraphML
//! and points-to-balls exports, SVG rendering and the `tdabm` command line.

pub mod cli;
mod error;
pub mod export;
pub mod fixture;
pub mod ingest;
pub mod io;
pub mod render;

pub use error::{Error, Result};
pub use tdabm_core as core;
