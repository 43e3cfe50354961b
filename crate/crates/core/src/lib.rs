//! Exact topological-vertex engine for local Hirzebruch surfaces.

pub mod cache;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod gauss;
pub mod gwtheory;
pub mod partitions;
pub mod poly;
pub mod qfield;
pub mod rationality;
pub mod series;
pub mod suite;
pub mod symmfun;
pub mod vertex;

pub use error::{Error, Result};
