//! Exact computation of the nucleus of a Q-polynomial distance-regular
//! graph, with certification routines for dual polar graphs.

pub mod drg;
pub mod error;
pub mod gfspace;
pub mod nucleus;
pub mod projgeom;
pub mod qbinom;
pub mod ratlinalg;
pub mod report;
pub mod spectral;
pub mod suite;
pub mod summary;
pub mod tmodule;

pub use error::{Error, Result};
