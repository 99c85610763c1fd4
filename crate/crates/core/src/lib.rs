//! Partial abelian monoids, their classifying spaces and Dold-Thom
//! configuration spaces, realized as finite simplicial sets and checked by
//! exact integer homology.

pub mod dold_thom;
pub mod error;
pub mod homology;
pub mod monoid;
pub mod nerve;
pub mod simplicial;
pub mod suites;

pub use error::{Error, Result};
