#![no_std]
extern crate alloc;

pub mod cohomology;
pub mod error;
pub mod homology;
pub mod matrix;
pub mod multivalued;
pub mod params;
pub mod periods;
pub mod quadrature;
pub mod series;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
