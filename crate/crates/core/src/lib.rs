//! Exact computations with representations of the loop braid group.
//!
//! The crate is organised bottom-up: [`scalars`] provides exact rings and
//! linear algebra, [`presentations`] the group relations, [`bvs`] braided
//! vector spaces, [`affine`] the mod-`m` Burau-type family and its image
//! group, [`tensor`] the colour-word representations and their Young and
//! harmonic modules, [`analysis`] module-theoretic verdicts on top, and
//! [`io`] run manifests and report output.

pub mod affine;
pub mod analysis;
pub mod bvs;
pub mod error;
pub mod io;
pub mod presentations;
pub mod scalars;
pub mod tensor;

pub use error::{Error, Result};
