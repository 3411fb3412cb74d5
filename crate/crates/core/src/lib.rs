//! Symbolic workbench for generalized almost contact and (2,1) structures.

pub mod calculus;
pub mod courant;
pub mod error;
pub mod hypersurface;
pub mod numeric;
pub mod structures;
pub mod symexpr;
pub mod verify;
pub mod workbench;

pub use error::{GgError, Result};
