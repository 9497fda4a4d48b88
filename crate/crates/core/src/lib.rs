//! OM representations of square-free polynomials over the p-adic integers.

pub mod error;
pub mod exactnum;
pub mod ffield;
pub mod invariants;
pub mod montes;
pub mod newton;
pub mod omtypes;
pub mod sfl;

pub use error::{OmError, Result};
