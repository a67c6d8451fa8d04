//! Exact construction and certification of polynomial compositions whose
//! factors all have small degree relative to the composition.

pub mod budget;
pub mod constructions;
pub mod error;
pub mod exactalg;
pub mod factorz;
pub mod numfield;
pub mod obstruction;
pub(crate) mod serde_big;
pub mod smoothness;

pub use error::{Error, Result};
