//! Exact univariate polynomial arithmetic over Z and Q, and the elementary
//! number theory the rest of the crate leans on.

pub mod cyclotomic;
pub mod intpoly;
pub mod numutil;
pub mod ratpoly;
pub mod resultant;
pub mod text;

pub use cyclotomic::cyclotomic;
pub use intpoly::IntPoly;
pub use ratpoly::RatPoly;
pub use resultant::{resultant, resultant_int};
pub use text::{format_rational, parse_int_poly, parse_poly, parse_poly_with_var, parse_rational, ParsedPoly};
