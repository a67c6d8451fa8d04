//! Bounded searches for reducible quadratic substitutions and for rational
//! points on `A z^2 = phi_d(x, y)`.

mod points;
mod scan;

pub use points::{rational_point_search, HomogenizedForm, RationalPoint};
pub use scan::{quadratic_substitution_scan, ScanHit, ScanOptions, ScanReport, ScanStats};
