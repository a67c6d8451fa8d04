//! Construction engines for polysmooth compositions, their certificates,
//! and certificate verification.

pub mod binomial;
pub mod certificate;
pub mod cubic;
pub mod decomposition;
pub mod quadratic;
pub mod schinzel;
pub mod theta;
pub mod trinomial;
pub mod verify;

pub use binomial::{binomial_product_construct, Binomial, PrimePartition};
pub use certificate::{Certificate, FactorExpr, Method, SCHEMA_VERSION};
pub use cubic::{cubic_family, CubicFamilyEntry};
pub use decomposition::decomposition_construct;
pub use quadratic::{polysmooth_quadratic, quadratic_construct, QuadraticBudget, QuadraticSeed};
pub use schinzel::{iterate_schinzel, iterate_schinzel_with, schinzel_step, trivial_step, IterateLimits};
pub use theta::{theta_schinzel, Theta};
pub use trinomial::{trinomial_construct, TrinomialVariant};
pub use verify::{verify_certificate, VerifyMode, VerifyOptions, VerifyReport};
