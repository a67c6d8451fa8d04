//! Integer factorization and empirical smoothness of certificate values.

mod integer;
mod sample;

pub use integer::{
    factor_integer, factor_integer_with, is_probable_prime, is_prime_u64, largest_prime_factor, FactorBudget,
    PrimeFactorization,
};
pub use sample::{
    quadratic_certificate_for, smooth_witnesses, smooth_witnesses_from, smoothness_sample, smoothness_sample_with,
    FactorValue, SampleRow, SmoothnessReport, SmoothnessSummary, Witness, WitnessOptions, WitnessReport,
};
