//! Factorization of integer polynomials, modulo primes and over Z.

mod hensel;
pub mod modp;
mod zfactor;

pub use modp::{factor_mod_p, Fp, Fpx, ModFactorization};
pub use zfactor::{
    factor_coefficient_bound, factor_over_z, is_irreducible, smallest_good_prime,
    squarefree_decomposition, ZFactorization, RECOMBINATION_CAP,
};
