//! The exponent reached by iterating Schinzel's substitution.
//!
//! `P(d) = prod (1 - 1/u_i)` with `u_1 = d - 1`, `u_{i+1} = u_i^2 - 2`, and
//! `theta(d) = P(d)` for `d >= 4`, `theta(d) = P(2d) / 2` for `d = 2, 3`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// Decimal digits kept in [`Theta::decimal`].
pub const THETA_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theta {
    pub d: u64,
    /// The `u_i` included in the truncated product.
    #[serde(with = "crate::serde_big::bigint_vec")]
    pub terms: Vec<BigInt>,
    /// Exact truncated value of `theta(d)`.
    #[serde(with = "crate::serde_big::rational")]
    pub value: BigRational,
    /// `value` truncated to [`THETA_DIGITS`] places.
    pub decimal: String,
}

impl Theta {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

/// Default truncation tolerance, `10^-15`.
pub fn default_tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64.pow(15)))
}

/// Truncated product `P(e)`: terms are taken until `1/u_i < tol`, that last
/// term included.
fn truncated_product(e: u64, tol: &BigRational) -> (Vec<BigInt>, BigRational) {
    let mut u = BigInt::from(e - 1);
    let mut terms = Vec::new();
    let mut prod = BigRational::one();
    loop {
        prod *= BigRational::new(&u - 1, u.clone());
        terms.push(u.clone());
        if BigRational::new(BigInt::one(), u.clone()) < *tol {
            break;
        }
        u = &u * &u - 2;
    }
    (terms, prod)
}

pub fn theta_schinzel(d: u64, tol: &BigRational) -> Result<Theta> {
    if d < 2 {
        return Err(Error::DegreeTooSmall {
            needed: 2,
            got: d as usize,
        });
    }
    if !tol.is_positive() {
        return Err(Error::BadParameters("tolerance must be positive".into()));
    }
    let (terms, value) = if d >= 4 {
        truncated_product(d, tol)
    } else {
        let (t, p) = truncated_product(2 * d, tol);
        (t, p / BigInt::from(2))
    };
    let decimal = decimal_truncated(&value, THETA_DIGITS);
    Ok(Theta { d, terms, value, decimal })
}

/// Decimal expansion of a nonnegative rational, truncated.
pub fn decimal_truncated(r: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (r.numer() * &scale).div_floor(r.denom());
    let (int, frac) = scaled.div_mod_floor(&scale);
    format!("{int}.{:0>width$}", frac.to_string(), width = digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let tol = default_tolerance();
        for (d, want) in [(2, "0.27950849"), (3, "0.38188130"), (4, "0.55901699")] {
            let t = theta_schinzel(d, &tol).unwrap();
            assert!(t.decimal.starts_with(want), "{d}: {}", t.decimal);
        }
    }

    #[test]
    fn doubling_relation() {
        let tol = default_tolerance();
        let t2 = theta_schinzel(2, &tol).unwrap();
        let t4 = theta_schinzel(4, &tol).unwrap();
        // both are P(4), so the truncations coincide exactly
        assert_eq!(&t2.value * BigInt::from(2), t4.value);
        assert!((2.0 * t2.to_f64() - t4.to_f64()).abs() < 1e-12);
    }

    #[test]
    fn terms_follow_recurrence_and_stop_early() {
        let t = theta_schinzel(5, &BigRational::new(1.into(), BigInt::from(10u64.pow(12)))).unwrap();
        let want: Vec<BigInt> = [4u64, 14, 194, 37634, 1416317954, 2005956546822746114]
            .map(BigInt::from)
            .to_vec();
        assert_eq!(t.terms, want);
    }

    #[test]
    fn guards() {
        assert!(matches!(
            theta_schinzel(1, &default_tolerance()),
            Err(Error::DegreeTooSmall { .. })
        ));
        assert_eq!(decimal_truncated(&BigRational::new(1.into(), 3.into()), 4), "0.3333");
        assert_eq!(decimal_truncated(&BigRational::new(7.into(), 4.into()), 3), "1.750");
    }
}
