//! Two trinomial families whose compositions split along cyclotomic factors.
//!
//! Variant I: `f = t^k + a t^(k-1) - b`, `g = b^k t^(k-1) - a`, and
//! `f(g) = b ((b t g)^(k-1) - 1)`.
//! Variant II: `f = a t^k - t + b`, `g = a^(k+1) t^k + b`, and
//! `f(g) = a (g^k - (a t)^k)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::certificate::{normalize_factor, Certificate, FactorExpr, Method};
use super::verify::finish;
use crate::error::{Error, Result};
use crate::exactalg::cyclotomic::cyclotomic;
use crate::exactalg::numutil::divisors;
use crate::exactalg::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrinomialVariant {
    I,
    II,
}

impl FromStr for TrinomialVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(TrinomialVariant::I),
            "ii" | "2" => Ok(TrinomialVariant::II),
            _ => Err(Error::BadParameters(format!("unknown trinomial variant {s:?}"))),
        }
    }
}

impl fmt::Display for TrinomialVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrinomialVariant::I => "i",
            TrinomialVariant::II => "ii",
        })
    }
}

/// The trinomial `f` of the given variant.
pub fn trinomial(variant: TrinomialVariant, a: &BigInt, b: &BigInt, k: usize) -> IntPoly {
    let mut c = vec![BigInt::zero(); k + 1];
    match variant {
        TrinomialVariant::I => {
            c[k] += 1;
            c[k - 1] += a;
            c[0] -= b;
        }
        TrinomialVariant::II => {
            c[k] += a;
            c[1] -= 1;
            c[0] += b;
        }
    }
    IntPoly::new(c)
}

/// `Y^deg * p(X / Y)` for polynomials `X`, `Y`.
fn homogenized(p: &IntPoly, x: &IntPoly, y: &IntPoly) -> IntPoly {
    let n = p.deg();
    let mut acc = IntPoly::zero();
    let mut xp = IntPoly::one();
    for (i, c) in p.coeffs().iter().enumerate() {
        acc = &acc + &(&xp * &y.pow((n - i) as u32)).scale(c);
        xp = &xp * x;
    }
    acc
}

pub fn trinomial_construct(variant: TrinomialVariant, a: &BigInt, b: &BigInt, k: usize) -> Result<Certificate> {
    if k < 2 {
        return Err(Error::BadParameters("k must be at least 2".into()));
    }
    let f = trinomial(variant, a, b, k);
    let mut scalar;
    let (g, raw) = match variant {
        TrinomialVariant::I => {
            if b.is_zero() {
                return Err(Error::BadParameters("variant i needs b != 0".into()));
            }
            let mut gc = vec![BigInt::zero(); k];
            gc[k - 1] = b.pow(k as u32);
            gc[0] = -a;
            let g = IntPoly::new(gc);
            let u = (&IntPoly::x() * &g).scale(b);
            scalar = BigRational::from_integer(b.clone());
            let raw: Vec<IntPoly> = divisors((k - 1) as u64)
                .into_iter()
                .map(|d| cyclotomic(d).compose(&u))
                .collect();
            (g, raw)
        }
        TrinomialVariant::II => {
            if a.is_zero() || b.is_zero() {
                return Err(Error::BadParameters("variant ii needs a b != 0".into()));
            }
            let g = IntPoly::monomial(a.pow(k as u32 + 1), k).add_constant(b);
            let at = IntPoly::monomial(a.clone(), 1);
            scalar = BigRational::from_integer(a.clone());
            let raw: Vec<IntPoly> = divisors(k as u64)
                .into_iter()
                .map(|d| homogenized(&cyclotomic(d), &g, &at))
                .collect();
            (g, raw)
        }
    };
    let factors = raw
        .into_iter()
        .map(|p| FactorExpr::explicit(normalize_factor(p, &mut scalar)))
        .collect();
    let mut cert = Certificate::new(f, g.into(), scalar, factors, Method::Trinomial);
    cert.notes.push(format!("variant {variant}, a = {a}, b = {b}, k = {k}"));
    finish(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_int_poly, RatPoly};

    fn p(s: &str) -> IntPoly {
        parse_int_poly(s).unwrap()
    }

    fn big(n: i64) -> BigInt {
        n.into()
    }

    #[test]
    fn variant_one_with_k_two() {
        for (a, b) in [(3i64, 2i64), (-1, 5), (0, -7)] {
            let c = trinomial_construct(TrinomialVariant::I, &big(a), &big(b), 2).unwrap();
            // oracle: (g + a) g - b expanded by hand
            let g = IntPoly::from_i64(&[-a, b * b]);
            assert_eq!(c.g, RatPoly::from(g.clone()));
            let want = IntPoly::from_i64(&[-1, -a * b, b * b * b]).scale(&big(b));
            assert_eq!(&(&g.add_constant(&big(a)) * &g).add_constant(&big(-b)), &want);
            assert!(c.is_verified());
        }
    }

    #[test]
    fn variant_two_small_case() {
        let c = trinomial_construct(TrinomialVariant::II, &big(1), &big(-1), 2).unwrap();
        assert_eq!(c.f, p("t^2-t-1"));
        assert_eq!(c.g, RatPoly::from(p("t^2-1")));
        let got: Vec<IntPoly> = c.factors.iter().map(|x| x.expand().to_int().unwrap()).collect();
        assert_eq!(got, vec![p("t^2-t-1"), p("t^2+t-1")]);
    }

    #[test]
    fn selmer_sextic() {
        let c = trinomial_construct(TrinomialVariant::II, &big(1), &big(-1), 6).unwrap();
        assert_eq!(c.f, p("t^6-t-1"));
        assert_eq!(c.total_degree(), 36);
        assert_eq!(c.max_factor_degree(), 12);
        assert_eq!(c.polysmoothness, BigRational::new(1.into(), 3.into()));
        assert!(c.is_verified());
    }

    #[test]
    fn ratio_bounds() {
        for k in 2..8 {
            let c = trinomial_construct(TrinomialVariant::II, &big(2), &big(3), k).unwrap();
            let bound = BigRational::new(
                crate::exactalg::numutil::euler_phi(k as u64).into(),
                k.into(),
            );
            assert!(c.polysmoothness <= bound);
            let c = trinomial_construct(TrinomialVariant::I, &big(2), &big(3), k + 1).unwrap();
            let bound = BigRational::new(crate::exactalg::numutil::euler_phi(k as u64).into(), k.into());
            assert!(c.polysmoothness <= bound);
        }
    }

    #[test]
    fn guards() {
        assert!(trinomial_construct(TrinomialVariant::I, &big(1), &big(0), 3).is_err());
        assert!(trinomial_construct(TrinomialVariant::II, &big(0), &big(1), 3).is_err());
        assert!(trinomial_construct(TrinomialVariant::II, &big(1), &big(1), 1).is_err());
        assert_eq!("ii".parse::<TrinomialVariant>().unwrap(), TrinomialVariant::II);
    }
}
