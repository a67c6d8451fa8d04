use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::numutil::exact_sqrt;
use crate::exactalg::IntPoly;
use crate::factorz::is_irreducible;

/// `phi_d(x, y) = y^d f(x / y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogenizedForm {
    pub f: IntPoly,
}

impl HomogenizedForm {
    pub fn new(f: &IntPoly) -> Self {
        HomogenizedForm { f: f.clone() }
    }

    pub fn degree(&self) -> usize {
        self.f.deg()
    }

    /// `A = phi_d(1, 0)`, the lead of `f`.
    pub fn lead(&self) -> BigInt {
        self.f.lead()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let d = self.degree();
        let mut acc = BigInt::zero();
        // Horner in x with y-powers: sum c_i x^i y^(d-i)
        let mut ypow = BigInt::from(1);
        for c in self.f.coeffs().iter().rev() {
            acc = acc * x + c * &ypow;
            ypow *= y;
        }
        debug_assert_eq!(self.f.coeffs().len(), d + 1);
        acc
    }
}

/// A solution `A z^2 = phi_d(x, y)` with `y != 0`, `z = root / A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalPoint {
    #[serde(with = "crate::serde_big::bigint")]
    pub x: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub y: BigInt,
    /// `A phi_d(x, y)`, a nonzero square.
    #[serde(with = "crate::serde_big::bigint")]
    pub value: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub root: BigInt,
    #[serde(with = "crate::serde_big::rational")]
    pub z: BigRational,
}

/// All `|x|, |y| <= H`, `y != 0`, with `A phi_d(x, y)` a nonzero square.
///
/// Pairs are coprime for even `d`. For odd `d` scaling `(x, y)` by `s`
/// multiplies the value by `s^d`, which changes its square class, so every
/// pair is tried.
pub fn rational_point_search(f: &IntPoly, height: u64) -> Result<Vec<RationalPoint>> {
    if !is_irreducible(f) {
        return Err(Error::NotIrreducible);
    }
    let form = HomogenizedForm::new(f);
    let a = form.lead();
    let h = height as i64;
    let coprime_only = form.degree().is_multiple_of(2);
    let ys: Vec<i64> = (-h..=h).filter(|&y| y != 0).collect();
    let found: Vec<Vec<RationalPoint>> = ys
        .par_iter()
        .map(|&y| {
            let yb = BigInt::from(y);
            let mut out = Vec::new();
            for x in -h..=h {
                if coprime_only && x.gcd(&y) != 1 {
                    continue;
                }
                let xb = BigInt::from(x);
                let value = &a * form.eval(&xb, &yb);
                if value.is_zero() || value.is_negative() {
                    continue;
                }
                if let Some(root) = exact_sqrt(&value) {
                    let z = BigRational::new(root.clone(), a.clone());
                    out.push(RationalPoint {
                        x: xb,
                        y: yb.clone(),
                        value,
                        root,
                        z,
                    });
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_int_poly;

    fn p(s: &str) -> IntPoly {
        parse_int_poly(s).unwrap()
    }

    #[test]
    fn form_basics() {
        let form = HomogenizedForm::new(&p("3*t^3-2*t+5"));
        assert_eq!(form.eval(&1.into(), &0.into()), BigInt::from(3));
        for x in -3..4 {
            assert_eq!(form.eval(&x.into(), &1.into()), form.f.eval(&x.into()));
        }
        // y^3 f(x/y) at (2, 3): 3*8 - 2*2*9 + 5*27
        assert_eq!(form.eval(&2.into(), &3.into()), BigInt::from(24 - 36 + 135));
    }

    #[test]
    fn cube_root_two_points() {
        let pts = rational_point_search(&p("t^3-2"), 3).unwrap();
        let hit = pts.iter().find(|q| q.x == 3.into() && q.y == 1.into()).expect("(3, 1)");
        assert_eq!(hit.value, BigInt::from(25));
        assert_eq!(hit.root, BigInt::from(5));
        assert!(pts.iter().all(|q| !q.y.is_zero()));
    }

    #[test]
    fn sextic_has_no_small_points() {
        assert!(rational_point_search(&p("t^6-t^4-21*t^2-31"), 50).unwrap().is_empty());
    }

    #[test]
    fn rejects_reducible() {
        assert!(matches!(rational_point_search(&p("t^2-1"), 3), Err(Error::NotIrreducible)));
    }
}
