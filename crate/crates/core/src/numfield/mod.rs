//! Arithmetic in `K = Q[t]/(f)` for an irreducible, possibly non-monic `f`.
//!
//! Elements are rational polynomials of degree below `deg f`, read in the
//! power basis `1, α, …, α^(d-1)` of a root `α`.

mod linalg;
mod square;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::intpoly::pow_big;
use crate::exactalg::{resultant_int, IntPoly, RatPoly};
use crate::factorz::is_irreducible;

pub use square::{is_square, is_square_with, SquareBudget, SquareFilter, SquareResult};

#[derive(Debug)]
struct FieldData {
    defining: IntPoly,
    modulus: RatPoly,
}

/// `Q(α)` with `α` a root of the defining polynomial. Cheap to clone.
#[derive(Clone)]
pub struct NumberField {
    data: Arc<FieldData>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.data.defining)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.defining == other.data.defining
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Certifies irreducibility of `f` and stores its primitive part with
    /// positive lead.
    pub fn new(f: &IntPoly) -> Result<Self> {
        let d = f.degree().ok_or(Error::ZeroPolynomial)?;
        if d < 2 {
            return Err(Error::DegreeTooSmall { needed: 2, got: d });
        }
        if !is_irreducible(f) {
            return Err(Error::NotIrreducible);
        }
        Ok(Self::new_unchecked(f))
    }

    /// Skips the irreducibility certificate; for callers that already hold one.
    pub fn new_unchecked(f: &IntPoly) -> Self {
        let defining = f.normalized();
        let modulus = RatPoly::from(defining.clone());
        NumberField {
            data: Arc::new(FieldData { defining, modulus }),
        }
    }

    pub fn defining(&self) -> &IntPoly {
        &self.data.defining
    }

    pub fn degree(&self) -> usize {
        self.data.defining.deg()
    }

    pub fn lead(&self) -> BigInt {
        self.data.defining.lead()
    }

    pub fn element(&self, p: &RatPoly) -> FieldElement {
        let poly = if p.degree().is_some_and(|d| d >= self.degree()) {
            p.rem(&self.data.modulus).expect("nonzero modulus")
        } else {
            p.clone()
        };
        FieldElement {
            field: self.clone(),
            poly,
        }
    }

    pub fn from_coords(&self, coords: &[BigRational]) -> FieldElement {
        assert!(coords.len() <= self.degree(), "too many coordinates");
        self.element(&RatPoly::from_coeffs(coords))
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElement {
        self.element(&RatPoly::constant(q))
    }

    pub fn zero(&self) -> FieldElement {
        self.element(&RatPoly::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The root `α`.
    pub fn generator(&self) -> FieldElement {
        self.element(&RatPoly::x())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    poly: RatPoly,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display_var("a"))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display_var("a"))
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// The representative polynomial, of degree below the field degree.
    pub fn as_poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn coords(&self) -> Vec<BigRational> {
        (0..self.field.degree()).map(|i| self.poly.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.poly.degree().is_none_or(|d| d == 0)
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.element(&(&self.poly + &other.poly)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.element(&(&self.poly - &other.poly)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.element(&(&self.poly * &other.poly)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.mul(&other.inverse()?)
    }

    pub fn neg(&self) -> FieldElement {
        self.field.element(&-self.poly.clone())
    }

    pub fn scale(&self, q: &BigRational) -> FieldElement {
        self.field.element(&self.poly.scale(q))
    }

    pub fn add_rational(&self, q: &BigRational) -> FieldElement {
        self.field.element(&(&self.poly + &RatPoly::constant(q.clone())))
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.poly.ext_gcd(&self.field.data.modulus);
        // g is a unit because the modulus is irreducible
        debug_assert_eq!(g.degree(), Some(0));
        Ok(self.field.element(&s.scale(&g.coeff(0).recip())))
    }

    /// Value of `p(self)` for a rational polynomial `p`.
    pub fn apply(&self, p: &RatPoly) -> FieldElement {
        let mut acc = self.field.zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).expect("same field").add_rational(c);
        }
        acc
    }

    /// `Norm_{K/Q}`, from `res(f, num) / (lc(f)^deg num * den^d)`.
    pub fn norm(&self) -> BigRational {
        let d = self.field.degree() as u32;
        let Some(k) = self.poly.degree() else {
            return BigRational::zero();
        };
        let f = self.field.defining();
        let num = self.poly.num();
        let r = resultant_int(f, num).expect("both nonzero");
        let den = pow_big(&f.lead(), k as u32) * pow_big(self.poly.den(), d);
        BigRational::new(r, den)
    }

    /// `prod (X - σ(x))` over the embeddings, monic of degree `d`, by
    /// interpolating `Norm(j - x)` at `j = 0..=d`.
    pub fn charpoly(&self) -> RatPoly {
        let d = self.field.degree();
        let xs: Vec<BigRational> = (0..=d as i64).map(|j| BigRational::from_integer(j.into())).collect();
        let ys: Vec<BigRational> = xs.iter().map(|j| self.neg().add_rational(j).norm()).collect();
        RatPoly::interpolate(&xs, &ys)
    }

    /// Primitive integer minimal polynomial with positive lead.
    pub fn minimal_polynomial(&self) -> IntPoly {
        let chi = self.charpoly();
        let g = chi.gcd(&chi.derivative());
        let m = chi.divide_exact(&g).expect("gcd divides");
        m.to_primitive().expect("nonzero").1
    }

    /// Degree of `Q(x)` over Q.
    pub fn degree(&self) -> usize {
        self.minimal_polynomial().deg()
    }

    pub fn is_generator(&self) -> bool {
        self.degree() == self.field.degree()
    }

    /// `g` of degree below `d` with `g(generator) = self`.
    pub fn express_in_powers(&self, generator: &FieldElement) -> Result<RatPoly> {
        self.check(generator)?;
        let d = self.field.degree();
        let mut cols = Vec::with_capacity(d);
        let mut pw = self.field.one();
        for _ in 0..d {
            cols.push(pw.coords());
            pw = pw.mul(generator)?;
        }
        let mat: Vec<Vec<BigRational>> = (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect();
        let sol = linalg::solve(mat, self.coords()).ok_or(Error::NotAGenerator)?;
        Ok(RatPoly::from_coeffs(&sol))
    }

    /// Flips the sign so that the first nonzero coordinate is positive.
    pub fn sign_normalized(&self) -> FieldElement {
        let first = self.coords().into_iter().find(|c| !c.is_zero());
        match first {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_int_poly;

    fn field(s: &str) -> NumberField {
        NumberField::new(&parse_int_poly(s).unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        let k = field("t^2+1");
        let x = k.generator().add_rational(&q(2, 1));
        assert_eq!(x.pow(3).coords(), vec![q(2, 1), q(11, 1)]);
        assert_eq!(x.mul(&k.one()).unwrap(), x);
        let k3 = field("t^3-2");
        let inv = k3.generator().inverse().unwrap();
        assert_eq!(inv.coords(), vec![q(0, 1), q(0, 1), q(1, 2)]);
        assert!(matches!(k3.zero().inverse(), Err(Error::DivisionByZero)));
        assert!(matches!(k.one().add(&k3.one()), Err(Error::FieldMismatch)));
    }

    #[test]
    fn construction_guards() {
        assert!(matches!(
            NumberField::new(&parse_int_poly("t^2-1").unwrap()),
            Err(Error::NotIrreducible)
        ));
        assert!(matches!(
            NumberField::new(&parse_int_poly("t+1").unwrap()),
            Err(Error::DegreeTooSmall { .. })
        ));
    }

    /// Norm of `A α + B` in `Q[t]/(a t^2 + b t + c)` from the conjugates:
    /// `(Aα1 + B)(Aα2 + B) = A^2 α1 α2 + AB(α1 + α2) + B^2` with Vieta.
    fn vieta_norm(a: i64, b: i64, c: i64, big_a: i64, big_b: i64) -> BigRational {
        let prod = q(c, a);
        let sum = q(-b, a);
        prod * q(big_a * big_a, 1) + sum * q(big_a * big_b, 1) + q(big_b * big_b, 1)
    }

    #[test]
    fn norms() {
        let k = field("t^2+1");
        assert_eq!(k.generator().add_rational(&q(2, 1)).norm(), q(5, 1));
        assert_eq!(k.one().norm(), q(1, 1));
        let k = field("4*t^2+4*t+9");
        let x = k.generator().add_rational(&q(3, 1));
        assert_eq!(vieta_norm(4, 4, 9, 1, 3), q(33, 4));
        assert_eq!(x.norm(), q(33, 4));
        for (aa, bb) in [(2, -7), (-3, 5), (11, 2)] {
            let y = k.generator().scale(&q(aa, 1)).add_rational(&q(bb, 1));
            assert_eq!(y.norm(), vieta_norm(4, 4, 9, aa, bb));
            // closed form (a B^2 - b A B + c A^2) / a
            assert_eq!(y.norm(), q(4 * bb * bb - 4 * aa * bb + 9 * aa * aa, 4));
        }
    }

    #[test]
    fn minimal_polynomials() {
        let k = field("t^2+1");
        assert_eq!(k.generator().pow(2).minimal_polynomial(), parse_int_poly("t+1").unwrap());
        assert_eq!(k.generator().minimal_polynomial(), parse_int_poly("t^2+1").unwrap());
        let k = field("t^4+4*t^2-t+1");
        let gamma = k.generator().pow(2).add_rational(&q(1, 1));
        let m = gamma.minimal_polynomial();
        assert_eq!(m, parse_int_poly("t^4+4*t^3-9*t+5").unwrap());
        let composed = k.defining().compose(&parse_int_poly("t^2+2*t-2").unwrap());
        assert!(composed.divisible_by(&m));
        assert!(gamma.apply(&RatPoly::from(m)).is_zero());
    }

    #[test]
    fn express_in_powers_examples() {
        let k = field("t^3-2");
        let alpha = k.generator();
        assert_eq!(alpha.express_in_powers(&alpha).unwrap(), RatPoly::x());
        let beta = alpha.pow(2);
        let g = alpha.express_in_powers(&beta).unwrap();
        assert_eq!(g, RatPoly::from_coeffs(&[q(0, 1), q(0, 1), q(1, 2)]));
        let g = alpha.express_in_powers(&alpha.inverse().unwrap()).unwrap();
        assert_eq!(g, RatPoly::from_coeffs(&[q(0, 1), q(0, 1), q(2, 1)]));
        assert!(matches!(
            alpha.express_in_powers(&k.from_int(3)),
            Err(Error::NotAGenerator)
        ));
    }
}
