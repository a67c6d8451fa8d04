use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial over the integers, coefficients in ascending
/// degree order. The zero polynomial is the empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c;
        IntPoly { coeffs }
    }

    /// The linear polynomial `a t + z`.
    pub fn linear(a: BigInt, z: BigInt) -> Self {
        Self::new(vec![z, a])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree treating the zero polynomial as degree 0; for callers that have
    /// already excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn lead_ref(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `c`; `None` unless all divide exactly.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly { coeffs: out })
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Horner evaluation that skips runs of zero coefficients, so sparse
    /// polynomials of huge degree evaluate in time proportional to the
    /// output size.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut gap = 0u32;
        let mut started = false;
        for c in self.coeffs.iter().rev() {
            if started {
                gap += 1;
            }
            if c.is_zero() {
                continue;
            }
            if started {
                acc = acc * pow_big(x, gap) + c;
            } else {
                acc = c.clone();
                started = true;
            }
            gap = 0;
        }
        if started && gap > 0 {
            acc *= pow_big(x, gap);
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        // Homogenize: sum c_i n^i d^(deg-i) / d^deg.
        if self.is_zero() {
            return BigRational::zero();
        }
        let n = x.numer();
        let d = x.denom();
        if d.is_one() {
            return BigRational::from_integer(self.eval(n));
        }
        let deg = self.deg();
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // acc = sum c_i n^i d^(deg-i)
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        super::numutil::ratio(acc, pow_big(d, deg as u32))
    }

    /// Evaluates modulo a machine-sized prime.
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc: u64 = 0;
        for c in self.coeffs.iter().rev() {
            let cm = mod_u64(c, &pb);
            acc = ((acc as u128 * x as u128 + cm as u128) % p as u128) as u64;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Returns `self(inner(t))`.
    pub fn compose(&self, inner: &IntPoly) -> Self {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc = acc.add_constant(c);
        }
        acc
    }

    /// `self(a t + z)`, cheaper than general composition.
    pub fn compose_linear(&self, a: &BigInt, z: &BigInt) -> Self {
        let mut acc: Vec<BigInt> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (a t + z) + c
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, v) in acc.iter().enumerate() {
                next[i] += v * z;
                next[i + 1] += v * a;
            }
            next[0] += c;
            acc = next;
        }
        Self::new(acc)
    }

    pub fn add_constant(&self, c: &BigInt) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(c.clone());
        } else {
            coeffs[0] += c;
        }
        Self::new(coeffs)
    }

    /// `t^d p(1/t)` for `d = deg p`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `p(-t)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(t^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `(content, primitive part)`; the content is positive, so the primitive
    /// part keeps the sign of the input.
    pub fn content_primitive(&self) -> Result<(BigInt, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let c = self.content();
        let pp = self.div_scalar_exact(&c).expect("content divides");
        Ok((c, pp))
    }

    pub fn primitive_part(&self) -> IntPoly {
        match self.content_primitive() {
            Ok((_, p)) => p,
            Err(_) => IntPoly::zero(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn normalized(&self) -> IntPoly {
        let p = self.primitive_part();
        if p.lead().is_negative() {
            -p
        } else {
            p
        }
    }

    /// Pseudo-remainder: `lc(d)^(deg a - deg d + 1) a = q d + r`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> Result<IntPoly> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return Ok(self.clone());
        }
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        let mut e = self.deg() - dd + 1;
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone();
            for v in r.iter_mut() {
                *v *= &lc;
            }
            let off = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[off + i] -= &c * dc;
            }
            e -= 1;
            r.pop();
            while r.last().is_some_and(|v| v.is_zero()) {
                r.pop();
            }
        }
        let mut out = IntPoly::new(r);
        if e > 0 {
            out = out.scale(&pow_big(&lc, e as u32));
        }
        Ok(out)
    }

    /// Division over the integers. Succeeds with `(q, r)` when every
    /// intermediate quotient coefficient is integral (always so for a monic
    /// divisor).
    pub fn div_rem_integral(&self, d: &IntPoly) -> Result<Option<(IntPoly, IntPoly)>> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return Ok(Some((IntPoly::zero(), self.clone())));
        }
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return Ok(None);
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok(Some((IntPoly::new(q), IntPoly::new(r))))
    }

    /// Exact division over the integers; `NotDivisible` if the quotient is not
    /// an integer polynomial or the remainder is nonzero.
    pub fn divide_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        match self.div_rem_integral(d)? {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::NotDivisible),
        }
    }

    /// Whether `d` divides `self` in Z[t]; a cheap constant-term and lead
    /// check runs before the division.
    pub fn divisible_by(&self, d: &IntPoly) -> bool {
        if d.is_zero() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        if self.deg() < d.deg() {
            return false;
        }
        if !(self.lead() % d.lead()).is_zero() {
            return false;
        }
        let (c0, d0) = (self.coeff(0), d.coeff(0));
        if !d0.is_zero() && !(c0 % d0).is_zero() {
            return false;
        }
        matches!(self.div_rem_integral(d), Ok(Some((_, r))) if r.is_zero())
    }

    /// Primitive gcd over Z[t] with positive leading coefficient, times the
    /// gcd of the contents.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.normalized_with_content();
        }
        if other.is_zero() {
            return self.normalized_with_content();
        }
        let c = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("nonzero divisor");
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        a.normalized().scale(&c)
    }

    fn normalized_with_content(&self) -> IntPoly {
        if self.lead().is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Lexicographic comparison from the top coefficient down, after degree.
    pub fn canonical_cmp(&self, other: &IntPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Euclidean norm squared of the coefficient vector.
    pub fn norm2_squared(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Displays with a chosen variable name.
    pub fn display_var<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct D<'a>(&'a IntPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                super::text::write_int_poly(f, self.0, self.1)
            }
        }
        D(self, var)
    }
}

pub(crate) fn pow_big(x: &BigInt, e: u32) -> BigInt {
    num_traits::pow::pow(x.clone(), e as usize)
}

pub(crate) fn mod_u64(c: &BigInt, p: &BigInt) -> u64 {
    let r = c.mod_floor(p);
    u64::try_from(r).expect("residue fits in u64")
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_int_poly(f, self, "t")
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut c = long.coeffs.clone();
        for (a, b) in c.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::new(c)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = self.coeffs.clone();
        c.resize(n, BigInt::zero());
        for (a, b) in c.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        IntPoly::new(c)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for IntPoly {
    fn product<I: Iterator<Item = IntPoly>>(iter: I) -> IntPoly {
        iter.fold(IntPoly::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn ring_ops_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(&p(&[3, 0, 2]) + &IntPoly::zero(), p(&[3, 0, 2]));
        assert_eq!(&p(&[1, 0, 1]) * &p(&[2, 2, 1]), p(&[2, 2, 3, 2, 1]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntPoly::zero());
        assert_eq!(-p(&[1, -2]), p(&[-1, 2]));
        assert_eq!(p(&[1, 2]).scale(&BigInt::from(3)), p(&[3, 6]));
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(p(&[0, 0, 0]), IntPoly::zero());
        assert_eq!(p(&[5]).degree(), Some(0));
        assert!(IntPoly::zero().content_primitive().is_err());
    }

    #[test]
    fn content_primitive_examples() {
        let (c, pp) = p(&[-2, 0, 0, 0, 0, 0, 2]).content_primitive().unwrap();
        assert_eq!((c, pp), (BigInt::from(2), p(&[-1, 0, 0, 0, 0, 0, 1])));
        let (c, pp) = p(&[4, 10, 6]).content_primitive().unwrap();
        assert_eq!((c, pp), (BigInt::from(2), p(&[2, 5, 3])));
        let (c, pp) = p(&[-2, 0, 0, 1]).content_primitive().unwrap();
        assert_eq!((c, pp), (BigInt::one(), p(&[-2, 0, 0, 1])));
    }

    #[test]
    fn divide_exact_examples() {
        assert_eq!(p(&[-1, 0, 1]).divide_exact(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        assert!(matches!(
            p(&[1, 0, 1]).divide_exact(&p(&[0, 1])),
            Err(Error::NotDivisible)
        ));
        assert!(matches!(
            p(&[1, 0, 1]).divide_exact(&IntPoly::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn sparse_eval_matches_dense() {
        let q = IntPoly::monomial(BigInt::from(2), 40).add_constant(&BigInt::from(-3));
        let x = BigInt::from(7);
        let expect = BigInt::from(2) * pow_big(&x, 40) - 3;
        assert_eq!(q.eval(&x), expect);
        let r = p(&[0, 0, 5]);
        assert_eq!(r.eval(&BigInt::from(3)), BigInt::from(45));
        assert_eq!(IntPoly::zero().eval(&x), BigInt::zero());
    }

    #[test]
    fn rational_eval() {
        let q = p(&[1, 0, 1]);
        let v = q.eval_rational(&BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(v, BigRational::new(BigInt::from(5), BigInt::from(4)));
    }

    #[test]
    fn gcd_and_pseudo_rem() {
        let a = &p(&[1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        let g = p(&[2, 4]).gcd(&p(&[4, 8, 0]));
        assert_eq!(g, p(&[2, 4]));
    }

    #[test]
    fn compose_linear_matches_compose() {
        let f = p(&[1, -4, 3, 2]);
        let a = BigInt::from(11);
        let z = BigInt::from(7);
        assert_eq!(
            f.compose_linear(&a, &z),
            f.compose(&IntPoly::linear(a.clone(), z.clone()))
        );
    }
}
