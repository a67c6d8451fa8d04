use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::{pow_big, IntPoly};
use crate::error::{Error, Result};

/// Polynomial over the rationals stored as `num / den` with `den >= 1` and
/// `gcd(content(num), den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    num: IntPoly,
    den: BigInt,
}

impl RatPoly {
    pub fn new(num: IntPoly, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: IntPoly, den: BigInt) -> Self {
        if num.is_zero() {
            return RatPoly {
                num,
                den: BigInt::one(),
            };
        }
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        let g = num.content().gcd(&den);
        if g.is_one() {
            RatPoly { num, den }
        } else {
            RatPoly {
                num: num.div_scalar_exact(&g).expect("gcd divides"),
                den: den / g,
            }
        }
    }

    pub fn zero() -> Self {
        RatPoly::from(IntPoly::zero())
    }

    pub fn one() -> Self {
        RatPoly::from(IntPoly::one())
    }

    pub fn x() -> Self {
        RatPoly::from(IntPoly::x())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::normalize(IntPoly::constant(c.numer().clone()), c.denom().clone())
    }

    pub fn from_coeffs(coeffs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::normalize(IntPoly::new(num), den)
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num.coeff(i), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.coeffs().len()).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.num.degree()
    }

    pub fn deg(&self) -> usize {
        self.num.deg()
    }

    pub fn lead(&self) -> BigRational {
        BigRational::new(self.num.lead(), self.den.clone())
    }

    /// The integer polynomial, if the denominator is one.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::normalize(self.num.scale(c.numer()), &self.den * c.denom())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let (n, d) = self.num.eval_rational(x).into_raw();
        super::numutil::ratio(n, d * &self.den)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigRational {
        super::numutil::ratio(self.num.eval(x), self.den.clone())
    }

    pub fn derivative(&self) -> Self {
        Self::normalize(self.num.derivative(), self.den.clone())
    }

    /// Returns `self(inner(t))`. Works on the homogenized numerator so the
    /// only rational operation is a final division.
    pub fn compose(&self, inner: &RatPoly) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // self(N/D) = sum c_i N^i D^(n-i) / (den * D^n)
        let n = self.deg();
        let big_d = IntPoly::constant(inner.den.clone());
        let mut acc = IntPoly::zero();
        let mut dpow = IntPoly::one();
        for c in self.num.coeffs().iter().rev() {
            acc = &(&acc * &inner.num) + &dpow.scale(c);
            dpow = &dpow * &big_d;
        }
        Self::normalize(acc, &self.den * pow_big(&inner.den, n as u32))
    }

    /// Polynomial division over Q.
    pub fn div_rem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() || self.deg() < d.deg() {
            return Ok((RatPoly::zero(), self.clone()));
        }
        // lc(d)^e * a = q d + r with integer arithmetic, then rescale.
        let e = (self.deg() - d.deg() + 1) as u32;
        let lc = d.num.lead();
        let scaled = self.num.scale(&pow_big(&lc, e));
        let (q, r) = scaled
            .div_rem_integral(&d.num)?
            .expect("scaled dividend divides integrally");
        let factor = pow_big(&lc, e);
        let q = RatPoly::normalize(q.scale(&d.den), &self.den * &factor);
        let r = RatPoly::normalize(r, &self.den * &factor);
        Ok((q, r))
    }

    pub fn rem(&self, d: &RatPoly) -> Result<RatPoly> {
        Ok(self.div_rem(d)?.1)
    }

    /// Returns `r` with `q * r = self` exactly.
    pub fn divide_exact(&self, q: &RatPoly) -> Result<RatPoly> {
        let (quo, rem) = self.div_rem(q)?;
        if rem.is_zero() {
            Ok(quo)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Monic gcd over Q (zero if both are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let g = self.num.gcd(&other.num);
        if g.is_zero() {
            return g.into();
        }
        RatPoly::from(g.primitive_part()).make_monic()
    }

    pub fn make_monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        Self::normalize(self.num.clone(), self.num.lead())
    }

    /// Extended Euclid over Q: `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, other: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lead().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// `(c, p)` with `self = c * p`, `p` primitive integral with positive lead.
    pub fn to_primitive(&self) -> Result<(BigRational, IntPoly)> {
        let (content, pp) = self.num.content_primitive()?;
        let (content, pp) = if pp.lead().is_negative() {
            (-content, -pp)
        } else {
            (content, pp)
        };
        Ok((BigRational::new(content, self.den.clone()), pp))
    }

    /// The polynomial of degree below `xs.len()` through the given points
    /// (Newton divided differences). Abscissas must be distinct.
    pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> RatPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<BigRational> = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        let mut acc = RatPoly::zero();
        for i in (0..n).rev() {
            let lin = RatPoly::from_coeffs(&[-xs[i].clone(), BigRational::one()]);
            acc = &(&acc * &lin) + &RatPoly::constant(dd[i].clone());
        }
        acc
    }

    pub fn display_var<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        struct D<'a>(&'a RatPoly, &'a str);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                super::text::write_rat_poly(f, self.0, self.1)
            }
        }
        D(self, var)
    }
}

impl From<IntPoly> for RatPoly {
    fn from(num: IntPoly) -> Self {
        RatPoly {
            num,
            den: BigInt::one(),
        }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::text::write_rat_poly(f, self, "t")
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let l = self.den.lcm(&rhs.den);
        let a = self.num.scale(&(&l / &self.den));
        let b = rhs.num.scale(&(&l / &rhs.den));
        RatPoly::normalize(&a + &b, l)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        self + &(-rhs)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        RatPoly::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
