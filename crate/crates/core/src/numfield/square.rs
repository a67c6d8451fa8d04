//! Deciding whether an element of `K` is a square.
//!
//! A modular filter rejects most non-squares cheaply. Survivors go to an
//! exact test: for a generator `x` of `K`, `x` is a square exactly when the
//! characteristic polynomial evaluated at `X^2` has an irreducible factor of
//! degree `d`, and that factor hands back the root.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FieldElement, NumberField};
use crate::error::{Error, Result};
use crate::exactalg::intpoly::mod_u64;
use crate::exactalg::numutil::{next_prime, pow_mod_u64};
use crate::exactalg::RatPoly;
use crate::factorz::{factor_over_z, Fp};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SquareResult {
    /// A root `w` with `w^2 = x`, sign-normalized.
    Yes(FieldElement),
    No,
    /// The exact stage was over budget; nothing is claimed.
    Unknown,
}

/// Limits for the exact stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareBudget {
    /// Largest degree `2d` of the polynomial handed to the factorizer.
    pub max_degree: usize,
    /// Largest coefficient size, in bits, of that polynomial.
    pub max_bits: u64,
    /// Primes with a root of `f` consulted by the modular filter.
    pub filter_primes: usize,
}

impl Default for SquareBudget {
    fn default() -> Self {
        SquareBudget {
            max_degree: 64,
            max_bits: 8192,
            filter_primes: 40,
        }
    }
}

/// Good primes of `K` paired with the roots of the defining polynomial
/// modulo each. Reusable across many elements of the same field.
#[derive(Debug, Clone)]
pub struct SquareFilter {
    primes: Vec<(u64, Vec<u64>)>,
}

impl SquareFilter {
    pub fn new(field: &NumberField, count: usize) -> Self {
        let f = field.defining();
        let lead = f.lead();
        let mut primes = Vec::with_capacity(count);
        let mut p = 2;
        // bounded scan; every irreducible f has roots mod a positive density of primes
        let mut scanned = 0;
        while primes.len() < count && scanned < 20_000 {
            p = next_prime(p);
            scanned += 1;
            if mod_u64(&lead, &BigInt::from(p)) == 0 {
                continue;
            }
            let fp = Fp::new(p);
            let r = fp.reduce(f);
            if fp.gcd(&r, &fp.derivative(&r)) != vec![1] {
                continue;
            }
            let roots = fp.roots(&r);
            if !roots.is_empty() {
                primes.push((p, roots));
            }
        }
        SquareFilter { primes }
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// `false` proves `x` is not a square; `true` is inconclusive.
    pub fn passes(&self, x: &FieldElement) -> bool {
        let poly = x.as_poly();
        let den = poly.den();
        self.primes.iter().all(|(p, roots)| {
            let pb = BigInt::from(*p);
            let dm = mod_u64(den, &pb);
            if dm == 0 {
                return true;
            }
            // num/den and num*den have the same quadratic character
            roots.iter().all(|&r| {
                let v = poly.num().eval_mod(r, *p);
                qr(((v as u128 * dm as u128) % *p as u128) as u64, *p)
            })
        })
    }

    /// Filter for `u + v α` with integer `u`, `v`, avoiding field arithmetic.
    pub fn passes_linear(&self, u: &BigInt, v: &BigInt) -> bool {
        self.primes.iter().all(|(p, roots)| {
            let pb = BigInt::from(*p);
            let (u, v) = (mod_u64(u, &pb), mod_u64(v, &pb));
            roots.iter().all(|&r| {
                let val = ((u as u128 + v as u128 * r as u128) % *p as u128) as u64;
                qr(val, *p)
            })
        })
    }
}

/// Zero counts as a residue.
fn qr(a: u64, p: u64) -> bool {
    if p == 2 || a == 0 {
        return true;
    }
    pow_mod_u64(a, (p - 1) / 2, p) == 1
}

pub fn is_square(x: &FieldElement) -> Result<SquareResult> {
    is_square_with(x, SquareBudget::default(), None)
}

/// As [`is_square`], optionally reusing a prepared filter.
pub fn is_square_with(
    x: &FieldElement,
    budget: SquareBudget,
    filter: Option<&SquareFilter>,
) -> Result<SquareResult> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let owned;
    let filter = match filter {
        Some(f) => f,
        None => {
            owned = SquareFilter::new(x.field(), budget.filter_primes);
            &owned
        }
    };
    if !filter.passes(x) {
        return Ok(SquareResult::No);
    }
    exact_stage(x, budget)
}

fn exact_stage(x: &FieldElement, budget: SquareBudget) -> Result<SquareResult> {
    let field = x.field();
    let d = field.degree();
    if 2 * d > budget.max_degree {
        return Ok(SquareResult::Unknown);
    }
    if x.is_rational() {
        return Ok(rational_square(x));
    }
    // Rescale by a square s^2 until the element generates K.
    let alpha = field.generator();
    let mut scaled = None;
    for j in 0..=(4 * d as i64 + 4) {
        let s = alpha.scale(&BigRational::from_integer(j.into())).add_rational(&BigRational::one());
        let candidate = x.mul(&s.pow(2))?;
        if candidate.is_generator() {
            scaled = Some((s, candidate));
            break;
        }
    }
    let Some((s, xs)) = scaled else {
        return Ok(SquareResult::Unknown);
    };
    let chi = xs.charpoly();
    let (_, prim) = chi.to_primitive()?;
    let lifted = prim.inflate(2);
    if lifted.max_coeff_bits() > budget.max_bits {
        return Ok(SquareResult::Unknown);
    }
    let fz = match factor_over_z(&lifted) {
        Ok(z) => z,
        Err(Error::RecombinationLimit(_)) => return Ok(SquareResult::Unknown),
        Err(e) => return Err(e),
    };
    for (m, _) in fz.factors.iter().filter(|(m, _)| m.deg() == d) {
        if let Some(w) = root_from_factor(&RatPoly::from(m.clone()), &xs)? {
            let root = w.div(&s)?.sign_normalized();
            debug_assert_eq!(&root.mul(&root)?, x);
            return Ok(SquareResult::Yes(root));
        }
    }
    Ok(SquareResult::No)
}

/// Reduces `m(X)` modulo `X^2 - x` over `K` to `u + v X`; a common root
/// forces `w = -u / v`.
fn root_from_factor(m: &RatPoly, x: &FieldElement) -> Result<Option<FieldElement>> {
    let field = x.field();
    // powers X^i = p_i + q_i X modulo X^2 - x
    let (mut p, mut q) = (field.one(), field.zero());
    let (mut u, mut v) = (field.zero(), field.zero());
    for c in m.coeffs() {
        u = u.add(&p.scale(&c))?;
        v = v.add(&q.scale(&c))?;
        let np = q.mul(x)?;
        q = p;
        p = np;
    }
    if v.is_zero() {
        return Ok(None);
    }
    let w = u.neg().div(&v)?;
    Ok((w.mul(&w)? == *x).then_some(w))
}

fn rational_square(x: &FieldElement) -> SquareResult {
    let c = x.as_poly().coeff(0);
    let root = |n: &BigInt| crate::exactalg::numutil::exact_sqrt(n);
    match (root(c.numer()), root(c.denom())) {
        (Some(a), Some(b)) => SquareResult::Yes(x.field().from_rational(BigRational::new(a, b))),
        _ if c.is_zero() => SquareResult::Yes(x.field().zero()),
        _ => SquareResult::No,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_int_poly;

    fn field(s: &str) -> NumberField {
        NumberField::new(&parse_int_poly(s).unwrap()).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn gaussian_examples() {
        let k = field("t^2+1");
        let two_i = k.generator().scale(&q(2));
        match is_square(&two_i).unwrap() {
            SquareResult::Yes(w) => assert_eq!(w.coords(), vec![q(1), q(1)]),
            other => panic!("{other:?}"),
        }
        assert_eq!(is_square(&k.one()).unwrap(), SquareResult::Yes(k.one()));
        assert_eq!(is_square(&k.generator()).unwrap(), SquareResult::No);
        assert!(matches!(is_square(&k.zero()), Err(Error::ZeroElement)));
    }

    #[test]
    fn quartic_discriminant_element_is_not_square() {
        let k = field("t^4+t^2+2*t+3");
        let x = k.generator().scale(&q(4));
        assert_eq!(is_square(&x).unwrap(), SquareResult::No);
        // exact stage alone agrees with the filter
        assert_eq!(exact_stage(&x, SquareBudget::default()).unwrap(), SquareResult::No);
    }

    #[test]
    fn planted_squares_are_found() {
        for (f, w) in [
            ("t^3-2", [1i64, 1, 0]),
            ("t^3-t-1", [2, -1, 3]),
            ("2*t^3+3*t+1", [0, 1, 1]),
            ("t^4+t^2+2*t+3", [1, 0, -2]),
        ] {
            let k = field(f);
            let w = k.from_coords(&w.map(q));
            let x = w.mul(&w).unwrap();
            match is_square(&x).unwrap() {
                SquareResult::Yes(r) => assert_eq!(r.mul(&r).unwrap(), x),
                other => panic!("{f}: {other:?}"),
            }
            // the filter never rejects a true square
            assert!(SquareFilter::new(&k, 40).passes(&x));
        }
    }

    #[test]
    fn non_generator_rescaling() {
        // rational elements and elements of proper subfields
        let k = field("t^4+1");
        let a2 = k.generator().pow(2); // i, of degree 2
        match is_square(&a2).unwrap() {
            SquareResult::Yes(r) => assert_eq!(r.mul(&r).unwrap(), a2),
            other => panic!("{other:?}"),
        }
        let three = k.from_int(3);
        assert_eq!(is_square(&k.from_int(4)).unwrap(), SquareResult::Yes(k.from_int(2)));
        assert!(matches!(is_square(&three).unwrap(), SquareResult::No));
    }

    #[test]
    fn linear_filter_matches_general_filter() {
        let k = field("t^4+t^2+2*t+3");
        let filter = SquareFilter::new(&k, 40);
        assert_eq!(filter.len(), 40);
        for (u, v) in [(1i64, 4i64), (-7, 8), (0, 4), (13, -12)] {
            let x = k.generator().scale(&q(v)).add_rational(&q(u));
            assert_eq!(filter.passes(&x), filter.passes_linear(&u.into(), &v.into()));
        }
    }
}
