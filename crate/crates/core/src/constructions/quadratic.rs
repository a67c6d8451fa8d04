//! Quadratic polynomials `f = a t^2 + b t + c`.
//!
//! With `alpha` a root of `f`, an element `beta = m a alpha + n` of prime
//! power norm gives `beta^k = A alpha + B`. Then `g = ((A t + z)^k - B) / A`
//! for `z^k = B mod A`, and `f(g(t)) = (a / A^2) prod_{d | k} h_d(A t + z)`
//! where `h_d(s) = prod (s - zeta beta')` over primitive `d`-th roots of
//! unity `zeta` and conjugates `beta'` of `beta`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::binomial::{binomial_product_construct, Binomial};
use super::certificate::{Certificate, FactorExpr, Method};
use super::verify::finish;
use crate::error::{Error, Result, SeedAttempt};
use crate::exactalg::cyclotomic::cyclotomic;
use crate::exactalg::intpoly::pow_big;
use crate::exactalg::numutil::{
    crt_combine, divisors, euler_phi, exact_sqrt, mod_inverse, next_prime, primes_below, small_factor,
};
use crate::exactalg::resultant::resultant_int;
use crate::exactalg::{IntPoly, RatPoly};
use crate::factorz::{factor_over_z, Fp};
use crate::numfield::NumberField;

/// The data that determines a quadratic certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSeed {
    /// The primitive quadratic the construction ran on.
    pub f: IntPoly,
    pub p: u64,
    pub h: u32,
    #[serde(with = "crate::serde_big::bigint")]
    pub m: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub n: BigInt,
    pub k: u64,
    #[serde(rename = "A", with = "crate::serde_big::bigint")]
    pub big_a: BigInt,
    #[serde(rename = "B", with = "crate::serde_big::bigint")]
    pub big_b: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub z: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticBudget {
    /// Largest exponent `h` tried for the norm `p^h`.
    pub max_exponent: u32,
    /// Largest `m` tried for each `h`.
    pub max_m: u64,
    /// Split primes tried before giving up.
    pub max_primes: usize,
}

impl Default for QuadraticBudget {
    fn default() -> Self {
        QuadraticBudget {
            max_exponent: 24,
            max_m: 200_000,
            max_primes: 8,
        }
    }
}

struct Quad {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    disc: BigInt,
}

impl Quad {
    fn new(f: &IntPoly) -> Result<Self> {
        if f.deg() != 2 {
            return Err(Error::BadParameters(format!("expected a quadratic, got degree {}", f.deg())));
        }
        let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        Ok(Quad { a, b, c, disc })
    }

    /// `Norm(m a alpha + n) = n^2 - b m n + a c m^2`.
    fn norm(&self, m: &BigInt, n: &BigInt) -> BigInt {
        n * n - &self.b * m * n + &self.a * &self.c * m * m
    }
}

/// Product of the primes below `x` not dividing `2 a phi(a)`.
pub fn exponent_k(a: &BigInt, x: u64) -> Result<u64> {
    let a_abs = a
        .abs()
        .to_u64()
        .ok_or_else(|| Error::BadParameters("leading coefficient too large".into()))?;
    let phi_a = euler_phi(a_abs);
    let mut k: u64 = 1;
    for q in primes_below(x) {
        if q == 2 || a_abs % q == 0 || phi_a.is_multiple_of(q) {
            continue;
        }
        k = k
            .checked_mul(q)
            .ok_or_else(|| Error::BudgetExceeded(format!("k overflows for X = {x}")))?;
    }
    Ok(k)
}

fn is_split(f: &IntPoly, quad: &Quad, p: u64) -> bool {
    let pb = BigInt::from(p);
    if (&quad.a * &quad.disc).mod_floor(&pb).is_zero() {
        return false;
    }
    let fp = Fp::new(p);
    fp.roots(&fp.reduce(f)).len() == 2
}

/// Candidates `(m, n)` with `Norm(m a alpha + n) = +-p^h`, ordered by `m`,
/// then `|n|`, positive `n` first.
fn norm_solutions(quad: &Quad, target: &BigInt, m: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    for sign in [1i32, -1] {
        let r2 = BigInt::from(4 * sign) * target + &quad.disc * m * m;
        let Some(r) = exact_sqrt(&r2) else { continue };
        let bm = &quad.b * m;
        for num in [&bm + &r, &bm - &r] {
            if num.is_even() {
                let n = num / 2;
                if !out.contains(&n) {
                    out.push(n);
                }
            }
        }
    }
    out.sort_by(|x: &BigInt, y: &BigInt| x.abs().cmp(&y.abs()).then_with(|| y.cmp(x)));
    out
}

struct Found {
    p: u64,
    h: u32,
    m: BigInt,
    n: BigInt,
    big_a: BigInt,
    big_b: BigInt,
}

fn search_prime(field: &NumberField, quad: &Quad, p: u64, k: u64, budget: &QuadraticBudget) -> (Option<Found>, u64, String) {
    let mut examined = 0u64;
    let mut last_reason = String::from("no element of norm +-p^h");
    let pb = BigInt::from(p);
    for h in 1..=budget.max_exponent {
        let target = pb.pow(h);
        let m_max = if quad.disc.is_negative() {
            // (2n - bm)^2 = 4 Norm + D m^2 >= 0 bounds m
            let bound = (BigInt::from(4) * &target / -&quad.disc).sqrt();
            bound.to_u64().unwrap_or(u64::MAX).min(budget.max_m)
        } else {
            budget.max_m
        };
        for m in 1..=m_max {
            let mb = BigInt::from(m);
            for n in norm_solutions(quad, &target, &mb) {
                examined += 1;
                let beta = field.from_coords(&[BigRational::from_integer(n.clone()), BigRational::from_integer(&mb * &quad.a)]);
                let coords = beta.pow(k).coords();
                let (bb, aa) = (coords[0].to_integer(), coords[1].to_integer());
                if !coords[0].is_integer() || !coords[1].is_integer() {
                    last_reason = "non-integral power".into();
                    continue;
                }
                if aa.is_zero() {
                    last_reason = "A = 0".into();
                    continue;
                }
                if !aa.gcd(&bb).is_one() {
                    last_reason = "gcd(A, B) > 1".into();
                    continue;
                }
                if !aa.is_multiple_of(&quad.a) {
                    last_reason = "a does not divide A".into();
                    continue;
                }
                return (
                    Some(Found {
                        p,
                        h,
                        m: mb,
                        n,
                        big_a: aa,
                        big_b: bb,
                    }),
                    examined,
                    String::new(),
                );
            }
        }
    }
    (None, examined, last_reason)
}

/// `z` with `z^k = B mod A`. The part `a'` of `A` supported on primes of `a`
/// uses `z = B^(k^-1 mod phi(a'))`; on the coprime part `B^2 = N^k` with
/// `N = Norm(beta)` gives `z = B N^(-(k-1)/2)`.
fn kth_root(quad: &Quad, found: &Found, k: u64) -> Result<BigInt> {
    let a_abs = found.big_a.abs();
    let mut a_prime = BigInt::one();
    let mut rest = a_abs.clone();
    loop {
        let g = rest.gcd(&quad.a);
        if g.is_one() {
            break;
        }
        a_prime *= &g;
        rest /= &g;
    }
    let nrm = quad.norm(&found.m, &found.n);
    let z_rest = if rest.is_one() {
        BigInt::zero()
    } else {
        let inv = mod_inverse(&nrm, &rest)?;
        (&found.big_b * inv.modpow(&BigInt::from((k - 1) / 2), &rest)).mod_floor(&rest)
    };
    let z_a = if a_prime.is_one() {
        BigInt::zero()
    } else {
        let primes = small_factor(quad.a.abs().to_u64().expect("checked when computing k"));
        let phi = primes
            .iter()
            .fold(a_prime.clone(), |acc, &(p, _)| acc / BigInt::from(p) * BigInt::from(p - 1));
        let e = if phi.is_one() {
            BigInt::one()
        } else {
            mod_inverse(&BigInt::from(k), &phi)?
        };
        found.big_b.mod_floor(&a_prime).modpow(&e, &a_prime)
    };
    let (z, modulus) = crt_combine(&z_a, &a_prime, &z_rest, &rest)?;
    debug_assert_eq!(modulus, a_abs);
    if z.modpow(&BigInt::from(k), &a_abs) != found.big_b.mod_floor(&a_abs) {
        return Err(Error::InvariantViolated("z^k != B mod A".into()));
    }
    Ok(z)
}

/// `h_d(s) = Res_y(m_beta(y), y^phi(d) Phi_d(s / y))` by interpolation at
/// `s = 0 .. 2 phi(d)`.
pub fn h_polynomial(m_beta: &IntPoly, d: u64) -> IntPoly {
    let phi = cyclotomic(d);
    let e = phi.deg();
    let xs: Vec<BigRational> = (0..=2 * e as i64).map(|j| BigRational::from_integer(j.into())).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|s| {
            let s = s.to_integer();
            // y^e Phi_d(s/y) = sum c_i s^i y^(e-i)
            let coeffs: Vec<BigInt> = (0..=e).map(|j| phi.coeff(e - j) * pow_big(&s, (e - j) as u32)).collect();
            BigRational::from_integer(resultant_int(m_beta, &IntPoly::new(coeffs)).expect("nonzero"))
        })
        .collect();
    RatPoly::interpolate(&xs, &ys).to_int().expect("integral interpolant")
}

pub fn quadratic_construct(f: &IntPoly, x: u64, budget: &QuadraticBudget) -> Result<(QuadraticSeed, Certificate)> {
    let outer = Quad::new(f)?;
    if exact_sqrt(&outer.disc).is_some() {
        return Err(Error::NotIrreducible);
    }
    if x < 3 {
        return Err(Error::BadParameters("X must be at least 3".into()));
    }
    let prim = f.primitive_part().normalized();
    let unit = f.lead() / prim.lead();
    let quad = Quad::new(&prim)?;
    let k = exponent_k(&quad.a, x)?;
    if k == 1 {
        return Err(Error::BadParameters(format!("no usable primes below X = {x}")));
    }
    if k % 2 == 0 {
        return Err(Error::InvariantViolated("k is even".into()));
    }
    let field = NumberField::new(&prim)?;

    let mut attempts = Vec::new();
    let mut p = 1;
    let mut found = None;
    while attempts.len() < budget.max_primes {
        p = next_prime(p);
        if !is_split(&prim, &quad, p) {
            continue;
        }
        let (hit, examined, reason) = search_prime(&field, &quad, p, k, budget);
        if hit.is_some() {
            found = hit;
            break;
        }
        attempts.push(SeedAttempt {
            prime: p,
            max_exponent: budget.max_exponent,
            candidates_examined: examined,
            reason,
        });
    }
    let Some(found) = found else {
        return Err(Error::SeedSearchExhausted(attempts));
    };
    let (aa, bb) = (&found.big_a, &found.big_b);
    let z = kth_root(&quad, &found, k)?;
    let g = IntPoly::linear(aa.clone(), z.clone())
        .pow(k as u32)
        .add_constant(&-bb)
        .div_scalar_exact(aa)
        .ok_or_else(|| Error::InvariantViolated("g is not integral".into()))?;

    // beta = m a alpha + n has trace 2n - b m and norm N
    let trace = BigInt::from(2) * &found.n - &quad.b * &found.m;
    let m_beta = IntPoly::new(vec![quad.norm(&found.m, &found.n), -trace, BigInt::one()]);
    let mut factors = Vec::new();
    for d in divisors(k) {
        let hd = h_polynomial(&m_beta, d);
        if hd.deg() as u64 != 2 * euler_phi(d) || !hd.is_monic() {
            return Err(Error::InvariantViolated(format!("h_{d} has unexpected shape")));
        }
        factors.push(FactorExpr::Shifted {
            base: hd,
            a: aa.clone(),
            z: z.clone(),
        });
    }
    let scalar = BigRational::new(&quad.a * &unit, aa * aa);
    let seed = QuadraticSeed {
        f: prim,
        p: found.p,
        h: found.h,
        m: found.m,
        n: found.n,
        k,
        big_a: aa.clone(),
        big_b: bb.clone(),
        z,
    };
    let mut cert = Certificate::new(f.clone(), g.into(), scalar, factors, Method::Quadratic);
    cert.seed = Some(seed.clone());
    cert.notes.push(format!("k = {k} from X = {x}; split prime {}", seed.p));
    for a in &attempts {
        cert.notes.push(format!("split prime {} exhausted: {}", a.prime, a.reason));
    }
    Ok((seed, finish(cert)?))
}

/// Irreducible quadratics go through [`quadratic_construct`]; reducible
/// ones are products of linear binomials and use the binomial construction
/// with cutoff `y = X`.
pub fn polysmooth_quadratic(f: &IntPoly, x: u64, budget: &QuadraticBudget) -> Result<Certificate> {
    let quad = Quad::new(f)?;
    if exact_sqrt(&quad.disc).is_none() {
        return quadratic_construct(f, x, budget).map(|(_, c)| c);
    }
    let z = factor_over_z(f)?;
    let mut binomials = Vec::new();
    for (lin, mult) in &z.factors {
        for _ in 0..*mult {
            binomials.push(Binomial::new(lin.coeff(1), -lin.coeff(0), 1));
        }
    }
    let mut cert = binomial_product_construct(&binomials, x)?;
    let unit = BigRational::from_integer(&z.content * BigInt::from(z.unit));
    cert.scalar *= unit;
    cert.f = f.clone();
    cert.notes.push("reducible quadratic: product of linear binomials".into());
    finish(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_int_poly;

    fn p(s: &str) -> IntPoly {
        parse_int_poly(s).unwrap()
    }

    fn big(n: i64) -> BigInt {
        n.into()
    }

    #[test]
    fn gaussian_seed_matches_hand_computation() {
        let (seed, c) = quadratic_construct(&p("t^2+1"), 5, &QuadraticBudget::default()).unwrap();
        assert_eq!(seed.k, 3);
        assert_eq!(seed.p, 5);
        assert_eq!((seed.m.clone(), seed.n.clone()), (big(1), big(2)));
        assert_eq!((seed.big_a.clone(), seed.big_b.clone()), (big(11), big(2)));
        assert_eq!(seed.z, big(7));
        assert_eq!(c.g, RatPoly::from(p("121*t^3+231*t^2+147*t+31")));
        let bases: Vec<IntPoly> = c
            .factors
            .iter()
            .map(|f| match f {
                FactorExpr::Shifted { base, .. } => base.clone(),
                _ => panic!(),
            })
            .collect();
        assert_eq!(bases, vec![p("t^2-4*t+5"), p("t^4+4*t^3+11*t^2+20*t+25")]);
        assert_eq!(c.scalar, BigRational::new(1.into(), 121.into()));
        // oracle: integer evaluation at t = 1 where s = 18 and g(1) = 530
        assert_eq!(c.g.eval_int(&big(1)), BigRational::from_integer(big(530)));
        assert_eq!(bases[0].eval(&big(18)) * bases[1].eval(&big(18)), big(121 * 280901));
        assert_eq!(bases[0].eval(&big(18)), big(257));
    }

    #[test]
    fn h_polynomials_have_expected_roots() {
        // beta = 2 + i: h_1(s) = (s - beta)(s - conj beta)
        let m = p("t^2-4*t+5");
        assert_eq!(h_polynomial(&m, 1), m);
        // Res oracle at s = 0: prod over roots of y^2 Phi_3(0 / y) = N(beta)^2
        assert_eq!(h_polynomial(&m, 3).coeff(0), big(25));
    }

    #[test]
    fn awkward_quadratic_both_cutoffs() {
        let f = p("4*t^2+4*t+9");
        for (x, k) in [(5u64, 3u64), (8, 105)] {
            let (seed, c) = quadratic_construct(&f, x, &QuadraticBudget::default()).unwrap();
            assert_eq!(seed.k, k);
            assert!(!seed.big_a.is_zero());
            assert!(seed.big_a.gcd(&seed.big_b).is_one());
            assert!(seed.big_a.is_multiple_of(&big(4)));
            assert!(c.g.to_int().is_some());
            let max_phi = divisors(k).into_iter().map(euler_phi).max().unwrap() as usize;
            assert_eq!(c.max_factor_degree(), 2 * max_phi);
            assert!(c.is_verified());
        }
    }

    #[test]
    fn exponent_k_exclusions() {
        assert_eq!(exponent_k(&big(1), 5).unwrap(), 3);
        assert_eq!(exponent_k(&big(4), 8).unwrap(), 105);
        // a = 3: phi(3) = 2, so 3 is dropped
        assert_eq!(exponent_k(&big(3), 8).unwrap(), 35);
    }

    #[test]
    fn non_primitive_and_negative_input() {
        let (_, c) = quadratic_construct(&p("-2*t^2-2"), 5, &QuadraticBudget::default()).unwrap();
        assert!(c.is_verified());
        let (_, c) = quadratic_construct(&p("t^2-3"), 5, &QuadraticBudget::default()).unwrap();
        assert!(c.is_verified());
    }

    #[test]
    fn reducible_routes_to_binomials() {
        let c = polysmooth_quadratic(&p("t^2-3*t+2"), 5, &QuadraticBudget::default()).unwrap();
        assert_eq!(c.method, Method::Binomial);
        assert!(c.is_verified());
        let c = polysmooth_quadratic(&p("3*t^2-6*t+3"), 5, &QuadraticBudget::default()).unwrap();
        assert!(c.is_verified());
        assert!(matches!(
            quadratic_construct(&p("t^2-1"), 5, &QuadraticBudget::default()),
            Err(Error::NotIrreducible)
        ));
    }
}
