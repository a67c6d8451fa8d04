//! Factorization over Z: content, squarefree decomposition, a modular
//! factorization at the smallest good prime, Hensel lifting past the
//! coefficient bound, then subset recombination.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::hensel::multifactor_lift;
use super::modp::{Fp, Fpx};
use crate::error::{Error, Result};
use crate::exactalg::intpoly::{mod_u64, IntPoly};
use crate::exactalg::numutil::next_prime;

/// Subsets tried during recombination before giving up.
pub const RECOMBINATION_CAP: u64 = 1 << 20;

/// `unit * content * prod factor^mult`, factors primitive irreducible with
/// positive lead, ordered by degree then coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZFactorization {
    pub unit: i8,
    #[serde(with = "crate::serde_big::bigint")]
    pub content: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl ZFactorization {
    pub fn product(&self) -> IntPoly {
        let mut acc = IntPoly::constant(&self.content * BigInt::from(self.unit));
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.factors.iter().map(|(f, _)| f.deg()).max().unwrap_or(0)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

fn canonical(a: &IntPoly, b: &IntPoly) -> Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.canonical_cmp(b))
}

/// Squarefree decomposition of a primitive polynomial with positive lead:
/// pairs `(g_i, i)` with `f = prod g_i^i`, each `g_i` squarefree.
pub fn squarefree_decomposition(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative()).normalized();
    let mut w = f.divide_exact(&c).expect("gcd divides").normalized();
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c).normalized();
        let z = w.divide_exact(&y).expect("gcd divides").normalized();
        if z.deg() > 0 {
            out.push((z, i));
        }
        c = c.divide_exact(&y).expect("gcd divides").normalized();
        w = y;
        i += 1;
    }
    out
}

fn good_prime_after(f: &IntPoly, start: u64) -> u64 {
    let mut p = start;
    loop {
        let fp = Fp::new(p);
        if mod_u64(&f.lead(), &BigInt::from(p)) != 0 {
            let r = fp.reduce(f);
            if fp.gcd(&r, &fp.derivative(&r)) == vec![1] {
                return p;
            }
        }
        p = next_prime(p);
    }
}

/// Smallest prime `p >= 3` with `p` not dividing the lead and `f mod p`
/// squarefree. `f` must be squarefree over Q.
pub fn smallest_good_prime(f: &IntPoly) -> u64 {
    good_prime_after(f, 3)
}

/// Coefficient bound for any factor of `f` scaled to lead `lc(f)`:
/// `|lc(f)| * 2^deg(f) * ceil(||f||_2)`.
pub fn factor_coefficient_bound(f: &IntPoly) -> BigInt {
    let n2 = f.norm2_squared();
    let mut root = n2.sqrt();
    if &root * &root < n2 {
        root += 1;
    }
    f.lead().abs() * (BigInt::one() << f.deg()) * root
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

fn mulmod_poly(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new((a * b).coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Factors a primitive squarefree polynomial of positive degree and
/// positive lead into irreducibles.
fn factor_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>> {
    if f.deg() <= 1 {
        return Ok(vec![f.clone()]);
    }
    let p = smallest_good_prime(f);
    let fp = Fp::new(p);
    let local = fp.factor_squarefree(&fp.monic(&fp.reduce(f)));
    if local.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let bound2 = factor_coefficient_bound(f) * 2;
    let pb = BigInt::from(p);
    let mut steps = 0u32;
    let mut modulus = pb.clone();
    while modulus <= bound2 {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let (lifted, modulus) = multifactor_lift(f, &local, p, steps);
    recombine(f, lifted, &modulus)
}

fn recombine(f: &IntPoly, mut pool: Vec<IntPoly>, modulus: &BigInt) -> Result<Vec<IntPoly>> {
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    let mut tried = 0u64;
    while 2 * size <= pool.len() {
        let mut hit = None;
        let mut idx: Vec<usize> = (0..size).collect();
        'subsets: loop {
            tried += 1;
            if tried > RECOMBINATION_CAP {
                return Err(Error::RecombinationLimit(RECOMBINATION_CAP));
            }
            let lead = rest.lead();
            let c0 = rest.coeff(0);
            let cand_c0 = symmetric(
                &idx.iter().fold(lead.clone(), |acc, &i| (acc * pool[i].coeff(0)).mod_floor(modulus)),
                modulus,
            );
            let plausible = c0.is_zero() || (!cand_c0.is_zero() && (&lead * &c0).is_multiple_of(&cand_c0));
            if plausible {
                let prod = idx
                    .iter()
                    .fold(IntPoly::constant(lead.clone()), |acc, &i| mulmod_poly(&acc, &pool[i], modulus));
                let cand = IntPoly::new(prod.coeffs().iter().map(|c| symmetric(c, modulus)).collect());
                let cand = cand.normalized();
                if let Some((q, r)) = rest.div_rem_integral(&cand)? {
                    if r.is_zero() {
                        hit = Some((idx.clone(), cand, q));
                        break 'subsets;
                    }
                }
            }
            // next combination in lexicographic order
            let n = pool.len();
            let mut i = size;
            loop {
                if i == 0 {
                    break 'subsets;
                }
                i -= 1;
                if idx[i] < n - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    break 'subsets;
                }
            }
        }
        match hit {
            Some((used, factor, quotient)) => {
                for &i in used.iter().rev() {
                    pool.remove(i);
                }
                found.push(factor);
                rest = quotient.normalized();
            }
            None => size += 1,
        }
    }
    if rest.deg() > 0 {
        found.push(rest);
    }
    Ok(found)
}

/// Complete factorization over Z.
pub fn factor_over_z(poly: &IntPoly) -> Result<ZFactorization> {
    let (content, prim) = poly.content_primitive()?;
    let (unit, prim) = if prim.lead().is_negative() {
        (-1i8, -&prim)
    } else {
        (1i8, prim)
    };
    let mut factors = Vec::new();
    for (g, m) in squarefree_decomposition(&prim) {
        for h in factor_squarefree(&g)? {
            factors.push((h.normalized(), m));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| canonical(a, b).then(ma.cmp(mb)));
    let out = ZFactorization {
        unit,
        content,
        factors,
    };
    debug_assert_eq!(&out.product(), poly, "factorization must reconstruct its input");
    Ok(out)
}

/// Possible degrees of a proper factor of a squarefree `f`, as seen from
/// the factorization pattern modulo `prime`.
fn achievable_degrees(f: &IntPoly, prime: u64) -> Vec<bool> {
    let fp = Fp::new(prime);
    let monic: Fpx = fp.monic(&fp.reduce(f));
    let mut reach = vec![false; f.deg() + 1];
    reach[0] = true;
    for d in fp.factor_degrees(&monic) {
        for s in (d..reach.len()).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Irreducibility over Q of a nonconstant polynomial (its content is
/// ignored). Degree patterns modulo eight good primes usually settle the
/// question; otherwise the full factorization decides.
pub fn is_irreducible(poly: &IntPoly) -> bool {
    if poly.is_zero() || poly.deg() == 0 {
        return false;
    }
    let f = poly.primitive_part().normalized();
    if f.deg() == 1 {
        return true;
    }
    if f.gcd(&f.derivative()).deg() > 0 {
        return false;
    }
    let n = f.deg();
    let mut possible = vec![true; n + 1];
    let mut p = 2;
    for _ in 0..8 {
        p = good_prime_after(&f, next_prime(p));
        let reach = achievable_degrees(&f, p);
        for (slot, r) in possible.iter_mut().zip(reach) {
            *slot &= r;
        }
        if !possible[1..n].iter().any(|&b| b) {
            return true;
        }
    }
    match factor_over_z(&f) {
        Ok(z) => z.is_irreducible(),
        Err(_) => false,
    }
}
