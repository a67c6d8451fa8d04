//! Integer factorization: trial division, Miller–Rabin, Brent's variant of
//! Pollard rho. Seeds are fixed so every run factors the same way.

use std::fmt;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::numutil::primes_below;

const TRIAL_LIMIT: u64 = 10_000;
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const MR_RANDOM_ROUNDS: usize = 64;
const RHO_BATCH: usize = 128;

/// Prime powers in increasing prime order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PrimeFactorization {
    #[serde(with = "pairs_as_strings")]
    pub pairs: Vec<(BigInt, u32)>,
}

mod pairs_as_strings {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[(BigInt, u32)], s: S) -> Result<S::Ok, S::Error> {
        let out: Vec<(String, u32)> = v.iter().map(|(p, e)| (p.to_string(), *e)).collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(BigInt, u32)>, D::Error> {
        let raw: Vec<(String, u32)> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|(p, e)| p.parse().map(|p| (p, e)).map_err(D::Error::custom))
            .collect()
    }
}

impl PrimeFactorization {
    pub fn product(&self) -> BigInt {
        self.pairs
            .iter()
            .map(|(p, e)| num_traits::pow(p.clone(), *e as usize))
            .product()
    }

    pub fn largest_prime(&self) -> Option<&BigInt> {
        self.pairs.last().map(|(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Merges two factorizations, adding exponents.
    pub fn merge(&self, other: &PrimeFactorization) -> PrimeFactorization {
        let mut out = self.clone();
        for (p, e) in &other.pairs {
            out.insert(p.clone(), *e);
        }
        out
    }

    /// Multiplies every exponent by `k`.
    pub fn pow(&self, k: u32) -> PrimeFactorization {
        PrimeFactorization {
            pairs: self.pairs.iter().map(|(p, e)| (p.clone(), e * k)).collect(),
        }
    }

    fn insert(&mut self, p: BigInt, e: u32) {
        match self.pairs.binary_search_by(|(q, _)| q.cmp(&p)) {
            Ok(i) => self.pairs[i].1 += e,
            Err(i) => self.pairs.insert(i, (p, e)),
        }
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &MR_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn mr_round(n: &BigInt, d: &BigInt, s: u32, a: &BigInt) -> bool {
    let nm1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Primality: exact below 2^64, otherwise Miller–Rabin with the fixed small
/// bases plus 64 seeded random bases.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().expect("n > 1") as u32;
    let d = &nm1 >> s;
    if !MR_BASES
        .iter()
        .all(|&a| mr_round(n, &d, s, &BigInt::from(a)))
    {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    let hi = n - 2u32;
    (0..MR_RANDOM_ROUNDS).all(|_| {
        let a = rng.gen_bigint_range(&BigInt::from(2), &hi);
        mr_round(n, &d, s, &a)
    })
}

/// Iteration caps for Pollard rho, per composite cofactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            rho_iterations: 1 << 24,
        }
    }
}

fn rho_u64(n: u64, c: u64, cap: u64) -> Option<u64> {
    let f = |x: u64| (mulmod(x, x, n) + c) % n;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let (mut x, mut ys) = (0u64, 0u64);
    let mut g = 1u64;
    let mut iters = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let lim = RHO_BATCH.min((r - k) as usize);
            for _ in 0..lim {
                y = f(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += lim as u64;
            iters += lim as u64;
        }
        if iters > cap {
            return None;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_big(n: &BigInt, c: u64, cap: u64) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let (mut y, mut r, mut q) = (BigInt::from(2), 1u64, BigInt::one());
    let (mut x, mut ys) = (BigInt::zero(), BigInt::zero());
    let mut g = BigInt::one();
    let mut iters = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let lim = RHO_BATCH.min((r - k) as usize);
            for _ in 0..lim {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += lim as u64;
            iters += lim as u64;
        }
        if iters > cap {
            return None;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// A nontrivial factor of the odd composite `n`, or `None` when the
/// iteration budget runs out.
fn find_factor(n: &BigInt, budget: FactorBudget) -> Option<BigInt> {
    let mut spent = 0u64;
    for c in 1u64..=64 {
        let left = budget.rho_iterations.saturating_sub(spent);
        if left == 0 {
            return None;
        }
        let found = match n.to_u64() {
            Some(small) => rho_u64(small, c, left).map(BigInt::from),
            None => rho_big(n, c, left),
        };
        if found.is_some() {
            return found;
        }
        // a failed attempt either exhausted its share or cycled on n itself
        spent += left / 4 + 1;
    }
    None
}

pub fn factor_integer(n: &BigInt) -> Result<PrimeFactorization> {
    factor_integer_with(n, FactorBudget::default())
}

pub fn factor_integer_with(n: &BigInt, budget: FactorBudget) -> Result<PrimeFactorization> {
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let mut rest = n.abs();
    let mut out = PrimeFactorization::default();
    for p in small_primes() {
        if rest.is_one() {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= *p;
            e += 1;
        }
        if e > 0 {
            out.insert(BigInt::from(*p), e);
        }
    }
    let mut stack = vec![rest];
    let mut stuck = BigInt::one();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            out.insert(m, 1);
            continue;
        }
        if let Some(r) = perfect_power(&m) {
            let (base, k) = r;
            for _ in 0..k {
                stack.push(base.clone());
            }
            continue;
        }
        match find_factor(&m, budget) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => stuck *= m,
        }
    }
    if !stuck.is_one() {
        return Err(Error::FactorBudgetExceeded {
            partial: Box::new(out),
            remaining: stuck,
        });
    }
    debug_assert_eq!(out.product(), n.abs());
    Ok(out)
}

/// `m = base^k` with `k >= 2` maximal-first, for `m` free of small primes.
fn perfect_power(m: &BigInt) -> Option<(BigInt, u32)> {
    let bits = m.bits() as u32;
    // every prime factor exceeds TRIAL_LIMIT > 2^13
    for k in (2..=bits / 13).rev() {
        let r = m.nth_root(k);
        if &num_traits::pow(r.clone(), k as usize) == m {
            return Some((r, k));
        }
    }
    None
}

fn small_primes() -> &'static [u64] {
    static PRIMES: std::sync::OnceLock<Vec<u64>> = std::sync::OnceLock::new();
    PRIMES.get_or_init(|| primes_below(TRIAL_LIMIT))
}

/// Largest prime factor of a nonzero integer; `1` for `±1`.
pub fn largest_prime_factor(n: &BigInt) -> Result<BigInt> {
    Ok(factor_integer(n)?
        .largest_prime()
        .cloned()
        .unwrap_or_else(BigInt::one))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(mut n: u64) -> Vec<(u64, u32)> {
        crate::exactalg::numutil::small_factor(std::mem::take(&mut n))
    }

    #[test]
    fn documented_examples() {
        let f = factor_integer(&BigInt::from(280901)).unwrap();
        assert_eq!(f.pairs, vec![(257.into(), 1), (1093.into(), 1)]);
        assert!(factor_integer(&BigInt::one()).unwrap().is_empty());
        let two64 = BigInt::one() << 64;
        assert_eq!(factor_integer(&two64).unwrap().pairs, vec![(2.into(), 64)]);
        assert!(matches!(factor_integer(&BigInt::zero()), Err(Error::Zero)));
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in (1u64..5000).chain([999_983 * 1_000_003, 4_294_967_291 * 3, 600_851_475_143]) {
            let ours: Vec<(u64, u32)> = factor_integer(&BigInt::from(n))
                .unwrap()
                .pairs
                .into_iter()
                .map(|(p, e)| (p.to_u64().unwrap(), e))
                .collect();
            assert_eq!(ours, trial(n), "n = {n}");
        }
    }

    #[test]
    fn large_semiprime_and_powers() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let r: BigInt = "18446744073709551557".parse().unwrap(); // largest prime < 2^64
        let n = &p * &q * &r * &r;
        let f = factor_integer(&n).unwrap();
        assert_eq!(f.product(), n);
        assert_eq!(f.pairs.len(), 3);
        assert!(f.pairs.iter().all(|(p, _)| is_probable_prime(p)));
        let cube = num_traits::pow(BigInt::from(10_007), 3);
        assert_eq!(factor_integer(&cube).unwrap().pairs, vec![(10_007.into(), 3)]);
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        let m127 = (BigInt::one() << 127) - 1;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&(&m127 * 3)));
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let p: BigInt = "1000000000000000000000000000057".parse().unwrap();
        let q: BigInt = "1000000000000000000000000000099".parse().unwrap();
        if !(is_probable_prime(&p) && is_probable_prime(&q)) {
            return;
        }
        let n = &p * &q * 6;
        match factor_integer_with(&n, FactorBudget { rho_iterations: 1000 }) {
            Err(Error::FactorBudgetExceeded { partial, remaining }) => {
                assert_eq!(partial.product() * &remaining, n);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
