//! Elementary number theory on machine and big integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Prime factors with multiplicity of a machine integer, by trial division.
pub fn small_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    small_factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i32 {
    let f = small_factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in small_factor(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    small_factor(n).into_iter().map(|(p, _)| p).product()
}

/// All primes `p < x` (sieve of Eratosthenes).
pub fn primes_below(x: u64) -> Vec<u64> {
    if x <= 2 {
        return Vec::new();
    }
    let n = x as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

pub fn is_prime_u64(n: u64) -> bool {
    crate::smoothness::is_prime_u64(n)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Nonnegative gcd. One Euclidean step first: the binary algorithm used by
/// `Integer::gcd` is quadratic in the larger operand even when the other is
/// tiny.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    if small.is_zero() {
        return big.abs();
    }
    if big.bits() > 2 * small.bits() + 64 {
        let r = big % small;
        return small.gcd(&r);
    }
    big.gcd(small)
}

/// `n / d` in lowest terms without the cost of `BigRational::new` on
/// operands of very different sizes.
pub fn ratio(n: BigInt, d: BigInt) -> BigRational {
    assert!(!d.is_zero(), "zero denominator");
    if d.is_one() {
        return BigRational::from_integer(n);
    }
    let g = gcd(&n, &d);
    let (n, d) = if g.is_one() { (n, d) } else { (n / &g, d / &g) };
    if d.is_negative() {
        BigRational::new_raw(-n, -d)
    } else {
        BigRational::new_raw(n, d)
    }
}

/// Inverse of `a` modulo `m` in `[0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if m.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let m = m.abs();
    if m.is_one() {
        return Ok(BigInt::zero());
    }
    let e = a.mod_floor(&m).extended_gcd(&m);
    if !e.gcd.is_one() {
        return Err(Error::NotCoprime);
    }
    Ok(e.x.mod_floor(&m))
}

pub fn mod_inverse_u64(a: u64, m: u64) -> Option<u64> {
    mod_inverse(&BigInt::from(a), &BigInt::from(m))
        .ok()
        .map(|v| u64::try_from(v).expect("fits"))
}

/// Combines `x = r1 mod m1` and `x = r2 mod m2` for coprime moduli into a
/// residue modulo `m1 m2` in `[0, m1 m2)`.
pub fn crt_combine(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Result<(BigInt, BigInt)> {
    let (m1, m2) = (m1.abs(), m2.abs());
    if !m1.gcd(&m2).is_one() {
        return Err(Error::NotCoprime);
    }
    let m = &m1 * &m2;
    if m1.is_one() {
        return Ok((r2.mod_floor(&m), m));
    }
    let inv = mod_inverse(&m1, &m2)?;
    let diff = (r2 - r1).mod_floor(&m2);
    let x = (r1 + &m1 * ((diff * inv).mod_floor(&m2))).mod_floor(&m);
    Ok((x, m))
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Whether `n` is a perfect `k`-th power up to sign handled by the caller.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k.is_multiple_of(2) {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    (num_traits::pow::pow(r.clone(), k as usize) == *n).then_some(r)
}
