//! Cyclotomic polynomials.
//!
//! `Phi_n` is built from `Phi_q(t^p) / Phi_q(t)` for squarefree odd `n = q p`,
//! then `Phi_2m(t) = Phi_m(-t)` for odd `m > 1`, and
//! `Phi_n(t) = Phi_rad(n)(t^(n / rad(n)))`. Every step is an exact division
//! by a monic polynomial, carried out on machine integers.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use parking_lot::RwLock;

use super::intpoly::IntPoly;
use super::numutil::{radical, small_factor};

static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();

fn cache() -> &'static RwLock<HashMap<u64, Arc<Vec<i64>>>> {
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial. Panics for `n = 0`.
pub fn cyclotomic(n: u64) -> IntPoly {
    IntPoly::new(
        cyclotomic_coeffs(n)
            .iter()
            .map(|&c| BigInt::from(c))
            .collect(),
    )
}

/// Coefficients of `Phi_n` in ascending order. Results are cached; filling
/// the cache twice for the same `n` is harmless.
pub fn cyclotomic_coeffs(n: u64) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(c) = cache().read().get(&n) {
        return c.clone();
    }
    let coeffs = Arc::new(compute(n));
    cache().write().entry(n).or_insert(coeffs).clone()
}

fn compute(n: u64) -> Vec<i64> {
    if n == 1 {
        return vec![-1, 1];
    }
    if n == 2 {
        return vec![1, 1];
    }
    let r = radical(n);
    if r != n {
        let base = cyclotomic_coeffs(r);
        return inflate(&base, (n / r) as usize);
    }
    if n.is_multiple_of(2) {
        let base = cyclotomic_coeffs(n / 2);
        return base
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
            .collect();
    }
    let primes = small_factor(n);
    let p = primes.last().expect("n > 1").0;
    let q = n / p;
    let base = cyclotomic_coeffs(q);
    let num = inflate(&base, p as usize);
    exact_div_monic(&num, &base)
}

fn inflate(c: &[i64], k: usize) -> Vec<i64> {
    let deg = c.len() - 1;
    let mut out = vec![0i64; deg * k + 1];
    for (i, &v) in c.iter().enumerate() {
        out[i * k] = v;
    }
    out
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut r: Vec<i128> = num.iter().map(|&v| v as i128).collect();
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = r[k + dd];
        if c == 0 {
            continue;
        }
        for (i, &d) in den.iter().enumerate() {
            r[k + i] -= c * d as i128;
        }
        q[k] = i64::try_from(c).expect("cyclotomic coefficient overflows i64");
    }
    debug_assert!(r[..dd].iter().all(|&v| v == 0), "inexact cyclotomic division");
    q
}

/// Evaluates `Phi_n` at an integer.
pub fn eval_cyclotomic(n: u64, x: &BigInt) -> BigInt {
    cyclotomic(n).eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::numutil::{divisors, euler_phi};

    /// Independent route: divide `t^n - 1` by every `Phi_d` for proper
    /// divisors `d` computed the same way.
    fn cascade(n: u64, memo: &mut HashMap<u64, IntPoly>) -> IntPoly {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut acc = IntPoly::monomial(1.into(), n as usize).add_constant(&(-1).into());
        for d in divisors(n) {
            if d < n {
                let phi_d = cascade(d, memo);
                acc = acc.divide_exact(&phi_d).unwrap();
            }
        }
        memo.insert(n, acc.clone());
        acc
    }

    #[test]
    fn small_cases() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn agrees_with_divisor_cascade() {
        let mut memo = HashMap::new();
        for n in 1..=200u64 {
            assert_eq!(cyclotomic(n), cascade(n, &mut memo), "n = {n}");
        }
    }

    #[test]
    fn product_over_divisors_is_binomial() {
        for n in 1..=200u64 {
            let prod: IntPoly = divisors(n).into_iter().map(cyclotomic).product();
            let expect = IntPoly::monomial(1.into(), n as usize).add_constant(&(-1).into());
            assert_eq!(prod, expect, "n = {n}");
            assert_eq!(cyclotomic(n).deg() as u64, euler_phi(n));
        }
    }

    #[test]
    fn first_nonflat_coefficient() {
        // Phi_105 is the first with a coefficient outside {-1, 0, 1}.
        let c = cyclotomic_coeffs(105);
        assert_eq!(c.iter().copied().min(), Some(-2));
        assert_eq!(cyclotomic(30030).deg(), 5760);
    }
}
