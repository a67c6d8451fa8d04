//! Polynomials over a prime field `F_p` with `p < 2^32`, and their
//! factorization: squarefree decomposition, distinct-degree splitting, then
//! Cantor–Zassenhaus equal-degree splitting.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::intpoly::{mod_u64, IntPoly};

/// Coefficients in ascending order, each in `[0, p)`, no trailing zeros.
pub type Fpx = Vec<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

/// `unit * prod factor^mult` modulo `p`, factors monic and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModFactorization {
    pub prime: u64,
    pub unit: u64,
    pub factors: Vec<(Fpx, usize)>,
}

impl ModFactorization {
    pub fn product(&self) -> Fpx {
        let fp = Fp { p: self.prime };
        let mut acc = vec![self.unit];
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = fp.mul(&acc, f);
            }
        }
        acc
    }
}

fn trim(mut a: Fpx) -> Fpx {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &Fpx) -> usize {
    a.len().saturating_sub(1)
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 32)).contains(&p), "prime out of range");
        Fp { p }
    }

    pub fn reduce(&self, poly: &IntPoly) -> Fpx {
        let pb = BigInt::from(self.p);
        trim(poly.coeffs().iter().map(|c| mod_u64(c, &pb)).collect())
    }

    /// Symmetric lift to an integer polynomial.
    pub fn lift(&self, a: &Fpx) -> IntPoly {
        IntPoly::new(
            a.iter()
                .map(|&c| {
                    if c > self.p / 2 {
                        BigInt::from(c) - BigInt::from(self.p)
                    } else {
                        BigInt::from(c)
                    }
                })
                .collect(),
        )
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        crate::exactalg::numutil::pow_mod_u64(a, self.p - 2, self.p)
    }

    pub fn add(&self, a: &Fpx, b: &Fpx) -> Fpx {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
            *o = if x >= self.p { x - self.p } else { x };
        }
        trim(out)
    }

    pub fn sub(&self, a: &Fpx, b: &Fpx) -> Fpx {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = if x >= y { x - y } else { x + self.p - y };
        }
        trim(out)
    }

    pub fn scale(&self, a: &Fpx, c: u64) -> Fpx {
        trim(a.iter().map(|&x| self.mulm(x, c)).collect())
    }

    pub fn mul(&self, a: &Fpx, b: &Fpx) -> Fpx {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % p;
            }
        }
        trim(acc.into_iter().map(|v| v as u64).collect())
    }

    pub fn div_rem(&self, a: &Fpx, b: &Fpx) -> (Fpx, Fpx) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let db = deg(b);
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mulm(r[k + db], inv);
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (i, &bc) in b.iter().enumerate() {
                let sub = self.mulm(c, bc);
                let v = r[k + i];
                r[k + i] = if v >= sub { v - sub } else { v + self.p - sub };
            }
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &Fpx, b: &Fpx) -> Fpx {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &Fpx) -> Fpx {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn gcd(&self, a: &Fpx, b: &Fpx) -> Fpx {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &Fpx, b: &Fpx) -> (Fpx, Fpx, Fpx) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let Some(&l) = r0.last() else {
            return (r0, s0, t0);
        };
        let inv = self.inv(l);
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &Fpx) -> Fpx {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mulm(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn pow_mod(&self, base: &Fpx, exp: &BigUint, modulus: &Fpx) -> Fpx {
        let mut acc = vec![1u64];
        let b = self.rem(base, modulus);
        for i in (0..exp.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), modulus);
            if exp.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), modulus);
            }
        }
        self.rem(&acc, modulus)
    }

    /// `a = b(t^p)`; returns `b` (coefficients are their own p-th roots).
    fn pth_root(&self, a: &Fpx) -> Fpx {
        let p = self.p as usize;
        trim(a.iter().step_by(p).copied().collect())
    }

    /// Squarefree decomposition of a monic polynomial.
    pub fn squarefree(&self, f: &Fpx) -> Vec<(Fpx, usize)> {
        let mut out = Vec::new();
        if deg(f) == 0 {
            return out;
        }
        let fd = self.derivative(f);
        if fd.is_empty() {
            for (g, m) in self.squarefree(&self.pth_root(f)) {
                out.push((g, m * self.p as usize));
            }
            return out;
        }
        let mut c = self.gcd(f, &fd);
        let mut w = self.div_rem(f, &c).0;
        let mut i = 1;
        while deg(&w) > 0 {
            let y = self.gcd(&w, &c);
            let z = self.div_rem(&w, &y).0;
            if deg(&z) > 0 {
                out.push((self.monic(&z), i));
            }
            i += 1;
            w = y;
            c = self.div_rem(&c, &w).0;
        }
        if deg(&c) > 0 {
            for (g, m) in self.squarefree(&self.pth_root(&c)) {
                out.push((g, m * self.p as usize));
            }
        }
        out
    }

    /// Distinct-degree factorization of a squarefree monic polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self, f: &Fpx) -> Vec<(Fpx, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x = vec![0u64, 1];
        let pexp = BigUint::from(self.p);
        let mut h = self.rem(&x, &rest);
        let mut d = 1;
        while deg(&rest) >= 2 * d {
            h = self.pow_mod(&h, &pexp, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if deg(&g) > 0 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
            d += 1;
        }
        if deg(&rest) > 0 {
            let dr = deg(&rest);
            out.push((rest, dr));
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree `d`.
    pub fn equal_degree(&self, f: &Fpx, d: usize, rng: &mut ChaCha8Rng) -> Vec<Fpx> {
        let n = deg(f);
        if n == d {
            return vec![f.clone()];
        }
        let exp = if self.p == 2 {
            BigUint::zero()
        } else {
            (num_traits::pow(BigUint::from(self.p), d) - BigUint::one()) / BigUint::from(2u32)
        };
        loop {
            let a: Fpx = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if deg(&a) == 0 {
                continue;
            }
            let g = self.gcd(&a, f);
            let candidate = if deg(&g) > 0 && deg(&g) < n {
                g
            } else if self.p == 2 {
                // trace map a + a^2 + ... + a^(2^(d-1))
                let mut acc = self.rem(&a, f);
                let mut cur = acc.clone();
                for _ in 1..d {
                    cur = self.rem(&self.mul(&cur, &cur), f);
                    acc = self.add(&acc, &cur);
                }
                self.gcd(&acc, f)
            } else {
                let b = self.pow_mod(&a, &exp, f);
                self.gcd(&self.sub(&b, &vec![1]), f)
            };
            if deg(&candidate) > 0 && deg(&candidate) < n {
                let other = self.div_rem(f, &candidate).0;
                let mut out = self.equal_degree(&candidate, d, rng);
                out.extend(self.equal_degree(&self.monic(&other), d, rng));
                return out;
            }
        }
    }

    /// Degrees of the irreducible factors of a squarefree monic polynomial.
    pub fn factor_degrees(&self, f: &Fpx) -> Vec<usize> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(std::iter::repeat_n(d, deg(&g) / d));
        }
        out
    }

    /// Full factorization of a monic squarefree polynomial, sorted.
    pub fn factor_squarefree(&self, f: &Fpx) -> Vec<Fpx> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.p);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, &mut rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
        out
    }

    /// Roots in `[0, p)` of a nonzero polynomial, sorted.
    pub fn roots(&self, f: &Fpx) -> Vec<u64> {
        if deg(f) == 0 {
            return Vec::new();
        }
        let f = self.monic(f);
        let x = vec![0u64, 1];
        let xp = self.pow_mod(&x, &BigUint::from(self.p), &f);
        let g = self.gcd(&self.sub(&xp, &x), &f);
        if deg(&g) == 0 {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x7007 ^ self.p);
        let mut roots: Vec<u64> = self
            .equal_degree(&g, 1, &mut rng)
            .into_iter()
            .map(|l| (self.p - l[0]) % self.p)
            .collect();
        roots.sort_unstable();
        roots
    }
}

/// Factors `poly` modulo `prime` into monic irreducibles with multiplicity.
pub fn factor_mod_p(poly: &IntPoly, prime: u64) -> Result<ModFactorization> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fp = Fp::new(prime);
    let reduced = fp.reduce(poly);
    let lead_mod = mod_u64(&poly.lead(), &BigInt::from(prime));
    if lead_mod == 0 {
        return Err(Error::BadPrime(prime));
    }
    let monic = fp.monic(&reduced);
    let mut factors = Vec::new();
    for (g, m) in fp.squarefree(&monic) {
        for h in fp.factor_squarefree(&g) {
            factors.push((h, m));
        }
    }
    factors.sort_by(|(a, ma), (b, mb)| {
        a.len()
            .cmp(&b.len())
            .then_with(|| a.iter().rev().cmp(b.iter().rev()))
            .then(ma.cmp(mb))
    });
    Ok(ModFactorization {
        prime,
        unit: lead_mod,
        factors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn documented_examples() {
        let f = factor_mod_p(&p(&[1, 0, 1]), 5).unwrap();
        assert_eq!(f.factors, vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
        let f = factor_mod_p(&p(&[1, 0, 1]), 3).unwrap();
        assert_eq!(f.factors, vec![(vec![1, 0, 1], 1)]);
        let f = factor_mod_p(&p(&[0, 1]), 7).unwrap();
        assert_eq!(f.factors, vec![(vec![0, 1], 1)]);
        assert!(matches!(factor_mod_p(&p(&[1, 3]), 3), Err(Error::BadPrime(3))));
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        // (t+1)^3 (t^2+1) mod 3, where (t+1)^3 = t^3 + 1 has zero derivative
        let f = &p(&[1, 1]).pow(3) * &p(&[1, 0, 1]);
        let fz = factor_mod_p(&f, 3).unwrap();
        assert_eq!(fz.factors, vec![(vec![1, 1], 3), (vec![1, 0, 1], 1)]);
        assert_eq!(fz.product(), Fp::new(3).reduce(&f));
    }

    #[test]
    fn product_reconstructs_for_several_primes() {
        let f = p(&[3, -7, 0, 2, 11, 0, 5, 1, 9]);
        for prime in [3u64, 5, 7, 11, 13, 101, 65537] {
            let Ok(fz) = factor_mod_p(&f, prime) else { continue };
            let fp = Fp::new(prime);
            assert_eq!(fz.product(), fp.reduce(&f), "prime {prime}");
        }
    }

    #[test]
    fn characteristic_two() {
        let f = p(&[1, 1, 1, 0, 0, 1]); // t^5 + t^2 + t + 1 = (t+1)(t^4+t^3+t^2+1)... over F2
        let fz = factor_mod_p(&f, 2).unwrap();
        assert_eq!(fz.product(), Fp::new(2).reduce(&f));
    }

    #[test]
    fn roots_mod_p() {
        let fp = Fp::new(5);
        assert_eq!(fp.roots(&fp.reduce(&p(&[1, 0, 1]))), vec![2, 3]);
        let fp = Fp::new(3);
        assert!(fp.roots(&fp.reduce(&p(&[1, 0, 1]))).is_empty());
    }
}
