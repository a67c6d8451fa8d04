//! Quadratic Hensel lifting of a modular factorization.
//!
//! The two-factor step follows the classical scheme: from `f = g h mod m`
//! and `s g + t h = 1 mod m`, with `h` monic, produce the same relations
//! modulo `m^2`. Multi-factor lifts peel one monic factor at a time.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::{Fp, Fpx};
use crate::exactalg::intpoly::IntPoly;
use crate::exactalg::numutil::mod_inverse;

type Zx = Vec<BigInt>;

fn trim(mut a: Zx) -> Zx {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn reduce(a: &[BigInt], m: &BigInt) -> Zx {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zx {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zx {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zx {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Zx, Zx) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut r: Zx = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (i, bc) in b.iter().enumerate() {
            r[k + i] = (&r[k + i] - &c * bc).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), reduce(&r, m))
}

fn to_big(a: &Fpx) -> Zx {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

struct Lift {
    g: Zx,
    h: Zx,
    s: Zx,
    t: Zx,
}

/// One quadratic step from modulus `m` to `m^2`.
fn hensel_step(f: &[BigInt], l: Lift, m: &BigInt) -> Lift {
    let m2 = m * m;
    let e = sub(f, &mul(&l.g, &l.h, &m2), &m2);
    let (q, r) = div_rem_monic(&mul(&l.s, &e, &m2), &l.h, &m2);
    let g = add(&l.g, &add(&mul(&l.t, &e, &m2), &mul(&q, &l.g, &m2), &m2), &m2);
    let h = add(&l.h, &r, &m2);
    let b = sub(&add(&mul(&l.s, &g, &m2), &mul(&l.t, &h, &m2), &m2), &[BigInt::one()], &m2);
    let (c, d) = div_rem_monic(&mul(&l.s, &b, &m2), &h, &m2);
    let s = sub(&l.s, &d, &m2);
    let t = sub(&sub(&l.t, &mul(&l.t, &b, &m2), &m2), &mul(&c, &g, &m2), &m2);
    Lift { g, h, s, t }
}

/// Lifts monic factors `u_1 .. u_r` of `f mod p` (squarefree, `p` not
/// dividing the lead) to monic factors modulo `p^(2^steps)`. The lifted
/// factors multiply to `f / lc(f)` modulo that power.
pub fn multifactor_lift(f: &IntPoly, factors: &[Fpx], p: u64, steps: u32) -> (Vec<IntPoly>, BigInt) {
    let fp = Fp::new(p);
    let pb = BigInt::from(p);
    let modulus = (0..steps).fold(pb.clone(), |acc, _| &acc * &acc);
    let r = factors.len();
    if r == 1 {
        let inv = mod_inverse(&f.lead(), &modulus).expect("lead is a unit");
        let monic = reduce(&f.scale(&inv).into_coeffs(), &modulus);
        return (vec![IntPoly::new(monic)], modulus);
    }
    let mut current: Zx = f.coeffs().to_vec();
    let mut out = Vec::with_capacity(r);
    for i in 0..r - 1 {
        let h0 = factors[i].clone();
        let lead_p = crate::exactalg::intpoly::mod_u64(current.last().unwrap(), &pb);
        let mut g0: Fpx = vec![lead_p];
        for u in &factors[i + 1..] {
            g0 = fp.mul(&g0, u);
        }
        let (one, s0, t0) = fp.ext_gcd(&g0, &h0);
        debug_assert_eq!(one, vec![1]);
        // keep deg s < deg h and deg t < deg g
        let (q, s0) = fp.div_rem(&s0, &h0);
        let t0 = fp.add(&t0, &fp.mul(&q, &g0));
        let mut lift = Lift {
            g: to_big(&g0),
            h: to_big(&h0),
            s: to_big(&s0),
            t: to_big(&t0),
        };
        let mut m = pb.clone();
        for _ in 0..steps {
            lift = hensel_step(&current, lift, &m);
            m = &m * &m;
        }
        out.push(IntPoly::new(lift.h));
        current = lift.g;
    }
    let inv = mod_inverse(current.last().unwrap(), &modulus).expect("lead is a unit");
    let last: Zx = current.iter().map(|c| c * &inv).collect();
    out.push(IntPoly::new(reduce(&last, &modulus)));
    (out, modulus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorz::modp::factor_mod_p;

    #[test]
    fn lifted_product_matches_monic_input() {
        let f = IntPoly::from_i64(&[-6, 11, -6, 1]) * IntPoly::from_i64(&[3, 0, 1]);
        let f = f.scale(&BigInt::from(5));
        let p = 11;
        let fz = factor_mod_p(&f, p).unwrap();
        assert!(fz.factors.iter().all(|(_, m)| *m == 1));
        let locals: Vec<Fpx> = fz.factors.iter().map(|(u, _)| u.clone()).collect();
        let (lifted, modulus) = multifactor_lift(&f, &locals, p, 4);
        assert_eq!(modulus, BigInt::from(11u64.pow(16)));
        let prod: Zx = lifted
            .iter()
            .fold(vec![BigInt::one()], |acc, u| mul(&acc, u.coeffs(), &modulus));
        let inv = mod_inverse(&f.lead(), &modulus).unwrap();
        let expect = reduce(&f.scale(&inv).into_coeffs(), &modulus);
        assert_eq!(prod, expect);
        assert!(lifted.iter().all(|u| u.lead() == BigInt::one()));
    }
}
