//! Resultants through the subresultant pseudo-remainder sequence.
//!
//! Sign convention: `res(p, q) = lc(p)^deg(q) * prod q(r)` over the roots `r`
//! of `p`, so `res(t^2 + 1, t - 2) = 5` and
//! `res(q, p) = (-1)^(deg p * deg q) res(p, q)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::intpoly::{pow_big, IntPoly};
use super::ratpoly::RatPoly;
use crate::error::{Error, Result};

pub fn resultant_int(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (dp, dq) = (p.deg(), q.deg());
    if dp == 0 {
        return Ok(pow_big(&p.lead(), dq as u32));
    }
    if dq == 0 {
        return Ok(pow_big(&q.lead(), dp as u32));
    }
    let (ca, mut a) = p.content_primitive()?;
    let (cb, mut b) = q.content_primitive()?;
    let t = pow_big(&ca, dq as u32) * pow_big(&cb, dp as u32);
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b)?;
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let divisor = &g * pow_big(&h, delta as u32);
        b = r
            .div_scalar_exact(&divisor)
            .expect("subresultant division is exact");
        g = a.lead();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            pow_big(&g, delta as u32) / pow_big(&h, (delta - 1) as u32)
        };
        if b.deg() == 0 {
            break;
        }
    }
    let da = a.deg() as u32;
    let lb = b.lead();
    // h <- lc(b)^deg(a) / h^(deg(a) - 1)
    let hfinal = if da == 0 {
        h
    } else {
        pow_big(&lb, da) / pow_big(&h, da - 1)
    };
    Ok(s * t * hfinal)
}

/// Resultant of rational polynomials with the same convention.
pub fn resultant(p: &RatPoly, q: &RatPoly) -> Result<BigRational> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let r = resultant_int(p.num(), q.num())?;
    let den = pow_big(p.den(), q.deg() as u32) * pow_big(q.den(), p.deg() as u32);
    Ok(BigRational::new(r, den))
}

/// Determinant of the Sylvester matrix, by fraction-free elimination. Kept
/// as an independent route for testing the PRS implementation.
pub fn sylvester_resultant(p: &IntPoly, q: &IntPoly) -> BigInt {
    let (m, n) = (p.deg(), q.deg());
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

pub(crate) fn bareiss_det(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if mat[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !mat[i][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
        }
        prev = mat[k][k].clone();
    }
    sign * &mat[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn documented_examples() {
        assert_eq!(resultant_int(&p(&[1, 0, 1]), &p(&[-2, 1])).unwrap(), BigInt::from(5));
        for (a, b) in [(3i64, 7i64), (-2, 5), (4, 4)] {
            assert_eq!(
                resultant_int(&p(&[-a, 1]), &p(&[-b, 1])).unwrap(),
                BigInt::from(a - b)
            );
        }
        assert_eq!(
            resultant_int(&p(&[1, 0, 1]), &p(&[2, 2, 1])).unwrap(),
            BigInt::from(5)
        );
    }

    #[test]
    fn constant_arguments() {
        assert_eq!(resultant_int(&p(&[3]), &p(&[1, 1, 1])).unwrap(), BigInt::from(9));
        assert_eq!(resultant_int(&p(&[1, 1, 1]), &p(&[3])).unwrap(), BigInt::from(9));
        assert!(resultant_int(&IntPoly::zero(), &p(&[1, 1])).is_err());
    }

    #[test]
    fn common_root_gives_zero() {
        let a = &p(&[1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[1, 1]) * &p(&[5, 1]);
        assert_eq!(resultant_int(&a, &b).unwrap(), BigInt::zero());
    }

    #[test]
    fn matches_sylvester_on_fixed_cases() {
        let cases = [
            (p(&[3, -1, 0, 2, 5]), p(&[1, 4, -2])),
            (p(&[1, 2, 3, 4, 5, 6]), p(&[-7, 0, 0, 2])),
            (p(&[2, 0, 0, 0, 0, 3]), p(&[1, 1, 0, 0, 0, 0, 0, 4])),
        ];
        for (a, b) in cases {
            assert_eq!(resultant_int(&a, &b).unwrap(), sylvester_resultant(&a, &b));
            assert_eq!(resultant_int(&b, &a).unwrap(), sylvester_resultant(&b, &a));
        }
    }
}
