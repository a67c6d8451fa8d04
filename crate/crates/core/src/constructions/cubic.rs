//! Families of quadratic substitutions for an irreducible cubic.
//!
//! For `beta = A alpha^2 + B alpha + C` generating `K`, write
//! `alpha = g(beta)` with `g` quadratic. The two roots of `g(y) = alpha`
//! are `beta` and `gamma = r - beta`, so
//! `f(g(y)) = kappa m_beta(y) m_gamma(y)` with both factors cubic.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, FactorExpr, Method};
use super::verify::finish;
use crate::error::{Error, Result};
use crate::exactalg::{IntPoly, RatPoly};
use crate::factorz::is_irreducible;
use crate::numfield::NumberField;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicFamilyEntry {
    /// Coordinates `(A, B, C)` of `beta`.
    pub coords: (i64, i64, i64),
    /// `B / A`, distinct across a family.
    #[serde(with = "crate::serde_big::rational")]
    pub ratio: BigRational,
    pub g: RatPoly,
    #[serde(with = "crate::serde_big::rational")]
    pub r: BigRational,
    #[serde(with = "crate::serde_big::rational")]
    pub kappa: BigRational,
    pub m_beta: IntPoly,
    pub m_gamma: IntPoly,
    pub certificate: Certificate,
}

/// `(A, B, C)` in shells of growing height; inside a shell `A` ascends and
/// `B`, `C` go by absolute value, nonnegative first.
fn shell(h: i64) -> Vec<(i64, i64, i64)> {
    let order = |h: i64| -> Vec<i64> {
        let mut v = vec![0];
        for i in 1..=h {
            v.push(i);
            v.push(-i);
        }
        v
    };
    let mut out = Vec::new();
    for a in 1..=h {
        for &b in &order(h) {
            for &c in &order(h) {
                if a.max(b.abs()).max(c.abs()) == h {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Height bound of the enumeration; families this large are never needed.
const MAX_HEIGHT: i64 = 64;

pub fn cubic_family(f: &IntPoly, count: usize) -> Result<Vec<CubicFamilyEntry>> {
    if f.deg() != 3 {
        return Err(Error::NotCubic);
    }
    if !is_irreducible(f) {
        return Err(Error::NotIrreducible);
    }
    let field = NumberField::new(f)?;
    let alpha = field.generator();
    let q = |n: i64| BigRational::from_integer(n.into());
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    'outer: for h in 1..=MAX_HEIGHT {
        for (a, b, c) in shell(h) {
            if out.len() == count {
                break 'outer;
            }
            let ratio = BigRational::new(b.into(), a.into());
            if seen.contains(&ratio) {
                continue;
            }
            let beta = field.from_coords(&[q(c), q(b), q(a)]);
            if !beta.is_generator() {
                continue;
            }
            let g = alpha.express_in_powers(&beta)?;
            if g.deg() != 2 {
                return Err(Error::InvariantViolated(format!("g has degree {} for ({a}, {b}, {c})", g.deg())));
            }
            // beta + gamma = -g_1 / g_2
            let r = -g.coeff(1) / g.coeff(2);
            let gamma = beta.neg().add_rational(&r);
            let m_beta = beta.minimal_polynomial();
            let m_gamma = gamma.minimal_polynomial();
            let fg = RatPoly::from(f.clone()).compose(&g);
            let kappa = fg.lead() / BigRational::from_integer(m_beta.lead() * m_gamma.lead());
            let prod = RatPoly::from(&m_beta * &m_gamma).scale(&kappa);
            if prod != fg {
                return Err(Error::RecoveryMismatch(format!(
                    "f(g) != kappa m_beta m_gamma for beta = ({a}, {b}, {c})"
                )));
            }
            let cert = Certificate::new(
                f.clone(),
                g.clone(),
                kappa.clone(),
                vec![FactorExpr::explicit(m_beta.clone()), FactorExpr::explicit(m_gamma.clone())],
                Method::CubicFamily,
            );
            let cert = finish(cert)?;
            seen.insert(ratio.clone());
            out.push(CubicFamilyEntry {
                coords: (a, b, c),
                ratio,
                g,
                r,
                kappa,
                m_beta,
                m_gamma,
                certificate: cert,
            });
        }
    }
    if out.len() < count {
        return Err(Error::BudgetExceeded(format!(
            "only {} entries up to height {MAX_HEIGHT}",
            out.len()
        )));
    }
    Ok(out)
}

impl CubicFamilyEntry {
    pub fn beta_display(&self) -> String {
        let (a, b, c) = self.coords;
        IntPoly::new(vec![BigInt::from(c), BigInt::from(b), BigInt::from(a)])
            .display_var("alpha")
            .to_string()
    }
}
