//! Compositions from an identity `f(t) = g(h(t)) - t`: the minimal
//! polynomial of `h(alpha)` divides `f(g(t))`.

use num_rational::BigRational;
use num_traits::One;

use super::certificate::{normalize_factor, Certificate, FactorExpr, Method};
use super::verify::finish;
use crate::error::{Error, Result};
use crate::exactalg::{IntPoly, RatPoly};
use crate::factorz::is_irreducible;
use crate::numfield::NumberField;

pub fn decomposition_construct(f: &IntPoly, g: &IntPoly, h: &IntPoly) -> Result<Certificate> {
    for p in [g, h] {
        if p.deg() < 2 {
            return Err(Error::DegreeTooSmall {
                needed: 2,
                got: p.deg(),
            });
        }
    }
    if &g.compose(h) - &IntPoly::x() != *f {
        return Err(Error::IdentityFails);
    }
    if !is_irreducible(f) {
        return Err(Error::NotIrreducible);
    }
    let field = NumberField::new(f)?;
    let gamma = field.generator().apply(&RatPoly::from(h.clone()));
    let m_gamma = gamma.minimal_polynomial();
    if m_gamma.deg() != f.deg() {
        return Err(Error::InvariantViolated(format!(
            "minimal polynomial of h(alpha) has degree {}, expected {}",
            m_gamma.deg(),
            f.deg()
        )));
    }
    let cofactor = f.compose(g).divide_exact(&m_gamma)?;
    let mut scalar = BigRational::one();
    let cofactor = normalize_factor(cofactor, &mut scalar);
    let cert = Certificate::new(
        f.clone(),
        g.clone().into(),
        scalar,
        vec![FactorExpr::explicit(m_gamma), FactorExpr::explicit(cofactor)],
        Method::Decomposition,
    );
    finish(cert)
}
