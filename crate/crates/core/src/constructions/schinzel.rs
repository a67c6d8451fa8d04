//! The trivial substitution `t + f(t)`, Schinzel's reciprocal substitution,
//! and their iteration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::certificate::{normalize_factor, Certificate, FactorExpr, Method};
use super::theta::{default_tolerance, theta_schinzel};
use super::verify::finish;
use crate::error::{Error, Result};
use crate::exactalg::IntPoly;
use crate::factorz::{factor_over_z, is_irreducible};

fn cert_from(f: &IntPoly, g: IntPoly, scalar: BigRational, factors: Vec<IntPoly>, method: Method) -> Certificate {
    Certificate::new(
        f.clone(),
        g.into(),
        scalar,
        factors.into_iter().map(FactorExpr::explicit).collect(),
        method,
    )
}

/// `g = t + f(t)`; then `f` divides `f(g)`.
pub fn trivial_step(f: &IntPoly) -> Result<Certificate> {
    let (g, scalar, factors) = trivial_parts(f)?;
    finish(cert_from(f, g, scalar, factors, Method::Trivial))
}

fn trivial_parts(f: &IntPoly) -> Result<(IntPoly, BigRational, Vec<IntPoly>)> {
    if f.deg() < 2 {
        return Err(Error::DegreeTooSmall {
            needed: 2,
            got: f.deg(),
        });
    }
    let g = &IntPoly::x() + f;
    let cofactor = f.compose(&g).divide_exact(f)?;
    let mut scalar = BigRational::one();
    let a = normalize_factor(f.clone(), &mut scalar);
    let b = normalize_factor(cofactor, &mut scalar);
    Ok((g, scalar, vec![a, b]))
}

/// Schinzel's substitution `g = -(a_0 t^(d-1) + a_1 t^(d-2) + ... + a_(d-1))`
/// for monic `f`, under which `f(g)` is divisible by the minimal
/// polynomial of `1/alpha`.
pub fn schinzel_step(f: &IntPoly) -> Result<Certificate> {
    let (g, scalar, factors) = schinzel_parts(f)?;
    finish(cert_from(f, g, scalar, factors, Method::Schinzel))
}

fn schinzel_parts(f: &IntPoly) -> Result<(IntPoly, BigRational, Vec<IntPoly>)> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let d = f.deg();
    if d < 3 {
        return Err(Error::DegreeTooSmall { needed: 3, got: d });
    }
    if f.coeff(0).is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    if !is_irreducible(f) {
        return Err(Error::NotIrreducible);
    }
    // coefficient of t^(d-1-i) is -a_i
    let g = IntPoly::new((0..d).map(|j| -f.coeff(d - 1 - j)).collect());
    let m_beta = f.reversed().primitive_part().normalized();
    let cofactor = f.compose(&g).divide_exact(&m_beta)?;
    let mut scalar = BigRational::one();
    let cofactor = normalize_factor(cofactor, &mut scalar);
    Ok((g, scalar, vec![m_beta, cofactor]))
}

/// Limits for [`iterate_schinzel`].
#[derive(Debug, Clone, Copy)]
pub struct IterateLimits {
    /// Stop before the substitution degree times `deg f` exceeds this.
    pub max_total_degree: usize,
    /// Split new factors over Z when their degree is at most this.
    pub factor_max_degree: usize,
}

impl Default for IterateLimits {
    fn default() -> Self {
        IterateLimits {
            max_total_degree: 2000,
            factor_max_degree: 60,
        }
    }
}

pub fn iterate_schinzel(f: &IntPoly, steps: usize) -> Result<Certificate> {
    iterate_schinzel_with(f, steps, IterateLimits::default())
}

fn schinzel_eligible(p: &IntPoly) -> bool {
    p.deg() >= 3 && p.is_monic() && !p.coeff(0).is_zero() && is_irreducible(p)
}

/// Splits each polynomial into irreducibles when cheap, otherwise keeps it.
fn refine(polys: Vec<IntPoly>, scalar: &mut BigRational, limits: &IterateLimits) -> Vec<IntPoly> {
    let mut out = Vec::new();
    for p in polys {
        if p.deg() > limits.factor_max_degree {
            out.push(p);
            continue;
        }
        match factor_over_z(&p) {
            Ok(z) => {
                *scalar *= BigRational::from_integer(&z.content * BigInt::from(z.unit));
                for (q, m) in z.factors {
                    out.extend(std::iter::repeat_n(q, m));
                }
            }
            Err(_) => out.push(p),
        }
    }
    out
}

/// Applies a step to the largest factor (ties go to the lexicographically
/// smallest coefficients), composing all other factors with the new
/// substitution. Stops early, with a note, when a step cannot improve the
/// ratio or would exceed the degree limit.
pub fn iterate_schinzel_with(f: &IntPoly, steps: usize, limits: IterateLimits) -> Result<Certificate> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_irreducible(f) {
        return Err(Error::NotIrreducible);
    }
    let d = f.deg();
    let mut subst = IntPoly::x();
    let mut scalar = BigRational::one();
    let mut factors = vec![f.clone()];
    let mut notes = Vec::new();
    let mut used_trivial = false;
    let ratio = |factors: &[IntPoly], subst: &IntPoly| {
        let max = factors.iter().map(IntPoly::deg).max().unwrap_or(0);
        BigRational::new(max.into(), (d * subst.deg()).into())
    };
    let mut stop = format!("completed {steps} step(s)");
    for step in 0..steps {
        let pick = (0..factors.len())
            .max_by(|&i, &j| {
                factors[i]
                    .deg()
                    .cmp(&factors[j].deg())
                    .then_with(|| factors[j].canonical_cmp(&factors[i]))
            })
            .expect("at least one factor");
        let target = &factors[pick];
        if d * subst.deg() * target.deg().max(2) > limits.max_total_degree {
            stop = format!("stopped after {step} step(s): degree limit {} reached", limits.max_total_degree);
            break;
        }
        let (g, s, new) = if schinzel_eligible(target) {
            schinzel_parts(target)?
        } else {
            used_trivial = true;
            trivial_parts(target)?
        };
        let mut next_scalar = &scalar * s;
        let mut next: Vec<IntPoly> = Vec::new();
        let mut composed = Vec::new();
        for (i, p) in factors.iter().enumerate() {
            if i != pick {
                let mut c = BigRational::one();
                composed.push(normalize_factor(p.compose(&g), &mut c));
                next_scalar *= c;
            }
        }
        next.extend(new);
        next.extend(composed);
        let next = refine(next, &mut next_scalar, &limits);
        let next_subst = subst.compose(&g);
        if ratio(&next, &next_subst) > ratio(&factors, &subst) {
            stop = format!("stopped after {step} step(s): next step would raise the ratio");
            break;
        }
        factors = next;
        subst = next_subst;
        scalar = next_scalar;
    }
    factors.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.canonical_cmp(b)));
    let target = theta_schinzel(d as u64, &default_tolerance())?;
    let mut cert = cert_from(f, subst, scalar, factors, Method::Schinzel);
    notes.push(stop);
    if used_trivial {
        notes.push("some steps fell back to the trivial substitution".into());
    }
    notes.push(format!(
        "achieved ratio {} against theta({d}) = {}",
        crate::exactalg::format_rational(&cert.polysmoothness),
        target.decimal
    ));
    cert.notes = notes;
    finish(cert)
}
