//! Certificates: a substitution `g`, a scalar and a factor list whose
//! product equals `f(g(t))`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::binomial::PrimePartition;
use super::quadratic::QuadraticSeed;
use super::verify::VerifyReport;
use crate::error::{Error, Result};
use crate::exactalg::cyclotomic::cyclotomic;
use crate::exactalg::intpoly::pow_big;
use crate::exactalg::numutil::euler_phi;
use crate::exactalg::{IntPoly, RatPoly};

/// Version tag written into every certificate document.
pub const SCHEMA_VERSION: u32 = 1;

/// A factor kept in structural form so that huge certificates never need
/// full expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorExpr {
    Explicit { poly: RatPoly },
    /// `Phi_e(coeff * t^power)`.
    CycloOfMonomial {
        e: u64,
        #[serde(with = "crate::serde_big::rational")]
        coeff: BigRational,
        power: u64,
    },
    /// `base(a t + z)`.
    Shifted {
        base: IntPoly,
        #[serde(with = "crate::serde_big::bigint")]
        a: BigInt,
        #[serde(with = "crate::serde_big::bigint")]
        z: BigInt,
    },
}

impl FactorExpr {
    pub fn explicit(p: IntPoly) -> Self {
        FactorExpr::Explicit { poly: p.into() }
    }

    /// Degree of the expanded factor, computed structurally.
    pub fn degree(&self) -> usize {
        match self {
            FactorExpr::Explicit { poly } => poly.deg(),
            FactorExpr::CycloOfMonomial { e, coeff, power } => {
                if coeff.is_zero() {
                    0
                } else {
                    (euler_phi(*e) * power) as usize
                }
            }
            FactorExpr::Shifted { base, a, .. } => {
                if a.is_zero() {
                    0
                } else {
                    base.deg()
                }
            }
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigRational {
        match self {
            FactorExpr::Explicit { poly } => poly.eval_int(x),
            FactorExpr::CycloOfMonomial { e, coeff, power } => {
                let phi = cyclotomic(*e);
                let xp = pow_big(x, *power as u32);
                if coeff.denom().is_one() {
                    BigRational::from_integer(phi.eval(&(coeff.numer() * xp)))
                } else {
                    phi.eval_rational(&(coeff * BigRational::from_integer(xp)))
                }
            }
            FactorExpr::Shifted { base, a, z } => BigRational::from_integer(base.eval(&(a * x + z))),
        }
    }

    pub fn expand(&self) -> RatPoly {
        match self {
            FactorExpr::Explicit { poly } => poly.clone(),
            FactorExpr::CycloOfMonomial { e, coeff, power } => {
                let phi = cyclotomic(*e);
                let (n, d) = (coeff.numer(), coeff.denom());
                let deg = phi.deg();
                let p = *power as usize;
                // sum c_i n^i d^(deg - i) t^(i p) / d^deg
                let mut coeffs = vec![BigInt::zero(); deg * p + 1];
                for (i, c) in phi.coeffs().iter().enumerate() {
                    coeffs[i * p] = c * pow_big(n, i as u32) * pow_big(d, (deg - i) as u32);
                }
                RatPoly::new(IntPoly::new(coeffs), pow_big(d, deg as u32)).expect("nonzero denominator")
            }
            FactorExpr::Shifted { base, a, z } => base.compose_linear(a, z).into(),
        }
    }
}

impl fmt::Display for FactorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorExpr::Explicit { poly } => write!(f, "{poly}"),
            FactorExpr::CycloOfMonomial { e, coeff, power } => {
                let c = crate::exactalg::format_rational(coeff);
                match (c.as_str(), power) {
                    ("1", 1) => write!(f, "Phi_{e}(t)"),
                    ("1", _) => write!(f, "Phi_{e}(t^{power})"),
                    (_, 1) => write!(f, "Phi_{e}({c}*t)"),
                    _ => write!(f, "Phi_{e}({c}*t^{power})"),
                }
            }
            FactorExpr::Shifted { base, a, z } => write!(f, "h(s) = {} at s = {a}*t + {z}", base.display_var("s")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Trivial,
    Schinzel,
    Binomial,
    Quadratic,
    Decomposition,
    Trinomial,
    CubicFamily,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Trivial => "trivial",
            Method::Schinzel => "schinzel",
            Method::Binomial => "binomial",
            Method::Quadratic => "quadratic",
            Method::Decomposition => "decomposition",
            Method::Trinomial => "trinomial",
            Method::CubicFamily => "cubic_family",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `f(g(t)) = scalar * prod factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub f: IntPoly,
    pub g: RatPoly,
    #[serde(with = "crate::serde_big::rational")]
    pub scalar: BigRational,
    pub method: Method,
    pub factors: Vec<FactorExpr>,
    #[serde(with = "crate::serde_big::rational")]
    pub polysmoothness: BigRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<VerifyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<QuadraticSeed>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PrimePartition>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Document<T> {
    schema: u32,
    #[serde(flatten)]
    body: T,
}

impl Certificate {
    /// Builds a certificate and computes its polysmoothness ratio.
    pub fn new(f: IntPoly, g: RatPoly, scalar: BigRational, factors: Vec<FactorExpr>, method: Method) -> Self {
        let mut c = Certificate {
            f,
            g,
            scalar,
            method,
            factors,
            polysmoothness: BigRational::zero(),
            verified: None,
            seed: None,
            partition: None,
            notes: Vec::new(),
        };
        c.polysmoothness = c.computed_ratio();
        c
    }

    /// `deg f * deg g`.
    pub fn total_degree(&self) -> usize {
        self.f.deg() * self.g.deg()
    }

    pub fn max_factor_degree(&self) -> usize {
        self.factors.iter().map(FactorExpr::degree).max().unwrap_or(0)
    }

    /// Ratio recomputed from the factor list.
    pub fn computed_ratio(&self) -> BigRational {
        let total = self.total_degree();
        if total == 0 {
            return BigRational::zero();
        }
        BigRational::new(self.max_factor_degree().into(), total.into())
    }

    /// Value of `f(g(x))`.
    pub fn lhs_at(&self, x: &BigInt) -> BigRational {
        self.f.eval_rational(&self.g.eval_int(x))
    }

    /// Value of `scalar * prod factors` at `x`.
    pub fn rhs_at(&self, x: &BigInt) -> BigRational {
        let (n, d) = self.rhs_parts(x);
        crate::exactalg::numutil::ratio(n, d)
    }

    /// Unreduced numerator and denominator of `rhs_at`. Reducing after every
    /// factor costs a gcd of huge operands, so products are formed first.
    pub fn rhs_parts(&self, x: &BigInt) -> (BigInt, BigInt) {
        let mut nums = vec![self.scalar.numer().clone()];
        let mut dens = vec![self.scalar.denom().clone()];
        for fe in &self.factors {
            let (n, d) = fe.eval(x).into_raw();
            nums.push(n);
            if !d.is_one() {
                dens.push(d);
            }
        }
        (product_tree(nums), product_tree(dens))
    }

    /// Whether `f(g(x)) = scalar * prod factors(x)`.
    pub fn holds_at(&self, x: &BigInt) -> bool {
        let lhs = self.lhs_at(x);
        let (n, d) = self.rhs_parts(x);
        lhs.numer() * d == n * lhs.denom()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&Document {
            schema: SCHEMA_VERSION,
            body: self,
        })
        .expect("certificate serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&Document {
            schema: SCHEMA_VERSION,
            body: self,
        })
        .expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document<Certificate> = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        if doc.schema != SCHEMA_VERSION {
            return Err(Error::Malformed(format!("unsupported schema version {}", doc.schema)));
        }
        Ok(doc.body)
    }
}

fn product_tree(mut v: Vec<BigInt>) -> BigInt {
    while v.len() > 1 {
        let mut next = Vec::with_capacity(v.len().div_ceil(2));
        let mut it = v.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => a * b,
                None => a,
            });
        }
        v = next;
    }
    v.pop().unwrap_or_else(BigInt::one)
}

/// Moves the content of `p` into `scalar` and makes the lead positive.
pub(crate) fn normalize_factor(p: IntPoly, scalar: &mut BigRational) -> IntPoly {
    let prim = p.primitive_part().normalized();
    let c = &p.lead() / prim.lead();
    *scalar *= BigRational::from_integer(c);
    prim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_int_poly;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn structural_degrees_match_expansion() {
        let exprs = [
            FactorExpr::CycloOfMonomial {
                e: 12,
                coeff: BigRational::new(3.into(), 2.into()),
                power: 5,
            },
            FactorExpr::Shifted {
                base: parse_int_poly("s^4+4*s^3+11*s^2+20*s+25").unwrap(),
                a: 11.into(),
                z: 7.into(),
            },
            FactorExpr::explicit(parse_int_poly("t^3-2").unwrap()),
        ];
        for e in &exprs {
            let full = e.expand();
            assert_eq!(full.deg(), e.degree());
            for x in [-3i64, 0, 2, 17] {
                assert_eq!(full.eval_int(&x.into()), e.eval(&x.into()), "{e} at {x}");
            }
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut c = Certificate::new(
            parse_int_poly("t^2-2").unwrap(),
            RatPoly::new(parse_int_poly("3*t^2+1").unwrap(), 2.into()).unwrap(),
            BigRational::new((-5).into(), 7.into()),
            vec![
                FactorExpr::explicit(parse_int_poly("t+1").unwrap()),
                FactorExpr::CycloOfMonomial {
                    e: 6,
                    coeff: q(2),
                    power: 3,
                },
                FactorExpr::Shifted {
                    base: parse_int_poly("t^2+1").unwrap(),
                    a: "123456789012345678901234567890".parse().unwrap(),
                    z: (-4).into(),
                },
            ],
            Method::Quadratic,
        );
        c.notes.push("note".into());
        let text = c.to_json();
        assert!(text.starts_with("{\"schema\":1,"));
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), text);
        // Phi_6(2 t^3) has degree 6 against a total degree of 4
        assert_eq!(c.polysmoothness, BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn rejects_wrong_schema() {
        let c = Certificate::new(IntPoly::x(), RatPoly::x(), q(1), vec![], Method::Trivial);
        let text = c.to_json().replace("\"schema\":1", "\"schema\":7");
        assert!(matches!(Certificate::from_json(&text), Err(Error::Malformed(_))));
    }
}
