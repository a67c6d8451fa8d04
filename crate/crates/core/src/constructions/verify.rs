//! Machine check of a certificate's identity `f(g(t)) = scalar * prod factors`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, FactorExpr};
use crate::exactalg::RatPoly;
use crate::factorz::is_irreducible;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// Symbolic when the total degree is within the cap, else probabilistic.
    Auto,
    Symbolic,
    Probabilistic,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub mode: VerifyMode,
    /// Largest total degree expanded symbolically in `Auto` mode.
    pub symbolic_cap: usize,
    pub points: usize,
    pub seed: u64,
    /// Largest explicit factor degree whose irreducibility is checked.
    pub irreducibility_max_degree: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: VerifyMode::Auto,
            symbolic_cap: 5000,
            points: 32,
            seed: 0x5eed,
            irreducibility_max_degree: 48,
        }
    }
}

impl VerifyOptions {
    pub fn with_mode(mode: VerifyMode) -> Self {
        VerifyOptions {
            mode,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// The mode actually used.
    pub mode: VerifyMode,
    /// Overall verdict: identity, degree bookkeeping and stored ratio agree.
    pub passed: bool,
    pub identity_holds: bool,
    /// Symbolic agreement, or at least `D + 1` distinct agreeing points.
    pub conclusive: bool,
    pub points: usize,
    /// An integer where the two sides differ.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_bigint")]
    pub witness: Option<BigInt>,
    pub degree_ok: bool,
    pub ratio_ok: bool,
    /// Per factor: irreducibility over Q when checked.
    pub irreducible: Vec<Option<bool>>,
}

mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| t.parse().map_err(D::Error::custom))
            .transpose()
    }
}

pub fn verify_certificate(c: &Certificate, opts: &VerifyOptions) -> VerifyReport {
    let total = c.total_degree();
    let mode = match opts.mode {
        VerifyMode::Auto if total <= opts.symbolic_cap => VerifyMode::Symbolic,
        VerifyMode::Auto => VerifyMode::Probabilistic,
        m => m,
    };
    let degree_sum: usize = c.factors.iter().map(FactorExpr::degree).sum();
    let degree_ok = degree_sum == total && !c.scalar.is_zero();
    let ratio_ok = c.polysmoothness == c.computed_ratio();

    let (identity_holds, conclusive, points, witness) = match mode {
        VerifyMode::Symbolic => symbolic(c),
        _ => probabilistic(c, opts),
    };
    let irreducible = c
        .factors
        .iter()
        .map(|fe| match fe {
            FactorExpr::Explicit { poly } if poly.deg() <= opts.irreducibility_max_degree && poly.deg() > 0 => {
                Some(is_irreducible(poly.num()))
            }
            _ => None,
        })
        .collect();
    VerifyReport {
        mode,
        passed: identity_holds && degree_ok && ratio_ok,
        identity_holds,
        conclusive,
        points,
        witness,
        degree_ok,
        ratio_ok,
        irreducible,
    }
}

fn product_tree(mut polys: Vec<RatPoly>) -> RatPoly {
    if polys.is_empty() {
        return RatPoly::one();
    }
    while polys.len() > 1 {
        polys = polys
            .par_chunks(2)
            .map(|pair| match pair {
                [a, b] => a * b,
                [a] => a.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    polys.pop().expect("nonempty")
}

fn symbolic(c: &Certificate) -> (bool, bool, usize, Option<BigInt>) {
    let lhs = RatPoly::from(c.f.clone()).compose(&c.g);
    let expanded: Vec<RatPoly> = c.factors.par_iter().map(FactorExpr::expand).collect();
    let rhs = product_tree(expanded).scale(&c.scalar);
    if lhs == rhs {
        return (true, true, 0, None);
    }
    // a nonzero difference of degree D vanishes at no more than D integers
    let diff = &lhs - &rhs;
    let witness = (0..=diff.deg() as i64 + 1)
        .map(BigInt::from)
        .find(|x| !diff.eval_int(x).is_zero());
    (false, true, 0, witness)
}

fn probabilistic(c: &Certificate, opts: &VerifyOptions) -> (bool, bool, usize, Option<BigInt>) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut xs: Vec<BigInt> = (0..opts.points).map(|_| BigInt::from(rng.gen::<u64>())).collect();
    xs.sort();
    xs.dedup();
    let agree: Vec<bool> = xs.par_iter().map(|x| c.holds_at(x)).collect();
    let witness = xs.iter().zip(&agree).find(|(_, ok)| !**ok).map(|(x, _)| x.clone());
    let holds = witness.is_none();
    let conclusive = !holds || xs.len() > c.total_degree();
    (holds, conclusive, xs.len(), witness)
}

impl Certificate {
    /// Verifies and records the report on the certificate.
    pub fn verified_with(mut self, opts: &VerifyOptions) -> Self {
        self.verified = Some(verify_certificate(&self, opts));
        self
    }

    pub fn is_verified(&self) -> bool {
        self.verified.as_ref().is_some_and(|r| r.passed)
    }
}

/// Ensures a freshly built certificate verifies; construction bugs surface
/// as `InvariantViolated` rather than as bad output.
pub(crate) fn finish(c: Certificate) -> crate::Result<Certificate> {
    let c = c.verified_with(&VerifyOptions::default());
    let report = c.verified.as_ref().expect("just verified");
    if !report.passed {
        return Err(crate::Error::InvariantViolated(format!(
            "{} certificate failed verification (identity {}, degrees {}, ratio {})",
            c.method, report.identity_holds, report.degree_ok, report.ratio_ok
        )));
    }
    Ok(c)
}

/// Ratio as a float, for reports.
pub fn ratio_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::certificate::Method;
    use crate::exactalg::{parse_int_poly, parse_poly};

    fn cert(f: &str, g: &str, factors: &[&str]) -> Certificate {
        Certificate::new(
            parse_int_poly(f).unwrap(),
            parse_poly(g).unwrap(),
            BigRational::from_integer(1.into()),
            factors
                .iter()
                .map(|s| FactorExpr::explicit(parse_int_poly(s).unwrap()))
                .collect(),
            Method::Decomposition,
        )
    }

    #[test]
    fn quartic_identity_passes_both_modes() {
        let c = cert("t^4+4*t^2-t+1", "t^2+2*t-2", &["t^4+4*t^3-9*t+5", "t^4+4*t^3-7*t+7"]);
        let s = verify_certificate(&c, &VerifyOptions::with_mode(VerifyMode::Symbolic));
        assert!(s.passed && s.conclusive);
        assert_eq!(s.irreducible, vec![Some(true), Some(true)]);
        let p = verify_certificate(&c, &VerifyOptions::with_mode(VerifyMode::Probabilistic));
        assert!(p.passed && p.conclusive, "32 points exceed degree 8");
        assert_eq!(p.points, 32);
    }

    #[test]
    fn perturbed_factor_fails_with_witness() {
        let c = cert("t^4+4*t^2-t+1", "t^2+2*t-2", &["t^4+4*t^3-9*t+6", "t^4+4*t^3-7*t+7"]);
        for mode in [VerifyMode::Symbolic, VerifyMode::Probabilistic] {
            let r = verify_certificate(&c, &VerifyOptions::with_mode(mode));
            assert!(!r.passed && !r.identity_holds && r.conclusive);
            let w = r.witness.expect("witness");
            assert_ne!(c.lhs_at(&w), c.rhs_at(&w));
        }
    }

    #[test]
    fn stale_ratio_is_caught() {
        let mut c = cert("t^2+1", "t^2+t+1", &["t^2+1", "t^2+2*t+2"]);
        assert!(verify_certificate(&c, &VerifyOptions::default()).passed);
        c.polysmoothness = BigRational::new(1.into(), 4.into());
        let r = verify_certificate(&c, &VerifyOptions::default());
        assert!(r.identity_holds && !r.ratio_ok && !r.passed);
    }

    #[test]
    fn report_round_trips_through_certificate_json() {
        let c = cert("t^4+4*t^2-t+1", "t^2+2*t-2", &["t^4+4*t^3-9*t+6", "t^4+4*t^3-7*t+7"])
            .verified_with(&VerifyOptions::default());
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(!back.is_verified());
    }
}
