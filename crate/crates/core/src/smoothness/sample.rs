//! Sampling `f(g(m))` through a certificate and measuring how smooth the
//! values are.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::integer::{factor_integer_with, FactorBudget, PrimeFactorization};
use crate::constructions::quadratic::exponent_k;
use crate::constructions::{polysmooth_quadratic, Certificate, QuadraticBudget};
use crate::error::{Error, Result};
use crate::exactalg::numutil::{divisors, euler_phi, exact_sqrt};
use crate::exactalg::IntPoly;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorValue {
    #[serde(with = "crate::serde_big::bigint")]
    pub value: BigInt,
    pub factorization: PrimeFactorization,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleRow {
    pub m: i64,
    /// `|f(g(m))|`.
    #[serde(with = "crate::serde_big::bigint")]
    pub n_value: BigInt,
    pub factors: Vec<FactorValue>,
    /// Factorization of `N`, assembled from the factor values.
    pub factorization: PrimeFactorization,
    #[serde(with = "crate::serde_big::bigint")]
    pub lpf: BigInt,
    /// `log LPF(N) / log N`, zero when `N <= 1`.
    pub theta_emp: f64,
    /// `N = |scalar * prod values|` and agrees with direct evaluation.
    pub identity_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessSummary {
    pub rows: usize,
    pub max_theta_emp: f64,
    /// Certificate ratio: max factor degree over total degree.
    pub predicted_ratio: f64,
    pub identities_ok: bool,
    /// Rows with `theta_emp <= predicted_ratio + margin`, per margin.
    pub within: Vec<(f64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub rows: Vec<SampleRow>,
    pub summary: SmoothnessSummary,
}

const MARGINS: [f64; 3] = [0.0, 0.05, 0.15];

fn integer_value(q: BigRational, what: &str) -> Result<BigInt> {
    if !q.is_integer() {
        return Err(Error::BadParameters(format!("{what} is not an integer")));
    }
    Ok(q.to_integer())
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).abs().ln();
    }
    let shift = bits - 64;
    (n.abs() >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

fn sample_row(c: &Certificate, m: i64, budget: FactorBudget) -> Result<SampleRow> {
    let x = BigInt::from(m);
    let direct = integer_value(c.lhs_at(&x), "f(g(m))")?;
    let mut factors = Vec::with_capacity(c.factors.len());
    let mut merged = PrimeFactorization::default();
    let mut product = BigInt::one();
    for fe in &c.factors {
        let v = integer_value(fe.eval(&x), "a factor value")?;
        let fz = if v.is_zero() {
            PrimeFactorization::default()
        } else {
            factor_integer_with(&v, budget)?
        };
        merged = merged.merge(&fz);
        product *= &v;
        factors.push(FactorValue {
            value: v,
            factorization: fz,
        });
    }
    let lhs = &c.scalar * BigRational::from_integer(product);
    let identity_ok = lhs.is_integer() && lhs.to_integer() == direct;
    let n_value = direct.abs();

    // Fold in the scalar: its numerator is small, its denominator cancels
    // against primes already present.
    let num = c.scalar.numer().abs();
    if !num.is_one() && !num.is_zero() {
        merged = merged.merge(&factor_integer_with(&num, budget)?);
    }
    let mut den = c.scalar.denom().clone();
    let mut pairs = Vec::new();
    for (p, e) in merged.pairs {
        let mut e = e;
        while e > 0 && den.is_multiple_of(&p) {
            den /= &p;
            e -= 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    }
    let factorization = PrimeFactorization { pairs };
    let identity_ok = identity_ok && den.is_one() && (n_value.is_zero() || factorization.product() == n_value);
    let lpf = factorization.largest_prime().cloned().unwrap_or_else(BigInt::one);
    let theta_emp = if n_value > BigInt::one() {
        ln_big(&lpf) / ln_big(&n_value)
    } else {
        0.0
    };
    Ok(SampleRow {
        m,
        n_value,
        factors,
        factorization,
        lpf,
        theta_emp,
        identity_ok,
    })
}

pub fn smoothness_sample(c: &Certificate, m_lo: i64, m_hi: i64) -> Result<SmoothnessReport> {
    smoothness_sample_with(c, m_lo, m_hi, FactorBudget::default())
}

/// Rows are computed in parallel and returned in order of `m`.
pub fn smoothness_sample_with(c: &Certificate, m_lo: i64, m_hi: i64, budget: FactorBudget) -> Result<SmoothnessReport> {
    let ms: Vec<i64> = if m_lo > m_hi { Vec::new() } else { (m_lo..=m_hi).collect() };
    let rows: Vec<SampleRow> = ms
        .par_iter()
        .map(|&m| sample_row(c, m, budget))
        .collect::<Result<_>>()?;
    let predicted = c.polysmoothness.to_f64().unwrap_or(f64::NAN);
    let summary = SmoothnessSummary {
        rows: rows.len(),
        max_theta_emp: rows.iter().map(|r| r.theta_emp).fold(0.0, f64::max),
        predicted_ratio: predicted,
        identities_ok: rows.iter().all(|r| r.identity_ok),
        within: MARGINS
            .iter()
            .map(|&d| (d, rows.iter().filter(|r| r.theta_emp <= predicted + d).count()))
            .collect(),
    };
    Ok(SmoothnessReport { rows, summary })
}

impl SmoothnessReport {
    /// Aligned-column table.
    pub fn to_table(&self) -> String {
        let header = ["m", "N", "LPF(N)", "theta_emp", "factor LPFs"];
        let body: Vec<[String; 5]> = self
            .rows
            .iter()
            .map(|r| {
                let lpfs: Vec<String> = r
                    .factors
                    .iter()
                    .map(|f| f.factorization.largest_prime().map_or("1".into(), |p| p.to_string()))
                    .collect();
                [
                    r.m.to_string(),
                    r.n_value.to_string(),
                    r.lpf.to_string(),
                    format!("{:.6}", r.theta_emp),
                    lpfs.join(","),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &body {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let line = |cells: &[String], out: &mut String| {
            let parts: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&header.map(String::from), &mut out);
        for row in &body {
            line(row, &mut out);
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "rows {}  max theta_emp {:.6}  predicted ratio {:.6}  identities {}",
            s.rows,
            s.max_theta_emp,
            s.predicted_ratio,
            if s.identities_ok { "ok" } else { "FAILED" }
        );
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,N,lpf,theta_emp,factor_values,factor_lpfs\n");
        for r in &self.rows {
            let vals: Vec<String> = r.factors.iter().map(|f| f.value.to_string()).collect();
            let lpfs: Vec<String> = r
                .factors
                .iter()
                .map(|f| f.factorization.largest_prime().map_or("1".into(), |p| p.to_string()))
                .collect();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.m,
                r.n_value,
                r.lpf,
                r.theta_emp,
                vals.join(";"),
                lpfs.join(";")
            );
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct WitnessOptions {
    /// Required margin between the certificate ratio and `eps`.
    pub slack: f64,
    /// Largest prime cutoff `X` tried when building a certificate.
    pub max_cutoff: u64,
    /// Values of `m` tried before giving up.
    pub max_samples: i64,
    /// Per-value factoring budget; values beyond it are skipped.
    pub factor_budget: FactorBudget,
    pub quadratic: QuadraticBudget,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        WitnessOptions {
            slack: 0.1,
            max_cutoff: 12,
            max_samples: 10_000,
            factor_budget: FactorBudget { rho_iterations: 1 << 16 },
            quadratic: QuadraticBudget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub m: i64,
    /// `n = g(m)`.
    #[serde(with = "crate::serde_big::bigint")]
    pub n: BigInt,
    /// `|f(n)|`.
    #[serde(with = "crate::serde_big::bigint")]
    pub value: BigInt,
    pub factorization: PrimeFactorization,
    #[serde(with = "crate::serde_big::bigint")]
    pub lpf: BigInt,
    /// `log LPF / log n`.
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub certificate: Certificate,
    pub eps: f64,
    pub witnesses: Vec<Witness>,
    pub samples: i64,
    /// Samples skipped because a factor value exceeded the factoring budget.
    pub undecided: i64,
}

/// Ratio a quadratic certificate at cutoff `x` would reach, without
/// building it: `max_{d | k} phi(d) / k`.
fn predicted_quadratic_ratio(a: &BigInt, x: u64) -> Option<f64> {
    let k = exponent_k(a, x).ok()?;
    if k == 1 {
        return None;
    }
    let best = divisors(k).into_iter().map(euler_phi).max()?;
    Some(best as f64 / k as f64)
}

/// Certificate for a quadratic `f` with ratio below `eps (1 - slack)`.
pub fn quadratic_certificate_for(f: &IntPoly, eps: f64, opts: &WitnessOptions) -> Result<Certificate> {
    if f.deg() != 2 {
        return Err(Error::BadParameters("a certificate must be supplied for non-quadratic f".into()));
    }
    let target = eps * (1.0 - opts.slack);
    let disc = f.coeff(1) * f.coeff(1) - BigInt::from(4) * f.coeff(2) * f.coeff(0);
    let reducible = exact_sqrt(&disc).is_some();
    let lead = f.primitive_part().lead();
    for x in 3..=opts.max_cutoff {
        if !reducible && !predicted_quadratic_ratio(&lead, x).is_some_and(|r| r < target) {
            continue;
        }
        let c = match polysmooth_quadratic(f, x, &opts.quadratic) {
            Ok(c) => c,
            Err(Error::EmptyPartitionSet(_)) | Err(Error::BadParameters(_)) if reducible => continue,
            Err(e) => return Err(e),
        };
        if c.polysmoothness.to_f64().is_some_and(|r| r < target) {
            return Ok(c);
        }
    }
    Err(Error::CertificateTooCoarse {
        target: format!("{target:.6}"),
    })
}

pub fn smooth_witnesses(f: &IntPoly, eps: f64, count: usize, opts: &WitnessOptions) -> Result<WitnessReport> {
    let cert = quadratic_certificate_for(f, eps, opts)?;
    smooth_witnesses_from(cert, eps, count, opts)
}

enum Candidate {
    Witness(Witness),
    Rejected,
    /// Some factor value could not be factored within the budget.
    Undecided,
}

/// Factors the certificate's factor values at `m`, smallest first, and
/// stops at the first prime above `n^eps`.
fn witness_at(cert: &Certificate, m: i64, eps: f64, budget: FactorBudget) -> Result<Candidate> {
    let x = BigInt::from(m);
    let n = integer_value(cert.g.eval_int(&x), "g(m)")?;
    if n <= BigInt::one() {
        return Ok(Candidate::Rejected);
    }
    let limit = eps * ln_big(&n);
    let too_big = |p: &BigInt| ln_big(p) > limit;
    let mut values = cert
        .factors
        .iter()
        .map(|fe| integer_value(fe.eval(&x), "a factor value").map(|v| v.abs()))
        .collect::<Result<Vec<_>>>()?;
    if values.iter().any(Zero::is_zero) {
        return Ok(Candidate::Rejected);
    }
    values.sort();
    for v in &values {
        match factor_integer_with(v, budget) {
            Ok(fz) => {
                if fz.largest_prime().is_some_and(too_big) {
                    return Ok(Candidate::Rejected);
                }
            }
            Err(Error::FactorBudgetExceeded { partial, .. }) => {
                if partial.largest_prime().is_some_and(too_big) {
                    return Ok(Candidate::Rejected);
                }
                return Ok(Candidate::Undecided);
            }
            Err(e) => return Err(e),
        }
    }
    let row = sample_row(cert, m, budget)?;
    if !row.identity_ok {
        return Err(Error::InvariantViolated(format!("product identity fails at m = {m}")));
    }
    let exponent = ln_big(&row.lpf) / ln_big(&n);
    if exponent > eps {
        return Ok(Candidate::Rejected);
    }
    Ok(Candidate::Witness(Witness {
        m,
        n,
        value: row.n_value,
        factorization: row.factorization,
        lpf: row.lpf,
        exponent,
    }))
}

/// Samples `n = g(m)` for `m = 1, 2, ...` until `count` values have
/// `LPF(f(n)) <= n^eps`. Values that cannot be factored within the budget
/// are skipped and counted.
pub fn smooth_witnesses_from(cert: Certificate, eps: f64, count: usize, opts: &WitnessOptions) -> Result<WitnessReport> {
    if !cert.is_verified() {
        return Err(Error::BadParameters("certificate is not verified".into()));
    }
    let mut witnesses = Vec::new();
    let mut undecided = 0;
    let mut m = 0;
    let batch = 64;
    while witnesses.len() < count && m < opts.max_samples {
        let hi = (m + batch).min(opts.max_samples);
        let found = (m + 1..=hi)
            .into_par_iter()
            .map(|m| witness_at(&cert, m, eps, opts.factor_budget))
            .collect::<Result<Vec<_>>>()?;
        m = hi;
        for c in found {
            match c {
                Candidate::Witness(w) if witnesses.len() < count => witnesses.push(w),
                Candidate::Undecided => undecided += 1,
                _ => {}
            }
        }
    }
    if witnesses.len() < count {
        return Err(Error::BudgetExceeded(format!(
            "found {} of {count} witnesses in {} samples ({undecided} not factored within budget)",
            witnesses.len(),
            opts.max_samples
        )));
    }
    Ok(WitnessReport {
        certificate: cert,
        eps,
        witnesses,
        samples: m,
        undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{quadratic_construct, trinomial_construct, TrinomialVariant};
    use crate::exactalg::parse_int_poly;

    fn p(s: &str) -> IntPoly {
        parse_int_poly(s).unwrap()
    }

    fn gaussian() -> Certificate {
        quadratic_construct(&p("t^2+1"), 5, &QuadraticBudget::default()).unwrap().1
    }

    #[test]
    fn gaussian_first_row() {
        let r = smoothness_sample(&gaussian(), 1, 1).unwrap();
        let row = &r.rows[0];
        assert_eq!(row.n_value, BigInt::from(280901));
        assert_eq!(row.factorization.to_string(), "257 * 1093");
        assert_eq!(row.lpf, BigInt::from(1093));
        assert_eq!(
            row.factors.iter().map(|f| f.value.clone()).collect::<Vec<_>>(),
            vec![BigInt::from(257), BigInt::from(121 * 1093)]
        );
        assert!(row.identity_ok);
        let want = (1093f64).ln() / (280901f64).ln();
        assert!((row.theta_emp - want).abs() < 1e-12);
        assert!((row.theta_emp - 0.558).abs() < 1e-3);
    }

    #[test]
    fn empty_range() {
        let r = smoothness_sample(&gaussian(), 5, 4).unwrap();
        assert!(r.rows.is_empty());
        assert_eq!(r.summary.rows, 0);
    }

    #[test]
    fn selmer_rows_are_bounded() {
        let c = trinomial_construct(TrinomialVariant::II, &1.into(), &(-1).into(), 6).unwrap();
        let r = smoothness_sample(&c, 10, 20).unwrap();
        for row in &r.rows {
            assert!(row.identity_ok);
            assert!(row.theta_emp <= 1.0);
            let biggest = row.factors.iter().map(|f| f.value.abs()).max().unwrap();
            assert!(row.lpf <= biggest);
        }
        assert!(r.to_table().lines().count() == r.rows.len() + 2);
        assert!(r.to_csv().starts_with("m,N,"));
    }

    #[test]
    fn witnesses_for_awkward_quadratic() {
        let rep = smooth_witnesses(&p("4*t^2+4*t+9"), 0.9, 3, &WitnessOptions::default()).unwrap();
        assert_eq!(rep.certificate.seed.as_ref().unwrap().k, 3);
        assert_eq!(rep.witnesses.len(), 3);
        for w in &rep.witnesses {
            let v = p("4*t^2+4*t+9").eval(&w.n);
            assert_eq!(w.factorization.product(), v.abs());
            assert!(w.exponent <= 0.9);
        }
    }

    #[test]
    fn unfactorable_samples_are_skipped() {
        let cert = polysmooth_quadratic(&p("t^2+1"), 7, &QuadraticBudget::default()).unwrap();
        let opts = WitnessOptions {
            max_samples: 16,
            factor_budget: FactorBudget { rho_iterations: 1 << 6 },
            ..WitnessOptions::default()
        };
        match smooth_witnesses_from(cert, 0.3, 1, &opts) {
            Err(Error::BudgetExceeded(msg)) => assert!(msg.contains("not factored"), "{msg}"),
            other => panic!("expected an exhausted budget, got {other:?}"),
        }
    }

    #[test]
    fn reducible_quadratic_uses_binomials() {
        let rep = smooth_witnesses(&p("t^2-3*t+2"), 0.9, 2, &WitnessOptions::default()).unwrap();
        assert_eq!(rep.certificate.method, crate::constructions::Method::Binomial);
        assert_eq!(rep.witnesses.len(), 2);
    }

    #[test]
    fn coarse_target_is_reported() {
        let opts = WitnessOptions {
            max_cutoff: 6,
            ..WitnessOptions::default()
        };
        assert!(matches!(
            smooth_witnesses(&p("t^2+1"), 0.3, 1, &opts),
            Err(Error::CertificateTooCoarse { .. })
        ));
    }
}
