//! Products of binomials `prod (a_j t^(k_j) - b_j)`.
//!
//! Primes up to `y` coprime to the `k_j` are split into `l` sets with
//! products `gamma_j`. With `Gamma = prod gamma_j` the substitution
//! `g = t^Gamma * prod a_j^(lambda_j) b_j^(mu_j)` turns each
//! `a_j g^(k_j) - b_j` into `b_j (z_j^(gamma_j) - 1)` for a monomial `z_j`,
//! which splits into cyclotomic factors of degree at most
//! `phi(gamma_j) k_j Gamma_j`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, FactorExpr, Method};
use super::verify::finish;
use crate::error::{Error, Result};
use crate::exactalg::numutil::{divisors, mod_inverse, primes_below};
use crate::exactalg::IntPoly;

/// One binomial `a t^k - b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binomial {
    #[serde(with = "crate::serde_big::bigint")]
    pub a: BigInt,
    #[serde(with = "crate::serde_big::bigint")]
    pub b: BigInt,
    pub k: u64,
}

impl Binomial {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, k: u64) -> Self {
        Binomial {
            a: a.into(),
            b: b.into(),
            k,
        }
    }

    pub fn poly(&self) -> IntPoly {
        IntPoly::monomial(self.a.clone(), self.k as usize).add_constant(&-&self.b)
    }
}

/// Status of the size conditions on one prime set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetCheck {
    /// `prod (1 - 1/p)` over the set.
    pub density: f64,
    /// `2 (k / (phi(k) log y))^(1/l)`.
    pub density_bound: f64,
    pub density_ok: bool,
    /// `log prod p` over the set.
    pub log_product: f64,
    /// `log (y^2 e^(5y / 4l))`.
    pub log_product_bound: f64,
    pub product_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimePartition {
    pub y: u64,
    /// Product of the `k_j`; the partitioned primes are coprime to it.
    pub k: u64,
    pub sets: Vec<Vec<u64>>,
    /// `gamma_i = prod P_i`.
    #[serde(with = "crate::serde_big::bigint_vec")]
    pub gammas: Vec<BigInt>,
    /// `Gamma_i = prod_{j != i} gamma_j`.
    #[serde(with = "crate::serde_big::bigint_vec")]
    pub residuals: Vec<BigInt>,
    #[serde(with = "crate::serde_big::bigint")]
    pub gamma: BigInt,
    pub checks: Vec<SetCheck>,
}

impl Eq for PrimePartition {}

impl PrimePartition {
    /// Greedy split: primes in descending order, each to the set whose
    /// `sum log(p / (p - 1))` is currently smallest (lowest index on ties).
    pub fn greedy(y: u64, ks: &[u64]) -> Result<Self> {
        let l = ks.len();
        let k: u64 = ks.iter().product();
        let mut primes: Vec<u64> = primes_below(y + 1).into_iter().filter(|p| !k.is_multiple_of(*p)).collect();
        primes.reverse();
        let mut sets = vec![Vec::new(); l];
        let mut weight = vec![0f64; l];
        for p in primes {
            let (i, _) = weight
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .expect("l >= 1");
            sets[i].push(p);
            weight[i] += (p as f64 / (p as f64 - 1.0)).ln();
        }
        if let Some(i) = sets.iter().position(Vec::is_empty) {
            return Err(Error::EmptyPartitionSet(i + 1));
        }
        for s in &mut sets {
            s.sort_unstable();
        }
        let gammas: Vec<BigInt> = sets.iter().map(|s| s.iter().map(|&p| BigInt::from(p)).product()).collect();
        let gamma: BigInt = gammas.iter().product();
        let residuals = gammas.iter().map(|g| &gamma / g).collect();
        let k_over_phi: f64 = crate::exactalg::numutil::small_factor(k)
            .iter()
            .map(|&(p, _)| p as f64 / (p as f64 - 1.0))
            .product();
        let ln_y = (y as f64).ln();
        let checks = sets
            .iter()
            .map(|s| {
                let density: f64 = s.iter().map(|&p| 1.0 - 1.0 / p as f64).product();
                let density_bound = 2.0 * (k_over_phi / ln_y).powf(1.0 / l as f64);
                let log_product: f64 = s.iter().map(|&p| (p as f64).ln()).sum();
                let log_product_bound = 2.0 * ln_y + 5.0 * y as f64 / (4.0 * l as f64);
                SetCheck {
                    density,
                    density_bound,
                    density_ok: density < density_bound,
                    log_product,
                    log_product_bound,
                    product_ok: log_product < log_product_bound,
                }
            })
            .collect();
        Ok(PrimePartition {
            y,
            k,
            sets,
            gammas,
            residuals,
            gamma,
            checks,
        })
    }
}

/// Largest `Gamma` accepted; the substitution has degree `Gamma`.
pub const MAX_GAMMA: u64 = 1 << 22;

/// Exponents of the construction, exposed for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialExponents {
    pub lambda: Vec<BigInt>,
    pub mu: Vec<BigInt>,
    /// `big_lambda[i][j]`, `big_mu[i][j]`: exponents of `a_i`, `b_i` in `z_j`.
    pub big_lambda: Vec<Vec<BigInt>>,
    pub big_mu: Vec<Vec<BigInt>>,
}

fn exact_div(n: &BigInt, d: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = n.div_rem(d);
    if !r.is_zero() {
        return Err(Error::InvariantViolated(format!("{what} is not an integer")));
    }
    Ok(q)
}

fn pow_exp(base: &BigInt, e: &BigInt) -> Result<BigInt> {
    let e = u32::try_from(e).map_err(|_| Error::BudgetExceeded(format!("exponent {e} too large")))?;
    Ok(base.pow(e))
}

pub fn exponents(binomials: &[Binomial], part: &PrimePartition) -> Result<BinomialExponents> {
    let l = binomials.len();
    let mut lambda = Vec::with_capacity(l);
    let mut mu = Vec::with_capacity(l);
    for j in 0..l {
        let gj = &part.gammas[j];
        let m = BigInt::from(binomials[j].k) * &part.residuals[j];
        let inv = mod_inverse(&m, gj)?;
        // k_j Gamma_j lt = -1 and k_j Gamma_j mt = 1 modulo gamma_j, both in [1, gamma_j)
        let lt = (-&inv).mod_floor(gj);
        let mt = inv;
        lambda.push(&part.residuals[j] * lt);
        mu.push(&part.residuals[j] * mt);
    }
    let mut big_lambda = vec![vec![BigInt::zero(); l]; l];
    let mut big_mu = vec![vec![BigInt::zero(); l]; l];
    for i in 0..l {
        for j in 0..l {
            let kj = BigInt::from(binomials[j].k);
            let gj = &part.gammas[j];
            let (ln, mn) = if i == j {
                (&kj * &lambda[j] + 1, &kj * &mu[j] - 1)
            } else {
                (&kj * &lambda[i], &kj * &mu[i])
            };
            big_lambda[i][j] = exact_div(&ln, gj, "Lambda")?;
            big_mu[i][j] = exact_div(&mn, gj, "Mu")?;
        }
    }
    Ok(BinomialExponents {
        lambda,
        mu,
        big_lambda,
        big_mu,
    })
}

pub fn binomial_product_construct(binomials: &[Binomial], y: u64) -> Result<Certificate> {
    if binomials.is_empty() {
        return Err(Error::BadParameters("empty binomial list".into()));
    }
    for (j, s) in binomials.iter().enumerate() {
        if s.a.is_zero() {
            return Err(Error::ZeroLead(j + 1));
        }
        if s.b.is_zero() {
            return Err(Error::BadParameters(format!("b_{} is zero", j + 1)));
        }
        if s.k == 0 {
            return Err(Error::BadParameters(format!("k_{} is zero", j + 1)));
        }
    }
    let ks: Vec<u64> = binomials.iter().map(|s| s.k).collect();
    let part = PrimePartition::greedy(y, &ks)?;
    if part.gamma > BigInt::from(MAX_GAMMA) {
        return Err(Error::BudgetExceeded(format!("Gamma = {} exceeds {MAX_GAMMA}", part.gamma)));
    }
    let gamma = u64::try_from(&part.gamma).expect("bounded above");
    let ex = exponents(binomials, &part)?;

    let mut gcoef = BigInt::one();
    for (j, s) in binomials.iter().enumerate() {
        gcoef *= pow_exp(&s.a, &ex.lambda[j])? * pow_exp(&s.b, &ex.mu[j])?;
    }
    let g = IntPoly::monomial(gcoef, gamma as usize);
    let f: IntPoly = binomials.iter().map(Binomial::poly).product();
    let scalar: BigInt = binomials.iter().map(|s| s.b.clone()).product();

    let mut factors = Vec::new();
    for j in 0..binomials.len() {
        let mut coeff = BigInt::one();
        for (i, s) in binomials.iter().enumerate() {
            coeff *= pow_exp(&s.a, &ex.big_lambda[i][j])? * pow_exp(&s.b, &ex.big_mu[i][j])?;
        }
        let power = binomials[j].k * u64::try_from(&part.residuals[j]).expect("divides Gamma");
        let gj = u64::try_from(&part.gammas[j]).expect("divides Gamma");
        for e in divisors(gj) {
            factors.push(FactorExpr::CycloOfMonomial {
                e,
                coeff: BigRational::from_integer(coeff.clone()),
                power,
            });
        }
    }
    let mut cert = Certificate::new(f, g.into(), BigRational::from_integer(scalar), factors, Method::Binomial);
    for (i, c) in part.checks.iter().enumerate() {
        if !(c.density_ok && c.product_ok) {
            cert.notes.push(format!(
                "warning: size condition fails for set {} at y = {} (density {}, product {})",
                i + 1,
                y,
                c.density_ok,
                c.product_ok
            ));
        }
    }
    cert.partition = Some(part);
    finish(cert)
}
