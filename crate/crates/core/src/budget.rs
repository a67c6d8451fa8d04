//! Named bundles of search heights and computation caps.

use std::fmt;
use std::str::FromStr;

use crate::constructions::{IterateLimits, QuadraticBudget, VerifyOptions};
use crate::error::Error;
use crate::smoothness::{FactorBudget, WitnessOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Preset {
    /// Small enough for continuous integration.
    Ci,
    #[default]
    Desk,
    /// Hours-long runs, e.g. the height-1000 substitution scan.
    Long,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Ci, Preset::Desk, Preset::Long];

    pub fn as_str(self) -> &'static str {
        match self {
            Preset::Ci => "ci",
            Preset::Desk => "desk",
            Preset::Long => "long",
        }
    }

    pub fn budget(self) -> Budget {
        match self {
            Preset::Ci => Budget {
                preset: self,
                scan_height: 10,
                point_height: 20,
                quadratic: QuadraticBudget {
                    max_exponent: 12,
                    max_m: 20_000,
                    max_primes: 4,
                },
                factor: FactorBudget { rho_iterations: 1 << 20 },
                witness_samples: 2_000,
                witness_factor: FactorBudget { rho_iterations: 1 << 12 },
                symbolic_cap: 2_000,
                iterate: IterateLimits {
                    max_total_degree: 500,
                    factor_max_degree: 40,
                },
            },
            Preset::Desk => Budget {
                preset: self,
                scan_height: 30,
                point_height: 50,
                quadratic: QuadraticBudget::default(),
                factor: FactorBudget::default(),
                witness_samples: 10_000,
                witness_factor: WitnessOptions::default().factor_budget,
                symbolic_cap: VerifyOptions::default().symbolic_cap,
                iterate: IterateLimits::default(),
            },
            Preset::Long => Budget {
                preset: self,
                scan_height: 1000,
                point_height: 1000,
                quadratic: QuadraticBudget {
                    max_exponent: 48,
                    max_m: 2_000_000,
                    max_primes: 16,
                },
                factor: FactorBudget { rho_iterations: 1 << 28 },
                witness_samples: 1_000_000,
                witness_factor: FactorBudget { rho_iterations: 1 << 20 },
                symbolic_cap: 20_000,
                iterate: IterateLimits {
                    max_total_degree: 20_000,
                    factor_max_degree: 80,
                },
            },
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Preset::ALL
            .into_iter()
            .find(|p| p.as_str() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::BadParameters(format!("unknown budget preset '{s}' (expected ci, desk or long)")))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub preset: Preset,
    /// Default height of the quadratic substitution scan.
    pub scan_height: u64,
    /// Default height of the rational point search.
    pub point_height: u64,
    pub quadratic: QuadraticBudget,
    pub factor: FactorBudget,
    /// Values of `m` sampled when hunting for smooth values.
    pub witness_samples: i64,
    /// Per-value factoring budget while hunting for smooth values.
    pub witness_factor: FactorBudget,
    /// Largest total degree verified by full expansion.
    pub symbolic_cap: usize,
    pub iterate: IterateLimits,
}

impl Default for Budget {
    fn default() -> Self {
        Preset::Desk.budget()
    }
}

impl Budget {
    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            symbolic_cap: self.symbolic_cap,
            ..VerifyOptions::default()
        }
    }

    pub fn witness_options(&self) -> WitnessOptions {
        WitnessOptions {
            max_samples: self.witness_samples,
            factor_budget: self.witness_factor,
            quadratic: self.quadratic,
            ..WitnessOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse_and_grow() {
        for p in Preset::ALL {
            assert_eq!(p.as_str().parse::<Preset>().unwrap(), p);
        }
        assert_eq!("DESK".parse::<Preset>().unwrap(), Preset::Desk);
        assert!("huge".parse::<Preset>().is_err());
        let [ci, desk, long] = Preset::ALL.map(Preset::budget);
        assert!(ci.scan_height < desk.scan_height && desk.scan_height < long.scan_height);
        assert_eq!(desk.scan_height, 30);
        assert_eq!(long.scan_height, 1000);
        assert!(ci.quadratic.max_m < long.quadratic.max_m);
    }
}
