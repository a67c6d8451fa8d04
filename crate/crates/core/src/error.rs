use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::smoothness::PrimeFactorization;

/// One failed attempt of the quadratic seed search, kept for the error report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeedAttempt {
    pub prime: u64,
    pub max_exponent: u32,
    pub candidates_examined: u64,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("operation undefined on the zero element")]
    ZeroElement,
    #[error("element does not generate the field")]
    NotAGenerator,
    #[error("prime {0} divides the leading coefficient")]
    BadPrime(u64),
    #[error("polynomial is not irreducible over Q")]
    NotIrreducible,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("degree too small: need at least {needed}, got {got}")]
    DegreeTooSmall { needed: usize, got: usize },
    #[error("leading coefficient a_{0} of a binomial is zero")]
    ZeroLead(usize),
    #[error("prime partition set {0} is empty; increase y")]
    EmptyPartitionSet(usize),
    #[error("decomposition identity f = g(h(t)) - t does not hold")]
    IdentityFails,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("polynomial is not cubic")]
    NotCubic,
    #[error("seed search exhausted after {} attempt(s)", .0.len())]
    SeedSearchExhausted(Vec<SeedAttempt>),
    #[error("integer factorization budget exceeded; unfactored cofactor {remaining}")]
    FactorBudgetExceeded {
        partial: Box<PrimeFactorization>,
        remaining: BigInt,
    },
    #[error("cannot factor zero")]
    Zero,
    #[error("no construction reaches ratio {target} within the configured limits")]
    CertificateTooCoarse { target: String },
    #[error("recombination exceeded {0} subsets")]
    RecombinationLimit(u64),
    #[error("recovered factor does not divide the cofactor: {0}")]
    RecoveryMismatch(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("exponent at byte {offset} is not a nonnegative integer")]
    NonIntegerExponent { offset: usize },
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

impl Error {
    /// Short machine-readable tag, used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotDivisible => "NotDivisible",
            Error::DivisionByZero => "DivisionByZero",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NotCoprime => "NotCoprime",
            Error::FieldMismatch => "FieldMismatch",
            Error::ZeroElement => "ZeroElement",
            Error::NotAGenerator => "NotAGenerator",
            Error::BadPrime(_) => "BadPrime",
            Error::NotIrreducible => "NotIrreducible",
            Error::NotMonic => "NotMonic",
            Error::ZeroConstantTerm => "ZeroConstantTerm",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::ZeroLead(_) => "ZeroLead",
            Error::EmptyPartitionSet(_) => "EmptyPartitionSet",
            Error::IdentityFails => "IdentityFails",
            Error::BadParameters(_) => "BadParameters",
            Error::NotCubic => "NotCubic",
            Error::SeedSearchExhausted(_) => "SeedSearchExhausted",
            Error::FactorBudgetExceeded { .. } => "FactorBudgetExceeded",
            Error::Zero => "Zero",
            Error::CertificateTooCoarse { .. } => "CertificateTooCoarse",
            Error::RecombinationLimit(_) => "RecombinationLimit",
            Error::RecoveryMismatch(_) => "RecoveryMismatch",
            Error::InvariantViolated(_) => "InvariantViolated",
            Error::Syntax { .. } => "SyntaxError",
            Error::NonIntegerExponent { .. } => "NonIntegerExponent",
            Error::Malformed(_) => "Malformed",
            Error::BudgetExceeded(_) => "BudgetExceeded",
        }
    }
}

impl Error {
    /// `{"kind", "message"}` plus variant-specific details.
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "kind": self.kind(), "message": self.to_string() });
        let details = match self {
            Error::SeedSearchExhausted(attempts) => json!({ "attempts": attempts }),
            Error::FactorBudgetExceeded { partial, remaining } => json!({
                "partial": partial,
                "remaining": remaining.to_string(),
            }),
            Error::Syntax { offset, .. } | Error::NonIntegerExponent { offset } => json!({ "offset": offset }),
            Error::DegreeTooSmall { needed, got } => json!({ "needed": needed, "got": got }),
            Error::ZeroLead(i) | Error::EmptyPartitionSet(i) => json!({ "index": i }),
            _ => Value::Null,
        };
        if !details.is_null() {
            v["details"] = details;
        }
        v
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
