//! Characteristic-zero results from proxy primes, optionally certified over `Q`.
//!
//! The rank of an integer matrix mod `p` never exceeds its rank over `Q`, so a
//! computation whose answer is monotone in ranks is run over several large
//! primes and accepted only if they agree. Small instances can additionally
//! be redone with exact rational arithmetic.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::{Field, FieldSpec, PrimeField, Rationals};
use super::rank::RankConfig;
use super::LinalgError;

/// Proxy primes used for characteristic zero unless configured otherwise.
pub const DEFAULT_PROXY_PRIMES: [u64; 2] = [32003, 32009];

const MIN_PROXY_PRIME: u64 = 10_000;

/// How a reported value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Certification {
    #[serde(rename = "exact-Fp")]
    ExactFp,
    #[serde(rename = "multi-prime-char0")]
    MultiPrimeChar0,
    #[serde(rename = "exact-Q")]
    ExactQ,
}

impl Certification {
    pub fn label(self) -> &'static str {
        match self {
            Certification::ExactFp => "exact-Fp",
            Certification::MultiPrimeChar0 => "multi-prime-char0",
            Certification::ExactQ => "exact-Q",
        }
    }
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharZeroPolicy {
    pub proxy_primes: Vec<u64>,
    /// Redo the computation over `Q` when its size hint is at most this.
    pub exact_rational_limit: Option<usize>,
    pub rank: RankConfig,
}

impl Default for CharZeroPolicy {
    fn default() -> Self {
        CharZeroPolicy {
            proxy_primes: DEFAULT_PROXY_PRIMES.to_vec(),
            exact_rational_limit: None,
            rank: RankConfig::default(),
        }
    }
}

impl CharZeroPolicy {
    pub fn with_primes(primes: Vec<u64>) -> Result<Self, LinalgError> {
        let policy = CharZeroPolicy {
            proxy_primes: primes,
            ..Default::default()
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<(), LinalgError> {
        if self.proxy_primes.len() < 2 {
            return Err(LinalgError::BadProxyPrimes { min: MIN_PROXY_PRIME });
        }
        for &p in &self.proxy_primes {
            if p <= MIN_PROXY_PRIME {
                return Err(LinalgError::BadProxyPrimes { min: MIN_PROXY_PRIME });
            }
            PrimeField::new(p)?;
        }
        Ok(())
    }

    pub fn prime_field(&self, p: u64) -> Result<PrimeField, LinalgError> {
        PrimeField::with_config(p, self.rank.clone())
    }
}

/// A computation that can be carried out over any exact field.
pub trait FieldComputation: Sync {
    type Output: Clone + PartialEq + fmt::Debug + Send;
    type Error: From<LinalgError> + Send;

    fn run<F: Field>(&self, field: &F) -> Result<Self::Output, Self::Error>;

    /// Rough size of the problem, compared against the exact-`Q` limit.
    fn size_hint(&self) -> usize {
        usize::MAX
    }
}

/// A value together with how it was certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certified<T> {
    pub value: T,
    pub certification: Certification,
    /// Set when the exact rational run disagreed with the proxy primes; the
    /// value is then the proxy result and must not be trusted.
    pub flagged: Option<String>,
}

/// Runs `task` over the field named by `spec`, using the proxy-prime policy
/// in characteristic zero.
pub fn run_certified<C: FieldComputation>(
    spec: FieldSpec,
    policy: &CharZeroPolicy,
    task: &C,
) -> Result<Certified<C::Output>, C::Error> {
    if !spec.is_zero_char() {
        let field = policy.prime_field(spec.characteristic())?;
        return Ok(Certified {
            value: task.run(&field)?,
            certification: Certification::ExactFp,
            flagged: None,
        });
    }
    policy.validate()?;
    let fields = policy
        .proxy_primes
        .iter()
        .map(|&p| policy.prime_field(p))
        .collect::<Result<Vec<_>, _>>()?;
    let results: Vec<C::Output> = fields.par_iter().map(|f| task.run(f)).collect::<Result<Vec<_>, _>>()?;
    let first = results[0].clone();
    if let Some((i, other)) = results.iter().enumerate().find(|(_, r)| **r != first) {
        return Err(LinalgError::ProxyDisagreement(format!(
            "F_{} gives {:?}, F_{} gives {:?}",
            policy.proxy_primes[0], first, policy.proxy_primes[i], other
        ))
        .into());
    }
    if let Some(limit) = policy.exact_rational_limit {
        if task.size_hint() <= limit {
            let exact = task.run(&Rationals)?;
            if exact == first {
                return Ok(Certified {
                    value: exact,
                    certification: Certification::ExactQ,
                    flagged: None,
                });
            }
            return Ok(Certified {
                value: first,
                certification: Certification::MultiPrimeChar0,
                flagged: Some(format!("exact rational result {exact:?} differs")),
            });
        }
    }
    Ok(Certified {
        value: first,
        certification: Certification::MultiPrimeChar0,
        flagged: None,
    })
}
