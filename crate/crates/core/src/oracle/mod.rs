//! Brute-force Poincaré polynomials from the poset of the maximal building
//! set.
//!
//! Elements of the poset are families of disjoint blocks on `{1..n}`; strict
//! chains are the nested sets, and a chain with jumps `d_1..d_m` contributes
//! `prod_k G_h(d_k)` admissible monomials to the cohomology. Nothing here
//! touches the forest series, so agreement with [`crate::poincare`] is an
//! independent check.

mod chain;
mod element;
mod forest;

use std::fmt;

pub use chain::{chain_contribution, Chain, ChainIter, Poset};
pub use element::{Block, BlockKind, PosetElement, Support};
pub use forest::{forest_of_chain, two_power_groups, ForestShape, TwoPowerGroup, Vertex};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::poincare::{ModelType, QPoly};

/// Environment variable that raises the enumeration caps.
pub const CAP_ENV: &str = "WONDERFUL_ORACLE_CAP";

/// Beyond this the packed jump census and the label masks stop being valid.
pub const HARD_MAX_N: u32 = 12;

/// Largest `n` the oracle accepts per type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub type_a: u32,
    pub type_bd: u32,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            type_a: 8,
            type_bd: 5,
        }
    }
}

impl OracleLimits {
    /// Defaults, raised to `$WONDERFUL_ORACLE_CAP` when that is set to a
    /// larger integer.
    pub fn from_env() -> Self {
        let base = Self::default();
        match std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
        {
            Some(cap) => {
                let cap = cap.min(HARD_MAX_N);
                OracleLimits {
                    type_a: base.type_a.max(cap),
                    type_bd: base.type_bd.max(cap),
                }
            }
            None => base,
        }
    }

    /// Everything the representation supports.
    pub fn unlimited() -> Self {
        OracleLimits {
            type_a: HARD_MAX_N,
            type_bd: HARD_MAX_N,
        }
    }

    pub fn cap(&self, model: ModelType) -> u32 {
        match model {
            ModelType::A => self.type_a,
            _ => self.type_bd,
        }
    }

    pub fn check(&self, model: ModelType, n: u32) -> Result<()> {
        if n < 1 {
            return Err(Error::Domain("the oracle needs n >= 1".into()));
        }
        let cap = self.cap(model).min(HARD_MAX_N);
        if n > cap {
            return Err(Error::ResourceGuard {
                kind: model.letter(),
                n: n as usize,
                cap: cap as usize,
            });
        }
        Ok(())
    }
}

/// All elements of the poset, sorted by dimension then blocks.
pub fn enumerate_elements(model: ModelType, n: u32) -> Result<Vec<PosetElement>> {
    OracleLimits::from_env().check(model, n)?;
    Ok(element::all_elements(model, n))
}

pub fn leq(a: &PosetElement, b: &PosetElement) -> bool {
    a.leq(b)
}

/// The poset on which [`Poset::chains`] streams every strict chain.
pub fn enumerate_chains(model: ModelType, n: u32) -> Result<Poset> {
    Poset::build(model, n)
}

/// Poincaré polynomial summed over every chain of the poset of type `model`
/// on `n` labels (`n` leaves for type A, so rank `n - 1`).
pub fn oracle_poincare(model: ModelType, n: u32, h: u32) -> Result<QPoly> {
    oracle_poincare_with(model, n, h, OracleLimits::from_env(), Execution::default())
}

pub fn oracle_poincare_with(
    model: ModelType,
    n: u32,
    h: u32,
    limits: OracleLimits,
    exec: Execution,
) -> Result<QPoly> {
    if h < 1 {
        return Err(Error::Contract(
            "the induced-arrangement parameter h must be >= 1".into(),
        ));
    }
    Ok(Poset::build_with(model, n, limits, exec)?.poincare(h, exec))
}

/// Whether every split-erased group of chains has `2^{sum (|X| - 1)}`
/// members. Only meaningful for types B and D.
pub fn verify_two_power_counts(model: ModelType, n: u32) -> Result<bool> {
    if model == ModelType::A {
        return Err(Error::Domain(
            "two-power counts concern types B and D".into(),
        ));
    }
    let poset = Poset::build(model, n)?;
    Ok(two_power_groups(&poset).iter().all(TwoPowerGroup::holds))
}

/// One row of the chain census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRecord {
    pub chain: String,
    pub jumps: String,
    pub contribution: String,
}

impl ChainRecord {
    pub fn new(chain: &Chain, h: u32) -> Self {
        let jumps = chain
            .jumps()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(";");
        ChainRecord {
            chain: chain.to_string(),
            jumps,
            contribution: chain_contribution(chain, h).to_string(),
        }
    }
}

impl fmt::Display for ChainRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] {}", self.chain, self.jumps, self.contribution)
    }
}

#[cfg(test)]
mod tests;
