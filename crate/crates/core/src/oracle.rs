//! Exhaustive ground truth for the continuous solvers.
//!
//! Nothing here uses a closed form for the quantity it checks: the optimum is
//! found by scanning every integer deposit, and allocation counts come from
//! walking every allocation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::deposit::DepositScenario;
use crate::{Error, Result};

/// Generator used by [`coin_turnover`], reported with every result.
pub const GENERATOR: &str = "ChaCha8Rng/seed_from_u64";

/// Practical bound on [`brute_force_optimum`].
pub const MAX_BRUTE_FORCE_N: u64 = 1_000_000;

/// Practical bound on the states visited by [`enumerate_allocations`].
pub const MAX_ENUMERATION_STATES: u64 = 100_000_000;

/// Integer argmax of the scenario income.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegerOptimum {
    pub k: u64,
    pub income: f64,
}

/// Scans `k = 0, …, N` and keeps the best income; ties go to the smaller `k`.
pub fn brute_force_optimum(beta: f64, s: &DepositScenario) -> Result<IntegerOptimum> {
    if s.n() > MAX_BRUTE_FORCE_N {
        return Err(Error::domain(format!(
            "brute force limited to N <= {MAX_BRUTE_FORCE_N}, got {}",
            s.n()
        )));
    }
    let mut best = IntegerOptimum {
        k: 0,
        income: s.total_income(0.0, beta)?,
    };
    for k in 1..=s.n() {
        let income = s.total_income(k as f64, beta)?;
        if income > best.income {
            best = IntegerOptimum { k, income };
        }
    }
    Ok(best)
}

/// Allocations of `K` indistinguishable bonds over groups of banks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllocationEnumeration {
    pub k: u64,
    pub bank_multiplicities: Vec<u64>,
    pub count: u64,
}

impl AllocationEnumeration {
    /// Walks every allocation of `k` bonds to the individual banks of every
    /// group and counts the leaves.
    pub fn new(k: u64, bank_multiplicities: Vec<u64>) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("enumeration requires K >= 1"));
        }
        if bank_multiplicities.is_empty() || bank_multiplicities.contains(&0) {
            return Err(Error::domain("every bank group needs a positive multiplicity"));
        }
        let banks: u64 = bank_multiplicities.iter().sum();
        let mut walker = Walker { visited: 0, leaves: 0 };
        walker.place(k, banks)?;
        Ok(AllocationEnumeration {
            k,
            bank_multiplicities,
            count: walker.leaves,
        })
    }
}

struct Walker {
    visited: u64,
    leaves: u64,
}

impl Walker {
    /// Every way of putting `remaining` bonds into `banks` banks, the first bank
    /// taking `0..=remaining`.
    fn place(&mut self, remaining: u64, banks: u64) -> Result<()> {
        self.visited += 1;
        if self.visited > MAX_ENUMERATION_STATES {
            return Err(Error::Capacity {
                limit: MAX_ENUMERATION_STATES,
            });
        }
        if banks == 1 {
            self.leaves += 1;
            return Ok(());
        }
        for first in 0..=remaining {
            self.place(remaining - first, banks - 1)?;
        }
        Ok(())
    }
}

/// Number of distinct allocations of `k` indistinguishable bonds over `banks`.
pub fn enumerate_allocations(k: u64, banks: &[u64]) -> Result<u64> {
    Ok(AllocationEnumeration::new(k, banks.to_vec())?.count)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinTurnover {
    pub players: u64,
    pub seed: u64,
    pub generator: &'static str,
    pub initial_heads: u64,
    pub final_heads: u64,
}

/// `M` fair tosses followed by every player turning a tail over to heads.
pub fn coin_turnover(m: u64, seed: u64) -> Result<CoinTurnover> {
    if m == 0 {
        return Err(Error::domain("coin_turnover needs at least one player"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut heads: Vec<bool> = (0..m).map(|_| rng.gen::<bool>()).collect();
    let initial_heads = heads.iter().filter(|&&h| h).count() as u64;
    // every player holding tails turns the coin over
    for coin in heads.iter_mut().filter(|h| !**h) {
        *coin = true;
    }
    let final_heads = heads.iter().filter(|&&h| h).count() as u64;
    Ok(CoinTurnover {
        players: m,
        seed,
        generator: GENERATOR,
        initial_heads,
        final_heads,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deposit::Statistics;

    #[test]
    fn brute_force_examples() {
        let s = DepositScenario::new(2, 2, 2.0, 1.0, Statistics::Bose).unwrap();
        let b0 = s.critical_betas().unwrap().beta_0;
        assert_eq!(brute_force_optimum(b0, &s).unwrap().k, 0);
        assert_eq!(brute_force_optimum(2.0 * b0, &s).unwrap().k, 0);
        assert_eq!(brute_force_optimum(0.2, &s).unwrap().k, 2);

        let s = DepositScenario::new(12, 30, 2.0, 1.0, Statistics::Boltzmann).unwrap();
        let beta = s.beta_of_m(1.0).unwrap();
        let k = brute_force_optimum(beta, &s).unwrap().k as i64;
        assert!((k - 11).abs() <= 1);
    }

    #[test]
    fn brute_force_is_exhaustive() {
        let s = DepositScenario::new(40, 9, 3.0, 1.0, Statistics::Boltzmann).unwrap();
        let best = brute_force_optimum(0.8, &s).unwrap();
        for k in 0..=40 {
            assert!(best.income >= s.total_income(k as f64, 0.8).unwrap());
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_allocations(2, &[1, 2]).unwrap(), 6);
        assert_eq!(enumerate_allocations(3, &[1]).unwrap(), 1);
        assert_eq!(enumerate_allocations(1, &[1, 1, 1]).unwrap(), 3);
        assert!(enumerate_allocations(0, &[1]).is_err());
        assert!(enumerate_allocations(1, &[1, 0]).is_err());
        assert_eq!(
            enumerate_allocations(40, &[30]),
            Err(Error::Capacity {
                limit: MAX_ENUMERATION_STATES
            })
        );
    }

    #[test]
    fn coin_examples() {
        for seed in 0..5 {
            assert_eq!(coin_turnover(10, seed).unwrap().final_heads, 10);
        }
        assert_eq!(coin_turnover(1, 77).unwrap().final_heads, 1);
        let c = coin_turnover(100_000, 2024).unwrap();
        let frac = c.initial_heads as f64 / 1e5;
        assert!((0.49..=0.51).contains(&frac), "{frac}");
        assert_eq!(c, coin_turnover(100_000, 2024).unwrap());
        assert_eq!(c.generator, GENERATOR);
    }
}
