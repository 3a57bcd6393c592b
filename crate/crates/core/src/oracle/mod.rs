//! Satisfiability oracles over subsets of the constraint universe.
//!
//! Every oracle must be monotone: supersets of an unsatisfiable set are
//! unsatisfiable. Enumeration correctness depends on it.

mod cnf;
mod table;

use std::collections::BTreeSet;

pub use cnf::{parse_dimacs, CnfOracle};
pub use table::TableOracle;

use crate::error::{Error, Result};
use crate::set::ConstraintSet;

/// Largest universe the exhaustive procedures accept.
pub const BRUTEFORCE_LIMIT: usize = 20;

pub trait SatOracle {
    /// Number of constraints in the universe.
    fn universe(&self) -> usize;

    /// Whether the constraints in `set` are simultaneously satisfiable.
    fn is_sat(&mut self, set: &ConstraintSet) -> Result<bool>;
}

impl<O: SatOracle + ?Sized> SatOracle for &mut O {
    fn universe(&self) -> usize {
        (**self).universe()
    }

    fn is_sat(&mut self, set: &ConstraintSet) -> Result<bool> {
        (**self).is_sat(set)
    }
}

impl<O: SatOracle + ?Sized> SatOracle for Box<O> {
    fn universe(&self) -> usize {
        (**self).universe()
    }

    fn is_sat(&mut self, set: &ConstraintSet) -> Result<bool> {
        (**self).is_sat(set)
    }
}

/// Wraps an oracle and counts the queries passed through it.
#[derive(Debug)]
pub struct CountingOracle<O> {
    inner: O,
    checks: u64,
}

impl<O: SatOracle> CountingOracle<O> {
    pub fn new(inner: O) -> Self {
        CountingOracle { inner, checks: 0 }
    }

    pub fn checks(&self) -> u64 {
        self.checks
    }

    pub fn into_inner(self) -> O {
        self.inner
    }
}

impl<O: SatOracle> SatOracle for CountingOracle<O> {
    fn universe(&self) -> usize {
        self.inner.universe()
    }

    fn is_sat(&mut self, set: &ConstraintSet) -> Result<bool> {
        self.checks += 1;
        self.inner.is_sat(set)
    }
}

pub(crate) fn check_universe(oracle_n: usize, set: &ConstraintSet) -> Result<()> {
    if set.universe() == oracle_n {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            left: set.universe(),
            right: oracle_n,
        })
    }
}

/// Whether `set` is a MUS: unsatisfiable, and satisfiable after removing any
/// single member. Costs `|set| + 1` checks at most.
pub fn verify_mus<O: SatOracle + ?Sized>(oracle: &mut O, set: &ConstraintSet) -> Result<bool> {
    if oracle.is_sat(set)? {
        return Ok(false);
    }
    for c in set.iter() {
        if !oracle.is_sat(&set.without(c))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The satisfiability status of every subset, indexed by bit mask.
pub fn all_statuses<O: SatOracle + ?Sized>(oracle: &mut O) -> Result<Vec<bool>> {
    let n = oracle.universe();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    (0..1u64 << n)
        .map(|mask| oracle.is_sat(&ConstraintSet::from_mask(n, mask)))
        .collect()
}

/// Every MUS of the universe, found by querying all `2^n` subsets.
pub fn bruteforce_all_muses<O: SatOracle + ?Sized>(
    oracle: &mut O,
) -> Result<BTreeSet<ConstraintSet>> {
    let n = oracle.universe();
    let status = all_statuses(oracle)?;
    Ok((0..1usize << n)
        .filter(|&mask| {
            !status[mask] && (0..n).all(|i| mask >> i & 1 == 0 || status[mask & !(1 << i)])
        })
        .map(|mask| ConstraintSet::from_mask(n, mask as u64))
        .collect())
}
