use crate::error::{Error, Result};
use crate::oracle::{check_universe, SatOracle, BRUTEFORCE_LIMIT};
use crate::set::ConstraintSet;

/// Oracle answering from an explicit status table over all `2^n` subsets.
#[derive(Debug, Clone)]
pub struct TableOracle {
    n: usize,
    /// `status[mask]` is true iff the subset `mask` is satisfiable.
    status: Vec<bool>,
}

impl TableOracle {
    /// Builds an oracle from a table indexed by bit mask (bit `i` = constraint
    /// `i`), rejecting tables that are not monotone.
    pub fn from_statuses(n: usize, status: Vec<bool>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("table oracle needs n >= 1".into()));
        }
        if n > BRUTEFORCE_LIMIT {
            return Err(Error::TooLarge {
                n,
                limit: BRUTEFORCE_LIMIT,
            });
        }
        if status.len() != 1 << n {
            return Err(Error::Precondition(format!(
                "table has {} entries, expected {}",
                status.len(),
                1usize << n
            )));
        }
        // Checking single-element extensions is enough: monotonicity is transitive.
        for mask in (0..status.len()).filter(|&m| !status[m]) {
            for i in (0..n).filter(|i| mask >> i & 1 == 0) {
                let sup = mask | 1 << i;
                if status[sup] {
                    return Err(Error::NotMonotone {
                        unsat: ConstraintSet::from_mask(n, mask as u64).to_string(),
                        sat: ConstraintSet::from_mask(n, sup as u64).to_string(),
                    });
                }
            }
        }
        Ok(TableOracle { n, status })
    }

    /// Tabulates `is_sat` over every subset.
    pub fn from_fn(n: usize, mut is_sat: impl FnMut(&ConstraintSet) -> bool) -> Result<Self> {
        if n > BRUTEFORCE_LIMIT {
            return Err(Error::TooLarge {
                n,
                limit: BRUTEFORCE_LIMIT,
            });
        }
        let status = (0..1u64 << n)
            .map(|m| is_sat(&ConstraintSet::from_mask(n, m)))
            .collect();
        Self::from_statuses(n, status)
    }

    /// The monotone table whose minimal unsatisfiable sets are exactly the
    /// members of `antichain` (supersets of a member are redundant).
    pub fn from_antichain(n: usize, antichain: &[ConstraintSet]) -> Result<Self> {
        for set in antichain {
            check_universe(n, set)?;
        }
        Self::from_fn(n, |s| !antichain.iter().any(|m| m.subset_of(s)))
    }

    pub fn statuses(&self) -> &[bool] {
        &self.status
    }
}

impl SatOracle for TableOracle {
    fn universe(&self) -> usize {
        self.n
    }

    fn is_sat(&mut self, set: &ConstraintSet) -> Result<bool> {
        check_universe(self.n, set)?;
        Ok(self.status[set.to_mask() as usize])
    }
}
