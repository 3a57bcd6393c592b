//! Deletion-based reduction of an unsatisfiable seed to one MUS.

use crate::error::{Error, Result};
use crate::oracle::SatOracle;
use crate::set::ConstraintSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShrinkConfig {
    /// Report the satisfiable sets met during minimization so the caller can
    /// block them in its map.
    pub feed_map: bool,
    /// Spend one extra check confirming the seed is unsatisfiable. On by
    /// default in debug builds; the enumerators turn it off because their
    /// seeds come straight from a failed check.
    pub verify_seed: bool,
}

impl Default for ShrinkConfig {
    fn default() -> Self {
        ShrinkConfig {
            feed_map: true,
            verify_seed: cfg!(debug_assertions),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShrinkOutcome {
    pub mus: ConstraintSet,
    /// Satisfiable subsets found on the way; empty unless `feed_map` is set.
    pub sat_discoveries: Vec<ConstraintSet>,
    /// Oracle checks performed.
    pub checks: u64,
}

/// Reduces `seed` to a MUS containing `criticals`.
///
/// Candidates in `seed \ criticals` are tried in ascending index order: a
/// candidate whose removal leaves the working set satisfiable is critical and
/// kept, otherwise it is dropped. Performs exactly `|seed \ criticals|` checks.
///
/// The caller guarantees that `seed` is unsatisfiable and that every member
/// of `criticals` is critical for it; only the former is checked, and only
/// when `cfg.verify_seed` is set.
pub fn shrink<O: SatOracle + ?Sized>(
    oracle: &mut O,
    seed: &ConstraintSet,
    criticals: &ConstraintSet,
    cfg: ShrinkConfig,
) -> Result<ShrinkOutcome> {
    if !criticals.is_subset_of(seed)? {
        return Err(Error::Precondition(format!(
            "criticals {criticals} are not contained in the seed {seed}"
        )));
    }
    if cfg.verify_seed && oracle.is_sat(seed)? {
        return Err(Error::Precondition(format!("seed {seed} is satisfiable")));
    }

    let mut working = seed.clone();
    let mut sat_discoveries = Vec::new();
    let mut checks = 0;
    let candidates: Vec<usize> = seed.minus(criticals).iter().collect();
    for c in candidates {
        let reduced = working.without(c);
        checks += 1;
        if oracle.is_sat(&reduced)? {
            if cfg.feed_map {
                sat_discoveries.push(reduced);
            }
        } else {
            working = reduced;
        }
    }
    Ok(ShrinkOutcome {
        mus: working,
        sat_discoveries,
        checks,
    })
}
