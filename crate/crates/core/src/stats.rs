//! Counters for oracle checks and map-solver calls, snapshotted per MUS.

use std::time::{Duration, Instant};

use crate::set::ConstraintSet;

/// Counter values at the moment a MUS was emitted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatsEntry {
    pub ordinal: u64,
    pub elapsed_s: f64,
    pub oracle_checks: u64,
    pub map_solver_calls: u64,
    pub depth: usize,
}

/// One call to the shrink procedure: seed and critical-set sizes plus the
/// oracle checks it spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShrinkEntry {
    pub seed_size: usize,
    pub criticals_size: usize,
    pub checks: u64,
}

#[derive(Debug, Clone)]
pub struct CheckStats {
    pub oracle_checks: u64,
    pub map_solver_calls: u64,
    /// Clause evaluations spent growing map models to maximality. Diagnostic
    /// only, not part of `map_solver_calls`.
    pub grow_evaluations: u64,
    pub muses_emitted: u64,
    pub start_time: Instant,
    pub per_mus: Vec<StatsEntry>,
    pub shrinks: Vec<ShrinkEntry>,
}

impl Default for CheckStats {
    fn default() -> Self {
        CheckStats::new()
    }
}

impl CheckStats {
    pub fn new() -> Self {
        CheckStats {
            oracle_checks: 0,
            map_solver_calls: 0,
            grow_evaluations: 0,
            muses_emitted: 0,
            start_time: Instant::now(),
            per_mus: Vec::new(),
            shrinks: Vec::new(),
        }
    }

    pub fn elapsed(&self) -> Duration {
        self.start_time.elapsed()
    }

    /// Records an emission and returns its snapshot.
    pub(crate) fn record_mus(&mut self, depth: usize) -> StatsEntry {
        self.muses_emitted += 1;
        let entry = StatsEntry {
            ordinal: self.muses_emitted,
            elapsed_s: self.elapsed().as_secs_f64(),
            oracle_checks: self.oracle_checks,
            map_solver_calls: self.map_solver_calls,
            depth,
        };
        self.per_mus.push(entry);
        entry
    }

    /// Mean seed cardinality over all shrink calls, `None` if there were none.
    pub fn mean_seed_size(&self) -> Option<f64> {
        if self.shrinks.is_empty() {
            return None;
        }
        let total: usize = self.shrinks.iter().map(|s| s.seed_size).sum();
        Some(total as f64 / self.shrinks.len() as f64)
    }

    /// Cumulative oracle checks at the emission of the `k`-th MUS (1-based).
    pub fn checks_at_mus(&self, k: usize) -> Option<u64> {
        self.per_mus.get(k.checked_sub(1)?).map(|e| e.oracle_checks)
    }
}

/// An emitted MUS.
#[derive(Debug, Clone, PartialEq)]
pub struct MusRecord {
    pub ordinal: u64,
    pub mus: ConstraintSet,
    pub stats_snapshot: StatsEntry,
    pub depth: usize,
}
