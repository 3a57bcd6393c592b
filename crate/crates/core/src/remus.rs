//! Recursive online MUS enumeration.
//!
//! Seeds are maximal unexplored subsets of a shrinking search space. A
//! satisfiable seed is an MSS of the current space; its complement yields
//! critical constraints, either directly (a single-element complement) or by
//! recursing into `seed ∪ {c}` for every `c` in the complement. An
//! unsatisfiable seed is shrunk to a MUS, after which the search recurses into
//! a set strictly between the MUS and the seed.

use std::ops::ControlFlow;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::map::{BlockEvent, BlockKind, UnexploredMap};
use crate::oracle::{CountingOracle, SatOracle};
use crate::set::ConstraintSet;
use crate::shrink::{shrink, ShrinkConfig};
use crate::stats::{CheckStats, MusRecord, ShrinkEntry};

pub const DEFAULT_REDUCTION_FACTOR: f64 = 0.9;

/// Settings shared by both enumerators.
#[derive(Debug, Clone)]
pub struct RemusConfig {
    /// Size of the recursion target relative to the seed, in `(0, 1)`.
    pub reduction_factor: f64,
    pub mus_limit: Option<u64>,
    /// Wall-clock budget in seconds.
    pub time_limit: Option<f64>,
    pub shrink_cfg: ShrinkConfig,
    /// Keep every block call and shrink call in the report, for replay checks.
    pub record_trace: bool,
}

impl Default for RemusConfig {
    fn default() -> Self {
        RemusConfig {
            reduction_factor: DEFAULT_REDUCTION_FACTOR,
            mus_limit: None,
            time_limit: None,
            shrink_cfg: ShrinkConfig::default(),
            record_trace: false,
        }
    }
}

impl RemusConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.reduction_factor > 0.0 && self.reduction_factor < 1.0) {
            return Err(Error::Precondition(format!(
                "reduction factor {} is outside (0, 1)",
                self.reduction_factor
            )));
        }
        if let Some(t) = self.time_limit {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(Error::Precondition(format!("invalid time limit {t}")));
            }
        }
        Ok(())
    }
}

/// Result of an enumeration run.
#[derive(Debug, Clone)]
pub struct Report {
    pub muses: Vec<MusRecord>,
    pub stats: CheckStats,
    /// True when the whole power set was explored, i.e. no budget cut the run short.
    pub complete: bool,
    /// Every block call in order; empty unless `record_trace` was set.
    pub block_log: Vec<BlockEvent>,
    /// Every shrink call in order; empty unless `record_trace` was set.
    pub shrink_log: Vec<ShrinkTrace>,
}

/// Inputs and output of one shrink call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShrinkTrace {
    pub seed: ConstraintSet,
    pub criticals: ConstraintSet,
    pub mus: ConstraintSet,
    pub depth: usize,
}

/// State shared across all recursive frames of one run.
pub(crate) struct Session<'a, O> {
    map: UnexploredMap,
    oracle: CountingOracle<O>,
    stats: CheckStats,
    cfg: RemusConfig,
    muses: Vec<MusRecord>,
    block_log: Vec<BlockEvent>,
    shrink_log: Vec<ShrinkTrace>,
    sink: &'a mut dyn FnMut(&MusRecord),
}

impl<'a, O: SatOracle> Session<'a, O> {
    /// Validates the configuration and checks that the full set is unsatisfiable.
    pub(crate) fn start(
        instance: Instance<O>,
        cfg: &RemusConfig,
        sink: &'a mut dyn FnMut(&MusRecord),
    ) -> Result<Self> {
        cfg.validate()?;
        let n = instance.len();
        let mut cfg = cfg.clone();
        cfg.shrink_cfg.verify_seed = false;
        let mut session = Session {
            map: UnexploredMap::new(n)?,
            oracle: CountingOracle::new(instance.into_oracle()),
            stats: CheckStats::new(),
            cfg,
            muses: Vec::new(),
            block_log: Vec::new(),
            shrink_log: Vec::new(),
            sink,
        };
        if session.check(&ConstraintSet::full(n))? {
            return Err(Error::InstanceSatisfiable);
        }
        Ok(session)
    }

    pub(crate) fn universe(&self) -> usize {
        self.map.universe()
    }

    pub(crate) fn finish(self, flow: ControlFlow<()>) -> Report {
        Report {
            muses: self.muses,
            stats: self.stats,
            complete: flow.is_continue(),
            block_log: self.block_log,
            shrink_log: self.shrink_log,
        }
    }

    pub(crate) fn exhausted(&self) -> bool {
        if let Some(limit) = self.cfg.mus_limit {
            if self.stats.muses_emitted >= limit {
                return true;
            }
        }
        if let Some(t) = self.cfg.time_limit {
            if self.stats.elapsed() >= Duration::from_secs_f64(t) {
                return true;
            }
        }
        false
    }

    pub(crate) fn check(&mut self, set: &ConstraintSet) -> Result<bool> {
        let sat = self.oracle.is_sat(set);
        self.stats.oracle_checks = self.oracle.checks();
        sat
    }

    pub(crate) fn max_unexplored_subset_of(
        &mut self,
        p: &ConstraintSet,
    ) -> Result<Option<ConstraintSet>> {
        let r = self.map.max_unexplored_subset_of(p);
        self.stats.map_solver_calls = self.map.solver_calls();
        self.stats.grow_evaluations = self.map.grow_evaluations();
        r
    }

    pub(crate) fn block(&mut self, kind: BlockKind, set: &ConstraintSet) -> Result<()> {
        self.map.block(kind, set)?;
        if self.cfg.record_trace {
            self.block_log.push(BlockEvent {
                kind,
                set: set.clone(),
            });
        }
        Ok(())
    }

    /// Shrinks an unsatisfiable seed and applies its satisfiable discoveries to the map.
    pub(crate) fn shrink(
        &mut self,
        seed: &ConstraintSet,
        criticals: &ConstraintSet,
        depth: usize,
    ) -> Result<ConstraintSet> {
        let before = self.stats.oracle_checks;
        let outcome = shrink(&mut self.oracle, seed, criticals, self.cfg.shrink_cfg)?;
        self.stats.oracle_checks = self.oracle.checks();
        let checks = self.stats.oracle_checks - before;
        debug_assert_eq!(checks, outcome.checks);
        self.stats.shrinks.push(ShrinkEntry {
            seed_size: seed.len(),
            criticals_size: criticals.len(),
            checks,
        });
        if self.cfg.record_trace {
            self.shrink_log.push(ShrinkTrace {
                seed: seed.clone(),
                criticals: criticals.clone(),
                mus: outcome.mus.clone(),
                depth,
            });
        }
        for sat in &outcome.sat_discoveries {
            self.block(BlockKind::Down, sat)?;
        }
        Ok(outcome.mus)
    }

    /// Streams a MUS to the sink and removes its up- and down-cone from the map.
    pub(crate) fn emit(&mut self, mus: ConstraintSet, depth: usize) -> Result<()> {
        let snapshot = self.stats.record_mus(depth);
        let record = MusRecord {
            ordinal: snapshot.ordinal,
            mus,
            stats_snapshot: snapshot,
            depth,
        };
        (self.sink)(&record);
        self.block(BlockKind::Up, &record.mus)?;
        self.block(BlockKind::Down, &record.mus)?;
        self.muses.push(record);
        Ok(())
    }

    /// Emits every not yet emitted MUS of `set`, which must be unsatisfiable
    /// and contain `criticals`, all of which are critical for it.
    pub(crate) fn find_muses(
        &mut self,
        set: &ConstraintSet,
        mut criticals: ConstraintSet,
        depth: usize,
    ) -> Result<ControlFlow<()>> {
        loop {
            if self.exhausted() {
                return Ok(ControlFlow::Break(()));
            }
            let Some(seed) = self.max_unexplored_subset_of(set)? else {
                return Ok(ControlFlow::Continue(()));
            };
            if self.check(&seed)? {
                self.block(BlockKind::Down, &seed)?;
                let mcs = set.minus(&seed);
                let mut members = mcs.iter();
                match (members.next(), members.next()) {
                    (None, _) => {
                        return Err(Error::Precondition(format!(
                            "search space {set} is satisfiable"
                        )))
                    }
                    (Some(c), None) => criticals.insert(c),
                    _ => {
                        for c in mcs.iter() {
                            let flow =
                                self.find_muses(&seed.with(c), criticals.with(c), depth + 1)?;
                            if flow.is_break() {
                                return Ok(flow);
                            }
                        }
                    }
                }
            } else {
                if self.exhausted() {
                    return Ok(ControlFlow::Break(()));
                }
                let mus = self.shrink(&seed, &criticals, depth)?;
                let next = choose_p(&mus, &seed, self.cfg.reduction_factor)?;
                self.emit(mus, depth)?;
                if self.exhausted() {
                    return Ok(ControlFlow::Break(()));
                }
                if let Some(p) = next {
                    let flow = self.find_muses(&p, criticals.clone(), depth + 1)?;
                    if flow.is_break() {
                        return Ok(flow);
                    }
                }
            }
        }
    }
}

/// Picks the recursion target between a fresh MUS and its seed.
///
/// The target has `⌊factor·|seed|⌋` members: the MUS plus the lowest-index
/// members of `seed \ mus`. Returns `None` when that size does not exceed
/// `|mus|`, since no set strictly between the two fits.
pub fn choose_p(
    mus: &ConstraintSet,
    seed: &ConstraintSet,
    factor: f64,
) -> Result<Option<ConstraintSet>> {
    if !mus.is_subset_of(seed)? {
        return Err(Error::Precondition(format!(
            "{mus} is not a subset of {seed}"
        )));
    }
    // The epsilon keeps products like 0.9 * 30 from flooring one short.
    let target = (factor * seed.len() as f64 + 1e-9).floor() as usize;
    if target <= mus.len() || target >= seed.len() {
        return Ok(None);
    }
    let mut p = mus.clone();
    for c in seed.minus(mus).iter().take(target - mus.len()) {
        p.insert(c);
    }
    Ok(Some(p))
}

/// Runs the recursive enumerator to completion or until a budget runs out.
/// Every MUS is passed to `sink` as soon as it is found.
pub fn remus_enumerate<O: SatOracle>(
    instance: Instance<O>,
    cfg: &RemusConfig,
    mut sink: impl FnMut(&MusRecord),
) -> Result<Report> {
    let mut session = Session::start(instance, cfg, &mut sink)?;
    let full = ConstraintSet::full(session.universe());
    let criticals = ConstraintSet::empty(session.universe());
    let flow = session.find_muses(&full, criticals, 0)?;
    Ok(session.finish(flow))
}
