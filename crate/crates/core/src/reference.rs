//! Explicit-enumeration references and seeded generators used by the test
//! suites. Everything here is exponential in the universe size.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::map::{BlockEvent, BlockKind};
use crate::oracle::{CnfOracle, SatOracle, TableOracle};
use crate::set::ConstraintSet;

/// Largest universe the explicit references accept.
pub const REFERENCE_LIMIT: usize = 12;

fn guard(n: usize) -> Result<()> {
    if n > REFERENCE_LIMIT {
        Err(Error::TooLarge {
            n,
            limit: REFERENCE_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// All subsets of an `n`-constraint universe.
pub fn power_set(n: usize) -> impl Iterator<Item = ConstraintSet> {
    (0..1u64 << n).map(move |m| ConstraintSet::from_mask(n, m))
}

/// The power set minus every cone named in `log`: `Sub(s)` for down-blocks,
/// `Sup(s)` for up-blocks.
pub fn explicit_map_reference(n: usize, log: &[BlockEvent]) -> Result<BTreeSet<ConstraintSet>> {
    guard(n)?;
    let mut remaining: BTreeSet<ConstraintSet> = power_set(n).collect();
    for event in log {
        remaining.retain(|t| match event.kind {
            BlockKind::Down => !t.subset_of(&event.set),
            BlockKind::Up => !event.set.subset_of(t),
        });
    }
    Ok(remaining)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random block log of `len` events over `n` constraints.
pub fn random_block_log(n: usize, len: usize, rng: &mut impl Rng) -> Vec<BlockEvent> {
    (0..len)
        .map(|_| {
            let kind = if rng.gen_bool(0.5) {
                BlockKind::Down
            } else {
                BlockKind::Up
            };
            // Skew densities so both small and large cones show up.
            let density: f64 = rng.gen();
            let set = ConstraintSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(density)));
            BlockEvent { kind, set }
        })
        .collect()
}

/// A random non-empty antichain of non-empty subsets, sorted.
pub fn random_antichain(n: usize, rng: &mut impl Rng) -> Vec<ConstraintSet> {
    assert!(n >= 1);
    let draws = rng.gen_range(1..=2 * n);
    let mut candidates: Vec<ConstraintSet> = (0..draws)
        .map(|_| {
            let size = rng.gen_range(1..=n);
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(rng);
            ConstraintSet::from_indices(n, idx.into_iter().take(size))
        })
        .collect();
    candidates.sort_by_key(|s| s.len());
    let mut chain: Vec<ConstraintSet> = Vec::new();
    for c in candidates {
        if !chain.iter().any(|m| m.subset_of(&c)) {
            chain.push(c);
        }
    }
    chain.sort();
    chain
}

/// A generated monotone table with the antichain of MUSes it was closed from.
#[derive(Debug, Clone)]
pub struct MonotoneFixture {
    pub seed: u64,
    pub antichain: Vec<ConstraintSet>,
    pub table: TableOracle,
}

/// A monotone table with an unsatisfiable full set, built by closing a random
/// antichain upward.
pub fn random_monotone_table(n: usize, seed: u64) -> Result<MonotoneFixture> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    guard(n)?;
    let antichain = random_antichain(n, &mut rng(seed));
    let table = TableOracle::from_antichain(n, &antichain)?;
    Ok(MonotoneFixture {
        seed,
        antichain,
        table,
    })
}

/// Evaluates the conjunction of the selected clauses over all assignments.
/// Independent of any SAT solver.
pub fn truth_table_sat(num_vars: usize, clauses: &[Vec<i32>], set: &ConstraintSet) -> bool {
    (0..1u64 << num_vars).any(|assign| {
        set.iter().all(|i| {
            clauses[i]
                .iter()
                .any(|&l| ((assign >> (l.unsigned_abs() - 1)) & 1 == 1) == (l > 0))
        })
    })
}

/// Oracle backed by truth-table evaluation instead of a SAT solver.
#[derive(Debug, Clone)]
pub struct TruthTableOracle {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl SatOracle for TruthTableOracle {
    fn universe(&self) -> usize {
        self.clauses.len()
    }

    fn is_sat(&mut self, set: &ConstraintSet) -> Result<bool> {
        Ok(truth_table_sat(self.num_vars, &self.clauses, set))
    }
}

/// A random small CNF with clauses of width 1 to 3, resampled until the
/// whole clause set is unsatisfiable.
pub fn random_unsat_cnf(
    seed: u64,
    max_clauses: usize,
    max_vars: usize,
) -> Result<(usize, Vec<Vec<i32>>)> {
    let mut rng = rng(seed);
    loop {
        let num_vars = rng.gen_range(1..=max_vars);
        let n = rng.gen_range(2.min(max_clauses)..=max_clauses);
        let clauses: Vec<Vec<i32>> = (0..n)
            .map(|_| {
                let width = rng.gen_range(1..=3.min(num_vars));
                let mut vars: Vec<i32> = (1..=num_vars as i32).collect();
                vars.shuffle(&mut rng);
                vars.into_iter()
                    .take(width)
                    .map(|v| if rng.gen_bool(0.5) { -v } else { v })
                    .collect()
            })
            .collect();
        if !truth_table_sat(num_vars, &clauses, &ConstraintSet::full(n)) {
            return Ok((num_vars, clauses));
        }
    }
}

/// [`random_unsat_cnf`] wrapped in the solver-backed oracle.
pub fn random_unsat_cnf_oracle(
    seed: u64,
    max_clauses: usize,
    max_vars: usize,
) -> Result<CnfOracle> {
    let (vars, clauses) = random_unsat_cnf(seed, max_clauses, max_vars)?;
    CnfOracle::from_clauses(vars, clauses)
}
