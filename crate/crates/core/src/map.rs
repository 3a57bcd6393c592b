//! Symbolic store of the subsets whose satisfiability is still undetermined.
//!
//! Each constraint `c_i` gets an indicator variable `x_i`; a model of the
//! clause set is an unexplored subset. Satisfiable sets are removed together
//! with their subsets by an all-positive clause, unsatisfiable ones together
//! with their supersets by an all-negative clause.

use batsat::{lbool, BasicSolver, Lit, SolverInterface, Var};

use crate::error::{Error, Result};
use crate::set::ConstraintSet;

/// A clause added to the map, over 0-based indicator indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockingClause {
    /// `x_i ∨ …` over the constraints outside a satisfiable set.
    Positive(Vec<usize>),
    /// `¬x_i ∨ …` over the members of an unsatisfiable set.
    Negative(Vec<usize>),
}

impl BlockingClause {
    /// Whether the assignment encoded by `set` satisfies the clause.
    pub fn satisfied_by(&self, set: &ConstraintSet) -> bool {
        match self {
            BlockingClause::Positive(vars) => vars.iter().any(|&i| set.contains(i)),
            BlockingClause::Negative(vars) => vars.iter().any(|&i| !set.contains(i)),
        }
    }
}

/// Direction of a block call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// A satisfiable set together with its subsets.
    Down,
    /// An unsatisfiable set together with its supersets.
    Up,
}

/// One entry of a block log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockEvent {
    pub kind: BlockKind,
    pub set: ConstraintSet,
}

pub struct UnexploredMap {
    n: usize,
    clauses: Vec<BlockingClause>,
    /// For every indicator, the negative clauses it occurs in (indices into `clauses`).
    negative_occurrences: Vec<Vec<usize>>,
    solver: BasicSolver,
    vars: Vec<Var>,
    solver_calls: u64,
    grow_evaluations: u64,
}

impl std::fmt::Debug for UnexploredMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UnexploredMap")
            .field("n", &self.n)
            .field("clauses", &self.clauses)
            .field("solver_calls", &self.solver_calls)
            .finish()
    }
}

impl UnexploredMap {
    /// A map over `n` constraints in which every subset is unexplored.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition(
                "the map needs at least one constraint".into(),
            ));
        }
        let mut solver = BasicSolver::default();
        // Default polarity True biases the backend toward large models.
        let vars = (0..n).map(|_| solver.new_var(lbool::TRUE, true)).collect();
        Ok(UnexploredMap {
            n,
            clauses: Vec::new(),
            negative_occurrences: vec![Vec::new(); n],
            solver,
            vars,
            solver_calls: 0,
            grow_evaluations: 0,
        })
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[BlockingClause] {
        &self.clauses
    }

    /// Backend solves performed so far.
    pub fn solver_calls(&self) -> u64 {
        self.solver_calls
    }

    /// Direct clause evaluations spent growing models.
    pub fn grow_evaluations(&self) -> u64 {
        self.grow_evaluations
    }

    fn check_universe(&self, set: &ConstraintSet) -> Result<()> {
        if set.universe() == self.n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                left: set.universe(),
                right: self.n,
            })
        }
    }

    fn lit(&self, i: usize, positive: bool) -> Lit {
        Lit::new(self.vars[i], positive)
    }

    fn push_clause(&mut self, clause: BlockingClause) {
        let mut lits: Vec<Lit> = match &clause {
            BlockingClause::Positive(vars) => vars.iter().map(|&i| self.lit(i, true)).collect(),
            BlockingClause::Negative(vars) => vars.iter().map(|&i| self.lit(i, false)).collect(),
        };
        // A false return only means the clause set became unsatisfiable.
        self.solver.add_clause_reuse(&mut lits);
        if let BlockingClause::Negative(vars) = &clause {
            let id = self.clauses.len();
            for &i in vars {
                self.negative_occurrences[i].push(id);
            }
        }
        self.clauses.push(clause);
    }

    /// Removes a satisfiable set and all of its subsets.
    pub fn block_down(&mut self, sat_set: &ConstraintSet) -> Result<()> {
        self.check_universe(sat_set)?;
        self.push_clause(BlockingClause::Positive(sat_set.iter_absent().collect()));
        Ok(())
    }

    /// Removes an unsatisfiable set and all of its supersets.
    pub fn block_up(&mut self, unsat_set: &ConstraintSet) -> Result<()> {
        self.check_universe(unsat_set)?;
        self.push_clause(BlockingClause::Negative(unsat_set.iter().collect()));
        Ok(())
    }

    pub fn block(&mut self, kind: BlockKind, set: &ConstraintSet) -> Result<()> {
        match kind {
            BlockKind::Down => self.block_down(set),
            BlockKind::Up => self.block_up(set),
        }
    }

    /// Whether `set` is a model of the clause set, by direct evaluation.
    pub fn contains(&self, set: &ConstraintSet) -> bool {
        debug_assert_eq!(set.universe(), self.n);
        self.clauses.iter().all(|c| c.satisfied_by(set))
    }

    /// Solves with every indicator outside `p` assumed false.
    fn solve_within(&mut self, p: &ConstraintSet) -> Option<ConstraintSet> {
        let assumptions: Vec<Lit> = p.iter_absent().map(|i| self.lit(i, false)).collect();
        self.solver_calls += 1;
        let answer = self.solver.solve_limited(&assumptions);
        if answer != lbool::TRUE {
            return None;
        }
        let members = (0..self.n).filter(|&i| self.solver.value_var(self.vars[i]) == lbool::TRUE);
        Some(ConstraintSet::from_indices(self.n, members))
    }

    /// Whether some subset of `p` is still unexplored. One backend solve.
    pub fn has_unexplored_subset_of(&mut self, p: &ConstraintSet) -> Result<bool> {
        self.check_universe(p)?;
        Ok(self.solve_within(p).is_some())
    }

    /// Backend membership query for a single set. One backend solve.
    pub fn is_unexplored(&mut self, set: &ConstraintSet) -> Result<bool> {
        self.check_universe(set)?;
        let assumptions: Vec<Lit> = (0..self.n).map(|i| self.lit(i, set.contains(i))).collect();
        self.solver_calls += 1;
        Ok(self.solver.solve_limited(&assumptions) == lbool::TRUE)
    }

    /// A maximal unexplored subset of `p`, or `None` when every subset of `p`
    /// has been explored.
    ///
    /// The backend model is grown in ascending index order: `x_i` is flipped to
    /// true whenever no negative clause becomes falsified. Positive clauses
    /// cannot be falsified by such a flip, so the result stays a model.
    pub fn max_unexplored_subset_of(&mut self, p: &ConstraintSet) -> Result<Option<ConstraintSet>> {
        self.check_universe(p)?;
        let Some(mut model) = self.solve_within(p) else {
            return Ok(None);
        };
        debug_assert!(model.subset_of(p));
        let candidates: Vec<usize> = p.minus(&model).iter().collect();
        for i in candidates {
            model.insert(i);
            let mut keeps = true;
            for &id in &self.negative_occurrences[i] {
                self.grow_evaluations += 1;
                if !self.clauses[id].satisfied_by(&model) {
                    keeps = false;
                    break;
                }
            }
            if !keeps {
                model.remove(i);
            }
        }
        Ok(Some(model))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> ConstraintSet {
        ConstraintSet::from_bit_str(text).unwrap()
    }

    fn models(map: &UnexploredMap) -> Vec<ConstraintSet> {
        let n = map.universe();
        (0..1u64 << n)
            .map(|m| ConstraintSet::from_mask(n, m))
            .filter(|set| map.contains(set))
            .collect()
    }

    /// Maps from the three-constraint illustration: `{c1,c3}` unsat, `{c1,c2}` sat.
    fn illustration() -> UnexploredMap {
        let mut map = UnexploredMap::new(3).unwrap();
        map.block_up(&s("101")).unwrap();
        map.block_down(&s("110")).unwrap();
        map
    }

    #[test]
    fn fresh_map_contains_everything() {
        let map = UnexploredMap::new(4).unwrap();
        assert_eq!(models(&map).len(), 16);
        let map = UnexploredMap::new(1).unwrap();
        assert_eq!(models(&map), vec![s("0"), s("1")]);
        let mut map = UnexploredMap::new(3).unwrap();
        assert!(map.has_unexplored_subset_of(&s("111")).unwrap());
        assert_eq!(map.solver_calls(), 1);
    }

    #[test]
    fn zero_constraints_rejected() {
        assert!(matches!(UnexploredMap::new(0), Err(Error::Precondition(_))));
    }

    #[test]
    fn illustration_clauses() {
        let map = illustration();
        assert_eq!(
            map.clauses(),
            &[
                BlockingClause::Negative(vec![0, 2]),
                BlockingClause::Positive(vec![2])
            ]
        );
    }

    #[test]
    fn block_down_full_and_empty() {
        let mut map = UnexploredMap::new(3).unwrap();
        map.block_down(&s("111")).unwrap();
        assert_eq!(map.clauses(), &[BlockingClause::Positive(vec![])]);
        assert!(models(&map).is_empty());
        assert!(!map.has_unexplored_subset_of(&s("111")).unwrap());
        assert_eq!(map.max_unexplored_subset_of(&s("111")).unwrap(), None);

        let mut map = UnexploredMap::new(3).unwrap();
        map.block_down(&s("000")).unwrap();
        assert_eq!(models(&map).len(), 7);
        assert!(!map.contains(&s("000")));
    }

    #[test]
    fn block_up_empty_removes_everything() {
        let mut map = UnexploredMap::new(2).unwrap();
        map.block_up(&s("00")).unwrap();
        assert!(models(&map).is_empty());
        assert!(!map.has_unexplored_subset_of(&s("11")).unwrap());
    }

    #[test]
    fn block_up_removes_exactly_the_up_cone() {
        let mut map = UnexploredMap::new(4).unwrap();
        map.block_up(&s("1100")).unwrap();
        let removed: Vec<String> = (0..16u64)
            .map(|m| ConstraintSet::from_mask(4, m))
            .filter(|set| !map.contains(set))
            .map(|set| set.to_string())
            .collect();
        let mut removed = removed;
        removed.sort();
        assert_eq!(removed, vec!["1100", "1101", "1110", "1111"]);
    }

    #[test]
    fn restriction_examples() {
        let mut map = UnexploredMap::new(4).unwrap();
        assert!(map.has_unexplored_subset_of(&s("0011")).unwrap());
        map.block_down(&s("0011")).unwrap();
        assert!(!map.has_unexplored_subset_of(&s("0011")).unwrap());
        assert!(map.has_unexplored_subset_of(&s("0111")).unwrap());

        let mut map = illustration();
        assert!(!map.has_unexplored_subset_of(&s("110")).unwrap());
        assert!(map.has_unexplored_subset_of(&s("111")).unwrap());
    }

    #[test]
    fn maximal_model_examples() {
        let mut map = UnexploredMap::new(4).unwrap();
        assert_eq!(
            map.max_unexplored_subset_of(&s("1111")).unwrap(),
            Some(s("1111"))
        );

        map.block_up(&s("1100")).unwrap();
        let got = map.max_unexplored_subset_of(&s("1111")).unwrap().unwrap();
        assert!(got == s("1011") || got == s("0111"), "got {got}");

        let mut map = illustration();
        assert_eq!(
            map.max_unexplored_subset_of(&s("111")).unwrap(),
            Some(s("011"))
        );
    }

    #[test]
    fn maximal_model_respects_restriction() {
        let mut map = UnexploredMap::new(5).unwrap();
        map.block_up(&s("00110")).unwrap();
        let p = s("10110");
        let r = map.max_unexplored_subset_of(&p).unwrap().unwrap();
        assert!(r.is_subset_of(&p).unwrap());
        assert!(map.contains(&r));
        assert_eq!(r.len(), 2);
        for c in p.minus(&r).iter() {
            assert!(!map.contains(&r.with(c)));
        }
    }

    #[test]
    fn up_then_down_removes_both_cones() {
        let n = 4;
        let target = s("0110");
        let mut map = UnexploredMap::new(n).unwrap();
        map.block_up(&target).unwrap();
        map.block_down(&target).unwrap();
        for m in 0..16u64 {
            let set = ConstraintSet::from_mask(n, m);
            let in_cones = target.subset_of(&set) || set.subset_of(&target);
            assert_eq!(map.contains(&set), !in_cones, "{set}");
            assert_eq!(map.is_unexplored(&set).unwrap(), !in_cones, "{set}");
        }
    }

    #[test]
    fn universe_mismatch() {
        let mut map = UnexploredMap::new(3).unwrap();
        assert!(matches!(
            map.block_down(&s("11")),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(map.has_unexplored_subset_of(&s("1111")).is_err());
    }
}
