use std::io::Read;

use batsat::{lbool, BasicSolver, Lit, SolverInterface, Var};

use crate::error::{Error, ParseError, Result};
use crate::oracle::{check_universe, SatOracle};
use crate::set::ConstraintSet;

/// Boolean CNF domain: constraint `i` is clause `i`.
///
/// All checks run on one incremental solver. Clause `i` is stored as
/// `clause_i ∨ ¬s_i` for a fresh selector `s_i`; a subset is checked by
/// assuming `s_i` for its members and `¬s_i` for everything else.
pub struct CnfOracle {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
    solver: BasicSolver,
    selectors: Vec<Var>,
}

impl std::fmt::Debug for CnfOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CnfOracle")
            .field("num_vars", &self.num_vars)
            .field("clauses", &self.clauses)
            .finish()
    }
}

impl CnfOracle {
    /// Builds an oracle from integer-literal clauses over variables `1..=num_vars`.
    pub fn from_clauses(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (i, clause) in clauses.iter().enumerate() {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::Precondition(format!(
                        "clause {} has literal {lit} outside ±1..={num_vars}",
                        i + 1
                    )));
                }
            }
        }
        let mut solver = BasicSolver::default();
        let vars: Vec<Var> = (0..num_vars).map(|_| solver.new_var_default()).collect();
        let selectors: Vec<Var> = clauses.iter().map(|_| solver.new_var_default()).collect();
        for (clause, &sel) in clauses.iter().zip(&selectors) {
            let mut lits: Vec<Lit> = clause
                .iter()
                .map(|&l| Lit::new(vars[l.unsigned_abs() as usize - 1], l > 0))
                .collect();
            lits.push(Lit::new(sel, false));
            solver.add_clause_reuse(&mut lits);
        }
        Ok(CnfOracle {
            num_vars,
            clauses,
            solver,
            selectors,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }
}

impl SatOracle for CnfOracle {
    fn universe(&self) -> usize {
        self.clauses.len()
    }

    fn is_sat(&mut self, set: &ConstraintSet) -> Result<bool> {
        check_universe(self.universe(), set)?;
        let assumptions: Vec<Lit> = self
            .selectors
            .iter()
            .enumerate()
            .map(|(i, &sel)| Lit::new(sel, set.contains(i)))
            .collect();
        match self.solver.solve_limited(&assumptions) {
            r if r == lbool::TRUE => Ok(true),
            r if r == lbool::FALSE => Ok(false),
            _ => Err(Error::Oracle(
                "SAT backend returned an undetermined answer".into(),
            )),
        }
    }
}

/// Reads a DIMACS CNF file. The `i`-th clause in file order becomes constraint `i`.
pub fn parse_dimacs(mut input: impl Read) -> Result<CnfOracle> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let (num_vars, clauses) = parse_dimacs_clauses(&text)?;
    CnfOracle::from_clauses(num_vars, clauses)
}

/// Parses DIMACS text into `(num_vars, clauses)`.
pub(crate) fn parse_dimacs_clauses(text: &str) -> Result<(usize, Vec<Vec<i32>>), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            // SATLIB end marker.
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::new(line_no, "duplicate problem line"));
            }
            header = Some(parse_header(line).ok_or_else(|| {
                ParseError::new(line_no, format!("ill-formed problem line {line:?}"))
            })?);
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(ParseError::new(
                line_no,
                "clause data before the problem line",
            ));
        };
        for token in line.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| ParseError::new(line_no, format!("invalid literal {token:?}")))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > num_vars {
                return Err(ParseError::new(
                    line_no,
                    format!("literal {lit} out of range for {num_vars} variables"),
                ));
            } else {
                current.push(lit as i32);
            }
        }
    }

    let Some((num_vars, num_clauses)) = header else {
        return Err(ParseError::new(last_line.max(1), "missing problem line"));
    };
    if !current.is_empty() {
        return Err(ParseError::new(
            last_line,
            "last clause is not terminated by 0",
        ));
    }
    if clauses.len() != num_clauses {
        return Err(ParseError::new(
            last_line,
            format!(
                "problem line declares {num_clauses} clauses but {} were found",
                clauses.len()
            ),
        ));
    }
    Ok((num_vars, clauses))
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "p" || parts.next()? != "cnf" {
        return None;
    }
    let vars = parts.next()?.parse().ok()?;
    let clauses = parts.next()?.parse().ok()?;
    if parts.next().is_some() || vars > i32::MAX as usize {
        return None;
    }
    Some((vars, clauses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> ConstraintSet {
        ConstraintSet::from_bit_str(text).unwrap()
    }

    const EXAMPLE: &str = "p cnf 2 4\n1 0\n-1 0\n2 0\n-1 -2 0\n";

    #[test]
    fn parses_the_four_clause_example() {
        let oracle = parse_dimacs(EXAMPLE.as_bytes()).unwrap();
        assert_eq!(oracle.universe(), 4);
        assert_eq!(oracle.num_vars(), 2);
        assert_eq!(
            oracle.clauses(),
            &[vec![1], vec![-1], vec![2], vec![-1, -2]]
        );
    }

    #[test]
    fn parses_single_unit() {
        let oracle = parse_dimacs("p cnf 1 1\n1 0\n".as_bytes()).unwrap();
        assert_eq!(oracle.universe(), 1);
        assert_eq!(oracle.clauses(), &[vec![1]]);
    }

    #[test]
    fn comments_multiline_clauses_and_end_marker() {
        let text = "c hello\nc world\np cnf 3 2\n1 -2\n 3 0 -1\n0\n%\n0\n";
        let (vars, clauses) = parse_dimacs_clauses(text).unwrap();
        assert_eq!(vars, 3);
        assert_eq!(clauses, vec![vec![1, -2, 3], vec![-1]]);
    }

    #[test]
    fn empty_clause_is_a_constraint() {
        let mut oracle = parse_dimacs("p cnf 1 2\n0\n1 0\n".as_bytes()).unwrap();
        assert!(!oracle.is_sat(&s("10")).unwrap());
        assert!(oracle.is_sat(&s("01")).unwrap());
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases = [
            ("p cnf 2 3\n1 0\n2 0\n", 3, "declares 3"),
            ("1 0\n", 1, "before the problem line"),
            ("c only comments\n", 1, "missing problem line"),
            ("p cnf x 1\n1 0\n", 1, "ill-formed"),
            ("p dnf 1 1\n1 0\n", 1, "ill-formed"),
            ("p cnf 2 1\n1 3 0\n", 2, "out of range"),
            ("p cnf 2 1\n1 a 0\n", 2, "invalid literal"),
            ("p cnf 2 1\n1 2\n", 2, "not terminated"),
            ("p cnf 2 1\np cnf 2 1\n1 0\n", 2, "duplicate"),
        ];
        for (text, line, needle) in cases {
            match parse_dimacs(text.as_bytes()) {
                Err(Error::Parse(e)) => {
                    assert_eq!(e.line, line, "{text:?}: {e}");
                    assert!(e.message.contains(needle), "{text:?}: {e}");
                }
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn example_checks() {
        let mut oracle = parse_dimacs(EXAMPLE.as_bytes()).unwrap();
        assert!(!oracle.is_sat(&s("1100")).unwrap());
        assert!(oracle.is_sat(&s("0000")).unwrap());
        assert!(oracle.is_sat(&s("0111")).unwrap());
        assert!(oracle.is_sat(&s("1010")).unwrap());
        assert!(!oracle.is_sat(&s("1011")).unwrap());
        // Interleaved queries on the same solver stay consistent.
        assert!(!oracle.is_sat(&s("1100")).unwrap());
        assert!(oracle.is_sat(&s("0111")).unwrap());
    }

    #[test]
    fn rejects_bad_literals_programmatically() {
        assert!(CnfOracle::from_clauses(2, vec![vec![3]]).is_err());
        assert!(CnfOracle::from_clauses(2, vec![vec![0]]).is_err());
    }

    /// Truth-table evaluation of the selected clauses; independent of the solver.
    fn brute_sat(num_vars: usize, clauses: &[Vec<i32>], set: &ConstraintSet) -> bool {
        (0..1u32 << num_vars).any(|assign| {
            set.iter().all(|i| {
                clauses[i].iter().any(|&l| {
                    let v = (assign >> (l.unsigned_abs() - 1)) & 1 == 1;
                    v == (l > 0)
                })
            })
        })
    }

    fn small_cnf() -> impl Strategy<Value = (usize, Vec<Vec<i32>>)> {
        (1usize..=5).prop_flat_map(|vars| {
            let lit =
                (1..=vars as i32, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v });
            let clause = prop::collection::vec(lit, 0..=3);
            (Just(vars), prop::collection::vec(clause, 1..=8))
        })
    }

    proptest! {
        #[test]
        fn incremental_agrees_with_truth_table((vars, clauses) in small_cnf(), masks in prop::collection::vec(any::<u64>(), 1..20)) {
            let n = clauses.len();
            let mut oracle = CnfOracle::from_clauses(vars, clauses.clone()).unwrap();
            for m in masks {
                let set = ConstraintSet::from_mask(n, m & ((1 << n) - 1));
                prop_assert_eq!(oracle.is_sat(&set).unwrap(), brute_sat(vars, &clauses, &set));
            }
        }

        #[test]
        fn cnf_is_monotone((vars, clauses) in small_cnf(), a in any::<u64>(), b in any::<u64>()) {
            let n = clauses.len();
            let full = (1u64 << n) - 1;
            let small = ConstraintSet::from_mask(n, a & b & full);
            let big = ConstraintSet::from_mask(n, (a & full) | (a & b & full));
            let mut oracle = CnfOracle::from_clauses(vars, clauses).unwrap();
            if !oracle.is_sat(&small).unwrap() {
                prop_assert!(!oracle.is_sat(&big).unwrap());
            }
        }
    }
}
