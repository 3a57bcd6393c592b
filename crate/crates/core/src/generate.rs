//! Seeded random CNF instances for tests and benchmarks.

use std::fmt::Write;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CnfParams {
    pub vars: usize,
    pub clauses: usize,
    /// Literals per clause, over distinct variables.
    pub width: usize,
    pub seed: u64,
}

/// Uniform random fixed-width CNF: every clause draws `width` distinct
/// variables and negates each with probability one half.
pub fn random_kcnf(params: &CnfParams) -> Result<Vec<Vec<i32>>> {
    if params.width == 0 || params.width > params.vars {
        return Err(Error::Precondition(format!(
            "clause width {} must be within 1..={}",
            params.width, params.vars
        )));
    }
    if params.vars > i32::MAX as usize {
        return Err(Error::TooLarge {
            n: params.vars,
            limit: i32::MAX as usize,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    Ok((0..params.clauses)
        .map(|_| {
            let mut vars = sample(&mut rng, params.vars, params.width).into_vec();
            vars.sort_unstable();
            vars.into_iter()
                .map(|v| {
                    let lit = v as i32 + 1;
                    if rng.gen_bool(0.5) {
                        -lit
                    } else {
                        lit
                    }
                })
                .collect()
        })
        .collect())
}

/// Renders clauses as DIMACS CNF text.
pub fn to_dimacs(num_vars: usize, clauses: &[Vec<i32>], comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(comment) = comment {
        for line in comment.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
    let _ = writeln!(out, "p cnf {num_vars} {}", clauses.len());
    for clause in clauses {
        for lit in clause {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}
