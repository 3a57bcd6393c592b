//! Online enumeration of minimal unsatisfiable subsets (MUSes).
//!
//! The crate provides the recursive enumerator in [`remus`], the MARCO
//! baseline in [`marco`], the symbolic store of unexplored subsets in
//! [`map`], satisfiability oracles in [`oracle`] and a deletion-based
//! [`shrink`] procedure. Both enumerators stream each MUS to a caller-supplied
//! sink as soon as it is found and record how many oracle checks it took.
//!
//! ```
//! use remus_core::{parse_dimacs, remus_enumerate, Instance, RemusConfig};
//!
//! let text = "p cnf 2 4\n1 0\n-1 0\n2 0\n-1 -2 0\n";
//! let instance = Instance::new(parse_dimacs(text.as_bytes()).unwrap()).unwrap();
//! let report = remus_enumerate(instance, &RemusConfig::default(), |r| {
//!     println!("MUS {}: {:?}", r.ordinal, r.mus.to_one_based());
//! })
//! .unwrap();
//! assert_eq!(report.muses.len(), 2);
//! assert!(report.complete);
//! ```

pub mod cli;
pub mod error;
pub mod generate;
pub mod instance;
pub mod map;
pub mod marco;
pub mod oracle;
pub mod reference;
pub mod remus;
pub mod set;
pub mod shrink;
pub mod stats;

pub use error::{Error, ParseError, Result};
pub use instance::Instance;
pub use map::{BlockEvent, BlockKind, UnexploredMap};
pub use marco::marco_enumerate;
pub use oracle::{
    bruteforce_all_muses, parse_dimacs, verify_mus, CnfOracle, SatOracle, TableOracle,
};
pub use remus::{choose_p, remus_enumerate, RemusConfig, Report, ShrinkTrace};
pub use set::ConstraintSet;
pub use shrink::{shrink, ShrinkConfig, ShrinkOutcome};
pub use stats::{CheckStats, MusRecord, ShrinkEntry, StatsEntry};
