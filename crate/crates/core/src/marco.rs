//! Baseline enumerator: seeds are always maximal unexplored subsets of the
//! whole universe and every shrink starts without known critical constraints.

use std::ops::ControlFlow;

use crate::error::Result;
use crate::instance::Instance;
use crate::map::BlockKind;
use crate::oracle::SatOracle;
use crate::remus::{RemusConfig, Report, Session};
use crate::set::ConstraintSet;
use crate::stats::MusRecord;

pub fn marco_enumerate<O: SatOracle>(
    instance: Instance<O>,
    cfg: &RemusConfig,
    mut sink: impl FnMut(&MusRecord),
) -> Result<Report> {
    let mut session = Session::start(instance, cfg, &mut sink)?;
    let n = session.universe();
    let full = ConstraintSet::full(n);
    let none = ConstraintSet::empty(n);
    let flow = loop {
        if session.exhausted() {
            break ControlFlow::Break(());
        }
        let Some(seed) = session.max_unexplored_subset_of(&full)? else {
            break ControlFlow::Continue(());
        };
        if session.check(&seed)? {
            // A satisfiable maximal unexplored set is an MSS.
            session.block(BlockKind::Down, &seed)?;
        } else {
            if session.exhausted() {
                break ControlFlow::Break(());
            }
            let mus = session.shrink(&seed, &none, 0)?;
            session.emit(mus, 0)?;
        }
    };
    Ok(session.finish(flow))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::oracle::TableOracle;

    fn s(text: &str) -> ConstraintSet {
        ConstraintSet::from_bit_str(text).unwrap()
    }

    fn example() -> Instance<TableOracle> {
        Instance::new(TableOracle::from_antichain(4, &[s("1100"), s("1011")]).unwrap()).unwrap()
    }

    #[test]
    fn enumerates_example() {
        let report = marco_enumerate(example(), &RemusConfig::default(), |_| {}).unwrap();
        let mut got: Vec<_> = report.muses.iter().map(|r| r.mus.clone()).collect();
        got.sort();
        assert_eq!(got, vec![s("1011"), s("1100")]);
        assert!(report.complete);
        assert!(report.stats.shrinks.iter().all(|e| e.criticals_size == 0));
        assert!(report.muses.iter().all(|r| r.depth == 0));
    }

    #[test]
    fn mus_limit() {
        let cfg = RemusConfig {
            mus_limit: Some(1),
            ..RemusConfig::default()
        };
        let report = marco_enumerate(example(), &cfg, |_| {}).unwrap();
        assert_eq!(report.muses.len(), 1);
        assert!(!report.complete);
    }

    #[test]
    fn satisfiable_instance() {
        let instance = Instance::new(TableOracle::from_fn(2, |_| true).unwrap()).unwrap();
        let err = marco_enumerate(instance, &RemusConfig::default(), |_| {});
        assert!(matches!(err, Err(Error::InstanceSatisfiable)));
    }
}
