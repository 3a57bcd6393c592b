//! Python bindings. Constraint numbers are 1-based on the Python side.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyIndexError, PyValueError};
use pyo3::prelude::*;

use remus_core::oracle::all_statuses;
use remus_core::{
    bruteforce_all_muses, marco_enumerate, parse_dimacs, remus_enumerate, CnfOracle, ConstraintSet,
    Error, Instance as CoreInstance, MusRecord, RemusConfig, SatOracle, ShrinkConfig, TableOracle,
};

create_exception!(remus, InstanceSatisfiable, PyException);
create_exception!(remus, RemusError, PyException);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::InstanceSatisfiable => InstanceSatisfiable::new_err("instance is satisfiable"),
        Error::Parse(e) => PyValueError::new_err(e.to_string()),
        Error::Precondition(_)
        | Error::LengthMismatch { .. }
        | Error::NotMonotone { .. }
        | Error::TooLarge { .. } => PyValueError::new_err(err.to_string()),
        other => RemusError::new_err(other.to_string()),
    }
}

fn set_from(n: usize, members: Vec<usize>) -> PyResult<ConstraintSet> {
    ConstraintSet::from_one_based(n, members).map_err(|e| PyIndexError::new_err(e.to_string()))
}

#[derive(Clone)]
enum Source {
    Cnf {
        num_vars: usize,
        clauses: Vec<Vec<i32>>,
    },
    Table(TableOracle),
}

/// A constraint universe with its satisfiability oracle.
#[pyclass(module = "remus", frozen)]
struct Instance {
    n: usize,
    source: Source,
}

impl Instance {
    fn oracle(&self) -> PyResult<Box<dyn SatOracle>> {
        Ok(match &self.source {
            Source::Cnf { num_vars, clauses } => {
                Box::new(CnfOracle::from_clauses(*num_vars, clauses.clone()).map_err(to_py)?)
            }
            Source::Table(t) => Box::new(t.clone()),
        })
    }
}

#[pymethods]
impl Instance {
    /// Parses DIMACS CNF text; each clause is one constraint.
    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Self> {
        let oracle = parse_dimacs(text.as_bytes()).map_err(to_py)?;
        Self::from_clauses(oracle.num_vars(), oracle.clauses().to_vec())
    }

    #[staticmethod]
    fn from_clauses(num_vars: usize, clauses: Vec<Vec<i32>>) -> PyResult<Self> {
        let oracle = CnfOracle::from_clauses(num_vars, clauses.clone()).map_err(to_py)?;
        if oracle.universe() == 0 {
            return Err(PyValueError::new_err(
                "an instance needs at least one clause",
            ));
        }
        Ok(Instance {
            n: oracle.universe(),
            source: Source::Cnf { num_vars, clauses },
        })
    }

    /// A monotone instance whose minimal unsatisfiable sets are `antichain`.
    #[staticmethod]
    fn from_antichain(n: usize, antichain: Vec<Vec<usize>>) -> PyResult<Self> {
        let sets = antichain
            .into_iter()
            .map(|m| set_from(n, m))
            .collect::<PyResult<Vec<_>>>()?;
        let table = TableOracle::from_antichain(n, &sets).map_err(to_py)?;
        Ok(Instance {
            n,
            source: Source::Table(table),
        })
    }

    /// A table instance; `statuses[mask]` tells whether subset `mask` is
    /// satisfiable (bit `i` stands for constraint `i + 1`).
    #[staticmethod]
    fn from_statuses(n: usize, statuses: Vec<bool>) -> PyResult<Self> {
        let table = TableOracle::from_statuses(n, statuses).map_err(to_py)?;
        Ok(Instance {
            n,
            source: Source::Table(table),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.n
    }

    fn is_sat(&self, subset: Vec<usize>) -> PyResult<bool> {
        let set = set_from(self.n, subset)?;
        self.oracle()?.is_sat(&set).map_err(to_py)
    }

    /// Satisfiability of every subset, indexed by bit mask.
    fn statuses(&self) -> PyResult<Vec<bool>> {
        all_statuses(&mut *self.oracle()?).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.n
    }

    fn __repr__(&self) -> String {
        match &self.source {
            Source::Cnf { num_vars, .. } => format!("Instance(cnf, n={}, vars={num_vars})", self.n),
            Source::Table(_) => format!("Instance(table, n={})", self.n),
        }
    }
}

/// Outcome of an enumeration run.
#[pyclass(module = "remus", frozen, get_all)]
struct Enumeration {
    /// MUSes in emission order, as ascending 1-based constraint numbers.
    muses: Vec<Vec<usize>>,
    /// Recursion depth at which each MUS was found.
    depths: Vec<usize>,
    /// Cumulative oracle checks at each emission.
    checks_at_mus: Vec<u64>,
    oracle_checks: u64,
    map_solver_calls: u64,
    elapsed_s: f64,
    complete: bool,
    mean_seed_size: Option<f64>,
}

#[pymethods]
impl Enumeration {
    fn __repr__(&self) -> String {
        format!(
            "Enumeration(found={}, oracle_checks={}, map_calls={}, complete={})",
            self.muses.len(),
            self.oracle_checks,
            self.map_solver_calls,
            self.complete
        )
    }
}

/// Enumerates MUSes with `algorithm` ("remus" or "marco"). `callback`, when
/// given, receives `(ordinal, mus)` as each MUS is found.
#[pyfunction]
#[pyo3(signature = (instance, algorithm = "remus", mus_limit = None, time_limit = None, reduction_factor = 0.9, shrink_feed = true, callback = None))]
#[allow(clippy::too_many_arguments)]
fn enumerate(
    instance: &Instance,
    algorithm: &str,
    mus_limit: Option<u64>,
    time_limit: Option<f64>,
    reduction_factor: f64,
    shrink_feed: bool,
    callback: Option<Bound<'_, PyAny>>,
) -> PyResult<Enumeration> {
    let cfg = RemusConfig {
        reduction_factor,
        mus_limit,
        time_limit,
        shrink_cfg: ShrinkConfig {
            feed_map: shrink_feed,
            ..ShrinkConfig::default()
        },
        record_trace: false,
    };
    let mut callback_error: Option<PyErr> = None;
    let sink = |record: &MusRecord| {
        if let (Some(cb), None) = (&callback, &callback_error) {
            if let Err(e) = cb.call1((record.ordinal, record.mus.to_one_based())) {
                callback_error = Some(e);
            }
        }
    };
    let core = CoreInstance::new(instance.oracle()?).map_err(to_py)?;
    let report = match algorithm {
        "remus" => remus_enumerate(core, &cfg, sink),
        "marco" => marco_enumerate(core, &cfg, sink),
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown algorithm {other:?}"
            )))
        }
    }
    .map_err(to_py)?;
    if let Some(e) = callback_error {
        return Err(e);
    }
    Ok(Enumeration {
        muses: report.muses.iter().map(|r| r.mus.to_one_based()).collect(),
        depths: report.muses.iter().map(|r| r.depth).collect(),
        checks_at_mus: report
            .stats
            .per_mus
            .iter()
            .map(|e| e.oracle_checks)
            .collect(),
        oracle_checks: report.stats.oracle_checks,
        map_solver_calls: report.stats.map_solver_calls,
        elapsed_s: report.stats.elapsed().as_secs_f64(),
        complete: report.complete,
        mean_seed_size: report.stats.mean_seed_size(),
    })
}

/// Every MUS, by exhaustive enumeration (up to 20 constraints).
#[pyfunction]
fn bruteforce_muses(instance: &Instance) -> PyResult<Vec<Vec<usize>>> {
    let muses = bruteforce_all_muses(&mut *instance.oracle()?).map_err(to_py)?;
    Ok(muses.iter().map(|m| m.to_one_based()).collect())
}

/// Shrinks an unsatisfiable `seed` to a MUS containing `criticals`.
/// Returns `(mus, checks)`.
#[pyfunction]
#[pyo3(signature = (instance, seed, criticals = Vec::new()))]
fn shrink(
    instance: &Instance,
    seed: Vec<usize>,
    criticals: Vec<usize>,
) -> PyResult<(Vec<usize>, u64)> {
    let seed = set_from(instance.n, seed)?;
    let criticals = set_from(instance.n, criticals)?;
    let cfg = ShrinkConfig {
        verify_seed: true,
        ..ShrinkConfig::default()
    };
    let out =
        remus_core::shrink(&mut *instance.oracle()?, &seed, &criticals, cfg).map_err(to_py)?;
    Ok((out.mus.to_one_based(), out.checks))
}

/// The symbolic store of unexplored subsets.
#[pyclass(module = "remus", unsendable)]
struct UnexploredMap {
    inner: remus_core::UnexploredMap,
}

#[pymethods]
impl UnexploredMap {
    #[new]
    fn new(n: usize) -> PyResult<Self> {
        Ok(UnexploredMap {
            inner: remus_core::UnexploredMap::new(n).map_err(to_py)?,
        })
    }

    fn block_down(&mut self, sat_set: Vec<usize>) -> PyResult<()> {
        let set = set_from(self.inner.universe(), sat_set)?;
        self.inner.block_down(&set).map_err(to_py)
    }

    fn block_up(&mut self, unsat_set: Vec<usize>) -> PyResult<()> {
        let set = set_from(self.inner.universe(), unsat_set)?;
        self.inner.block_up(&set).map_err(to_py)
    }

    fn contains(&self, subset: Vec<usize>) -> PyResult<bool> {
        Ok(self
            .inner
            .contains(&set_from(self.inner.universe(), subset)?))
    }

    fn has_unexplored_subset_of(&mut self, p: Vec<usize>) -> PyResult<bool> {
        let p = set_from(self.inner.universe(), p)?;
        self.inner.has_unexplored_subset_of(&p).map_err(to_py)
    }

    fn max_unexplored_subset_of(&mut self, p: Vec<usize>) -> PyResult<Option<Vec<usize>>> {
        let p = set_from(self.inner.universe(), p)?;
        Ok(self
            .inner
            .max_unexplored_subset_of(&p)
            .map_err(to_py)?
            .map(|r| r.to_one_based()))
    }

    #[getter]
    fn solver_calls(&self) -> u64 {
        self.inner.solver_calls()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.universe()
    }
}

#[pymodule]
fn remus(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<Enumeration>()?;
    m.add_class::<UnexploredMap>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(bruteforce_muses, m)?)?;
    m.add_function(wrap_pyfunction!(shrink, m)?)?;
    m.add(
        "InstanceSatisfiable",
        m.py().get_type::<InstanceSatisfiable>(),
    )?;
    m.add("RemusError", m.py().get_type::<RemusError>())?;
    Ok(())
}
