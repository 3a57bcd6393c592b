use crate::error::{Error, Result};
use crate::oracle::SatOracle;

/// A constraint universe together with the oracle deciding its subsets.
#[derive(Debug)]
pub struct Instance<O> {
    n: usize,
    labels: Option<Vec<String>>,
    oracle: O,
}

impl<O: SatOracle> Instance<O> {
    pub fn new(oracle: O) -> Result<Self> {
        let n = oracle.universe();
        if n == 0 {
            return Err(Error::Precondition(
                "an instance needs at least one constraint".into(),
            ));
        }
        Ok(Instance {
            n,
            labels: None,
            oracle,
        })
    }

    /// Attaches one display name per constraint.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of constraint `i` (0-based); falls back to its 1-based number.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => (i + 1).to_string(),
        }
    }

    pub fn oracle_mut(&mut self) -> &mut O {
        &mut self.oracle
    }

    pub fn into_oracle(self) -> O {
        self.oracle
    }
}
