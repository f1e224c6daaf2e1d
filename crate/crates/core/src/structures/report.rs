use std::fmt;

use rayon::prelude::*;

/// A counterexample to one axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub axiom: String,
    pub vertex: String,
    pub labels: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(
        axiom: &str,
        vertex: impl Into<String>,
        labels: &[usize],
        lhs: impl fmt::Debug,
        rhs: impl fmt::Debug,
    ) -> Self {
        Witness {
            axiom: axiom.to_string(),
            vertex: vertex.into(),
            labels: labels.to_vec(),
            lhs: format!("{lhs:?}"),
            rhs: format!("{rhs:?}"),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(
            f,
            "axiom={} vertex={} labels=[{}] lhs={} rhs={}",
            self.axiom,
            self.vertex,
            labels.join(","),
            self.lhs,
            self.rhs
        )
    }
}

pub type Check = Result<(), Witness>;

/// Named axiom checks.
pub trait Report {
    fn entries(&self) -> Vec<(&'static str, &Check)>;

    fn passed(&self) -> bool {
        self.entries().iter().all(|(_, c)| c.is_ok())
    }

    fn failures(&self) -> Vec<(&'static str, &Witness)> {
        self.entries()
            .into_iter()
            .filter_map(|(name, c)| c.as_ref().err().map(|w| (name, w)))
            .collect()
    }

    /// One `PASS name` / `FAIL name <witness>` line per check.
    fn lines(&self) -> Vec<String> {
        self.entries()
            .into_iter()
            .map(|(name, c)| match c {
                Ok(()) => format!("PASS {name}"),
                Err(w) => format!("FAIL {name} {w}"),
            })
            .collect()
    }
}

/// Runs `f` on every index in parallel and keeps the failure with the
/// smallest index.
pub(crate) fn first_failure<F>(count: usize, f: F) -> Check
where
    F: Fn(usize) -> Check + Sync,
{
    match (0..count).into_par_iter().find_map_first(|i| f(i).err()) {
        Some(w) => Err(w),
        None => Ok(()),
    }
}
