//! CNF formulas, the embedded CDCL solver and the external-solver adapter.

mod cdcl;
mod cnf;
mod dimacs;
mod external;

use std::path::PathBuf;
use std::time::{Duration, Instant};

pub use cdcl::{solve_embedded, CdclSolver, SolverStats};
pub use cnf::{Cnf, Model};
pub use dimacs::{read_dimacs, write_dimacs};
pub use external::{external_solve, parse_result};

use crate::error::SatError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    Sat(Model),
    Unsat,
}

impl SatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Sat(_))
    }
}

/// Wall-clock deadline plus an optional conflict cap.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub deadline: Option<Instant>,
    pub max_conflicts: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn timeout(after: Duration) -> Self {
        Budget {
            deadline: Instant::now().checked_add(after),
            max_conflicts: None,
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// Which SAT backend answers candidate queries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SolverChoice {
    #[default]
    Internal,
    /// Path to a program called as `<path> <in.cnf> <out.result>`.
    External(PathBuf),
}

impl SolverChoice {
    pub fn solve(&self, cnf: &Cnf, budget: &Budget) -> Result<SatOutcome, SatError> {
        match self {
            SolverChoice::Internal => solve_embedded(cnf, budget),
            SolverChoice::External(path) => external_solve(cnf, path, budget),
        }
    }
}

impl std::str::FromStr for SolverChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "internal" {
            Ok(SolverChoice::Internal)
        } else if let Some(path) = s.strip_prefix("external:") {
            Ok(SolverChoice::External(PathBuf::from(path)))
        } else {
            Err(format!(
                "expected `internal` or `external:<path>`, got {s:?}"
            ))
        }
    }
}
