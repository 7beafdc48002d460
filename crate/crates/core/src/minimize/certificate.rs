use std::collections::BTreeSet;

use crate::automata::{member, Nba, UpWord};
use crate::encoding::{solve_candidate, CandidateOptions, CandidateQuery, SampleSets};
use crate::error::{Error, Result};
use crate::sat::{Budget, SolverChoice};

/// Minimality witness: good and bad words that no automaton with fewer
/// than `n_min` states separates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub good: BTreeSet<UpWord>,
    pub bad: BTreeSet<UpWord>,
    pub n_min: usize,
}

impl Certificate {
    pub fn from_samples(samples: &SampleSets, n_min: usize) -> Self {
        Certificate {
            good: samples.good().cloned().collect(),
            bad: samples.bad().cloned().collect(),
            n_min,
        }
    }

    /// Canonical and disjoint word sets.
    pub fn samples(&self) -> Result<SampleSets> {
        let mut s = SampleSets::new();
        for w in &self.good {
            s.insert_good(w)?;
        }
        for w in &self.bad {
            s.insert_bad(w)?;
        }
        Ok(s)
    }
}

/// Re-checks a certificate against `a` from scratch: good words accepted,
/// bad words rejected, and no `n_min - 1` state automaton separating them.
///
/// A solver timeout is reported as an error, never as `false`.
pub fn verify_certificate(
    a: &Nba,
    cert: &Certificate,
    solver: &SolverChoice,
    budget: &Budget,
) -> Result<bool> {
    if cert.n_min == 0 {
        return Ok(false);
    }
    let samples = match cert.samples() {
        Ok(s) => s,
        Err(Error::ConflictingSample { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    for w in &cert.good {
        if !member(a, w)? {
            return Ok(false);
        }
    }
    for w in &cert.bad {
        if member(a, w)? {
            return Ok(false);
        }
    }
    if cert.n_min == 1 {
        return Ok(true);
    }
    let options = CandidateOptions::default();
    let query = CandidateQuery {
        n: cert.n_min - 1,
        alphabet: a.alphabet(),
        samples: &samples,
        options: &options,
    };
    Ok(solve_candidate(&query, solver, budget)?.0.is_none())
}
