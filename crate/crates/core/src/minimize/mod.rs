//! The learner/teacher loop: SAT candidates checked for equivalence by
//! complementation, with counterexamples fed back as examples.

mod certificate;
mod trace;

use std::time::{Duration, Instant};

use crate::automata::{
    find_accepted_word, intersect, live_states, member, reduce, Letter, Nba, UpWord,
};
use crate::complement::{complement_nba_with_limit, DEFAULT_DPA_LIMIT};
use crate::encoding::{solve_candidate, CandidateOptions, CandidateQuery, SampleSets};
use crate::error::{Error, Result, SatError};
use crate::sat::{Budget, SolverChoice};

pub use certificate::{verify_certificate, Certificate};
pub use trace::{Trace, TraceEvent, WordKind};

#[derive(Debug, Clone)]
pub struct MinimizationConfig {
    pub solver: SolverChoice,
    /// Wall-clock budget of the whole run.
    pub timeout: Duration,
    pub seed_words: bool,
    pub symmetry_breaking: bool,
    /// Forbid start edges on letters no accepted word begins with.
    pub extra_knowledge: bool,
    /// Look for words the candidate wrongly accepts before complementing it.
    pub bad_words_first: bool,
    /// Give up (as on timeout) once more than this many states are needed.
    pub max_n: Option<usize>,
    pub dpa_limit: usize,
}

impl Default for MinimizationConfig {
    fn default() -> Self {
        MinimizationConfig {
            solver: SolverChoice::Internal,
            timeout: Duration::from_secs(600),
            seed_words: true,
            symmetry_breaking: true,
            extra_knowledge: true,
            bad_words_first: true,
            max_n: None,
            dpa_limit: DEFAULT_DPA_LIMIT,
        }
    }
}

/// What was established when a run stopped early.
#[derive(Debug, Clone)]
pub struct PartialResult {
    /// No automaton with fewer states is equivalent to the input.
    pub lower_bound: usize,
    pub samples: SampleSets,
    pub trace: Trace,
}

#[derive(Debug, Clone)]
pub struct Minimized {
    pub automaton: Nba,
    pub certificate: Certificate,
    pub trace: Trace,
    /// Every candidate the solver proposed, in order.
    pub candidates: Vec<Nba>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    /// Accepted by the candidate, rejected by the target.
    BadWord(UpWord),
    /// Accepted by the target, rejected by the candidate.
    GoodWord(UpWord),
}

/// The fixed start words: `a^ω`, `ab^ω`, `(ab)^ω`, `a(ab)^ω` for distinct
/// letters and `(01…σ-1)^ω`, canonical and without duplicates.
pub fn seed_word_list(sigma: usize) -> Vec<UpWord> {
    let mut words = Vec::new();
    let mut push = |stem: Vec<Letter>, period: Vec<Letter>| {
        let w = UpWord::new(stem, period)
            .expect("nonempty period")
            .canonicalize();
        if !words.contains(&w) {
            words.push(w);
        }
    };
    for a in 0..sigma {
        push(vec![], vec![a]);
    }
    for a in 0..sigma {
        for b in (0..sigma).filter(|&b| b != a) {
            push(vec![a], vec![b]);
            push(vec![], vec![a, b]);
            push(vec![a], vec![a, b]);
        }
    }
    push(vec![], (0..sigma).collect());
    words
}

/// Start words classified by membership in `a`.
pub fn seed_words(a: &Nba) -> Result<SampleSets> {
    let mut samples = SampleSets::new();
    for w in seed_word_list(a.alphabet().size()) {
        if member(a, &w)? {
            samples.insert_good(&w)?;
        } else {
            samples.insert_bad(&w)?;
        }
    }
    Ok(samples)
}

/// Letters that no word accepted by `a` starts with.
pub fn forbidden_start_letters(a: &Nba) -> Vec<Letter> {
    let live = live_states(a);
    a.alphabet()
        .letters()
        .filter(|&l| !a.successors(a.start(), l).iter().any(|&q| live[q]))
        .collect()
}

/// Equivalence query with the default determinization cap.
pub fn check_candidate(a: &Nba, neg_a: &Nba, candidate: &Nba) -> Result<Verdict> {
    check_candidate_with(a, neg_a, candidate, true, DEFAULT_DPA_LIMIT)
}

/// Compares `candidate` with `a`, given the complement `neg_a` of `a`.
pub fn check_candidate_with(
    a: &Nba,
    neg_a: &Nba,
    candidate: &Nba,
    bad_words_first: bool,
    dpa_limit: usize,
) -> Result<Verdict> {
    let bad =
        || -> Result<Option<UpWord>> { Ok(find_accepted_word(&intersect(candidate, neg_a)?)) };
    let good = || -> Result<Option<UpWord>> {
        let neg_c = complement_nba_with_limit(candidate, dpa_limit)?;
        Ok(find_accepted_word(&intersect(a, &neg_c)?))
    };
    if bad_words_first {
        if let Some(w) = bad()? {
            return Ok(Verdict::BadWord(w));
        }
        if let Some(w) = good()? {
            return Ok(Verdict::GoodWord(w));
        }
    } else {
        if let Some(w) = good()? {
            return Ok(Verdict::GoodWord(w));
        }
        if let Some(w) = bad()? {
            return Ok(Verdict::BadWord(w));
        }
    }
    Ok(Verdict::Equal)
}

/// Smallest NBA equivalent to `a`.
pub fn minimize(a: &Nba, cfg: &MinimizationConfig) -> Result<Minimized> {
    let deadline = Instant::now() + cfg.timeout;
    let r = reduce(a);
    let neg = complement_nba_with_limit(&r, cfg.dpa_limit)?;
    run(r, &neg, cfg, deadline)
}

/// Like [`minimize`] with the complement of `a` supplied by the caller.
pub fn minimize_with_complement(
    a: &Nba,
    neg_a: &Nba,
    cfg: &MinimizationConfig,
) -> Result<Minimized> {
    if a.alphabet() != neg_a.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: a.alphabet().size(),
            right: neg_a.alphabet().size(),
        });
    }
    let deadline = Instant::now() + cfg.timeout;
    run(reduce(a), neg_a, cfg, deadline)
}

fn run(r: Nba, neg: &Nba, cfg: &MinimizationConfig, deadline: Instant) -> Result<Minimized> {
    let mut trace = Trace::default();
    let mut samples = SampleSets::new();
    if cfg.seed_words {
        let seeds = seed_words(&r)?;
        for w in seeds.good() {
            samples.insert_good(w)?;
            trace.push(TraceEvent::Seed {
                kind: WordKind::Good,
                word: w.clone(),
            });
        }
        for w in seeds.bad() {
            samples.insert_bad(w)?;
            trace.push(TraceEvent::Seed {
                kind: WordKind::Bad,
                word: w.clone(),
            });
        }
    }
    let options = CandidateOptions {
        symmetry_breaking: cfg.symmetry_breaking,
        forbidden_start_letters: if cfg.extra_knowledge {
            forbidden_start_letters(&r)
        } else {
            Vec::new()
        },
    };
    let budget = Budget {
        deadline: Some(deadline),
        max_conflicts: None,
    };
    let mut candidates = Vec::new();
    let mut n = 1;
    loop {
        if n >= r.num_states() {
            let n = r.num_states();
            harden(&r, neg, cfg, &options, n, &budget, &mut samples, &mut trace)?;
            trace.push(TraceEvent::Finished { n, input: true });
            let certificate = Certificate::from_samples(&samples, n);
            return Ok(Minimized {
                automaton: r,
                certificate,
                trace,
                candidates,
            });
        }
        let give_up = budget.expired() || cfg.max_n.is_some_and(|m| n > m);
        if give_up {
            return Err(timeout(n, samples, trace));
        }
        let query = CandidateQuery {
            n,
            alphabet: r.alphabet(),
            samples: &samples,
            options: &options,
        };
        let (found, stats) = match solve_candidate(&query, &cfg.solver, &budget) {
            Err(Error::Sat(SatError::Timeout)) => return Err(timeout(n, samples, trace)),
            other => other?,
        };
        let Some(candidate) = found else {
            trace.push(TraceEvent::NoCandidate {
                n,
                variables: stats.variable_count,
                clauses: stats.clause_count,
            });
            n += 1;
            trace.push(TraceEvent::SizeIncreased { n });
            continue;
        };
        trace.push(TraceEvent::Candidate {
            n,
            transitions: candidate.transitions().len(),
            variables: stats.variable_count,
            clauses: stats.clause_count,
        });
        let verdict =
            check_candidate_with(&r, neg, &candidate, cfg.bad_words_first, cfg.dpa_limit)?;
        candidates.push(candidate);
        match verdict {
            Verdict::Equal => {
                harden(&r, neg, cfg, &options, n, &budget, &mut samples, &mut trace)?;
                trace.push(TraceEvent::Finished { n, input: false });
                let certificate = Certificate::from_samples(&samples, n);
                let automaton = candidates.last().cloned().expect("just pushed");
                return Ok(Minimized {
                    automaton,
                    certificate,
                    trace,
                    candidates,
                });
            }
            Verdict::BadWord(w) => {
                samples.insert_bad(&w)?;
                trace.push(TraceEvent::Counterexample {
                    kind: WordKind::Bad,
                    word: w,
                });
            }
            Verdict::GoodWord(w) => {
                samples.insert_good(&w)?;
                trace.push(TraceEvent::Counterexample {
                    kind: WordKind::Good,
                    word: w,
                });
            }
        }
    }
}

/// Forbidding start letters can rule out small automata that separate the
/// examples without being equivalent to `r`. Adds counterexamples until the
/// examples alone exclude every `n - 1` state automaton.
#[allow(clippy::too_many_arguments)]
fn harden(
    r: &Nba,
    neg: &Nba,
    cfg: &MinimizationConfig,
    options: &CandidateOptions,
    n: usize,
    budget: &Budget,
    samples: &mut SampleSets,
    trace: &mut Trace,
) -> Result<()> {
    if n < 2 || options.forbidden_start_letters.is_empty() {
        return Ok(());
    }
    let plain = CandidateOptions {
        symmetry_breaking: options.symmetry_breaking,
        forbidden_start_letters: Vec::new(),
    };
    loop {
        let query = CandidateQuery {
            n: n - 1,
            alphabet: r.alphabet(),
            samples,
            options: &plain,
        };
        let found = match solve_candidate(&query, &cfg.solver, budget) {
            Err(Error::Sat(SatError::Timeout)) => {
                return Err(timeout(n, samples.clone(), trace.clone()));
            }
            other => other?.0,
        };
        let Some(candidate) = found else {
            return Ok(());
        };
        match check_candidate_with(r, neg, &candidate, cfg.bad_words_first, cfg.dpa_limit)? {
            Verdict::Equal => {
                return Err(Error::InvalidAutomaton(format!(
                    "found an equivalent automaton with {} states after proving {n} necessary",
                    n - 1
                )))
            }
            Verdict::BadWord(w) => {
                samples.insert_bad(&w)?;
                trace.push(TraceEvent::CertificateWord {
                    kind: WordKind::Bad,
                    word: w,
                });
            }
            Verdict::GoodWord(w) => {
                samples.insert_good(&w)?;
                trace.push(TraceEvent::CertificateWord {
                    kind: WordKind::Good,
                    word: w,
                });
            }
        }
    }
}

fn timeout(n: usize, samples: SampleSets, trace: Trace) -> Error {
    Error::Timeout(Box::new(PartialResult {
        lower_bound: n,
        samples,
        trace,
    }))
}
