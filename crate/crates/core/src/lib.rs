//! Exact state minimization of nondeterministic Büchi automata.
//!
//! Candidates of increasing size are found by a SAT solver from sets of
//! good and bad example words; each candidate is compared with the input
//! through complementation, and a distinguishing word becomes a new example.
//!
//! ```
//! use nbamin::{minimize, Alphabet, MinimizationConfig, Nba};
//!
//! // (0|1)* 0^ω
//! let ab = Alphabet::new(2).unwrap();
//! let a = Nba::new(ab, 3, 0, vec![1, 2], vec![(0, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, 2), (2, 0, 2)]).unwrap();
//! let m = minimize(&a, &MinimizationConfig::default()).unwrap();
//! assert_eq!(m.automaton.num_states(), 2);
//! ```

pub mod automata;
pub mod census;
pub mod complement;
pub mod encoding;
pub mod error;
pub mod format;
pub mod minimize;
pub mod sat;

pub use automata::{
    find_accepted_word, intersect, is_empty, member, random_nba, reduce, sccs, word_automaton,
    Alphabet, Dpa, Letter, Nba, RandomNbaParams, SccPartition, State, UpWord,
};
pub use complement::{complement_dpa, complement_nba, dpa_to_nba, nba_to_dpa};
pub use encoding::{
    build_encoding, decode_model, solve_candidate, CandidateOptions, CandidateQuery, SampleSets,
};
pub use error::{Error, Result, SatError};
pub use minimize::{
    check_candidate, minimize, minimize_with_complement, seed_words, verify_certificate,
    Certificate, MinimizationConfig, Minimized, PartialResult, Trace, Verdict,
};
pub use sat::{Budget, SolverChoice};
