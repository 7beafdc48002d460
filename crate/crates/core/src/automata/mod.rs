//! Büchi and parity automata, ultimately periodic words and the basic
//! language operations on them.

mod dpa;
mod lasso;
mod nba;
mod product;
mod random;
mod reduce;
mod scc;
mod word;

pub use dpa::Dpa;
pub use lasso::{find_accepted_word, is_empty};
pub use nba::{Alphabet, Letter, Nba, State};
pub use product::{intersect, member, word_automaton};
pub use random::{is_trim, random_nba, sample_nba, RandomNbaParams};
pub use reduce::reduce;
pub use scc::SccPartition;
pub use word::UpWord;

pub(crate) use reduce::live_states;

/// Strongly connected components of the transition graph of `a`.
pub fn sccs(a: &Nba) -> SccPartition {
    SccPartition::of_graph(&a.graph())
}
