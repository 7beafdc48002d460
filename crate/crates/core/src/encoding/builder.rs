use crate::automata::{Letter, State, UpWord};
use crate::sat::Cnf;

use super::catalog::{SemanticVar, VarCatalog, WordId};
use super::{CandidateQuery, EncodingStats};

/// Number of doubling levels: `2^M ≥ 2n` block repetitions.
pub fn repetition_levels(n: usize) -> u32 {
    let ceil_log2 = usize::BITS - (n.max(1) - 1).leading_zeros();
    ceil_log2 + 1
}

type Clause = Vec<i32>;

pub(super) struct Encoder {
    n: usize,
    top: u32,
    pub(super) catalog: VarCatalog,
    // definitional clauses of variable i live at defs[i - 1]
    defs: Vec<Vec<Clause>>,
}

impl Encoder {
    pub(super) fn new(n: usize, sigma: usize) -> Self {
        let mut enc = Encoder {
            n,
            top: repetition_levels(n),
            catalog: VarCatalog::default(),
            defs: Vec::new(),
        };
        for i in 0..n {
            enc.fresh(SemanticVar::Final(i));
        }
        for i in 0..n {
            for j in 0..n {
                for letter in 0..sigma {
                    enc.fresh(SemanticVar::Trans {
                        from: i,
                        to: j,
                        letter,
                    });
                }
            }
        }
        enc
    }

    fn fresh(&mut self, v: SemanticVar) -> (i32, bool) {
        let (i, fresh) = self.catalog.get_or_insert(v);
        if fresh {
            self.defs.push(Vec::new());
        }
        (i as i32, fresh)
    }

    fn define(&mut self, x: i32, clauses: Vec<Clause>) {
        self.defs[x as usize - 1] = clauses;
    }

    fn define_equiv(&mut self, x: i32, y: i32) {
        self.define(x, vec![vec![-x, y], vec![x, -y]]);
    }

    fn define_and(&mut self, x: i32, mut lits: Vec<i32>) {
        lits.sort_unstable();
        lits.dedup();
        let mut clauses: Vec<Clause> = lits.iter().map(|&l| vec![-x, l]).collect();
        let mut back = vec![x];
        back.extend(lits.iter().map(|&l| -l));
        clauses.push(back);
        self.define(x, clauses);
    }

    fn define_or(&mut self, x: i32, mut lits: Vec<i32>) {
        lits.sort_unstable();
        lits.dedup();
        let mut forth = vec![-x];
        forth.extend(&lits);
        let mut clauses = vec![forth];
        clauses.extend(lits.iter().map(|&l| vec![x, -l]));
        self.define(x, clauses);
    }

    pub(super) fn final_state(&self, i: State) -> i32 {
        self.catalog.lookup(&SemanticVar::Final(i)).unwrap() as i32
    }

    pub(super) fn trans(&self, from: State, to: State, letter: Letter) -> i32 {
        self.catalog
            .lookup(&SemanticVar::Trans { from, to, letter })
            .unwrap() as i32
    }

    fn suffix(&mut self, word: WordId) -> (Letter, WordId) {
        let letters = self.catalog.word(word).to_vec();
        (letters[0], self.catalog.intern(&letters[1..]))
    }

    /// `d(from, to, word)`
    fn path(&mut self, from: State, to: State, word: WordId) -> i32 {
        let (x, fresh) = self.fresh(SemanticVar::Path { from, to, word });
        if !fresh {
            return x;
        }
        match self.catalog.word(word).len() {
            0 => self.define(x, vec![vec![if from == to { x } else { -x }]]),
            1 => {
                let letter = self.catalog.word(word)[0];
                let t = self.trans(from, to, letter);
                self.define_equiv(x, t);
            }
            _ => {
                let (letter, rest) = self.suffix(word);
                let ways = (0..self.n)
                    .map(|via| self.path_via(from, via, to, letter, rest))
                    .collect();
                self.define_or(x, ways);
            }
        }
        x
    }

    /// `o`: `from -letter-> via -rest-> to`
    fn path_via(
        &mut self,
        from: State,
        via: State,
        to: State,
        letter: Letter,
        rest: WordId,
    ) -> i32 {
        let (x, fresh) = self.fresh(SemanticVar::PathVia {
            from,
            via,
            to,
            letter,
            rest,
        });
        if fresh {
            let t = self.trans(from, via, letter);
            let d = self.path(via, to, rest);
            self.define_and(x, vec![t, d]);
        }
        x
    }

    /// `D(from, to, word)`, `word` nonempty
    fn final_path(&mut self, from: State, to: State, word: WordId) -> i32 {
        let (x, fresh) = self.fresh(SemanticVar::FinalPath { from, to, word });
        if !fresh {
            return x;
        }
        if self.catalog.word(word).len() == 1 {
            let letter = self.catalog.word(word)[0];
            let t = self.trans(from, to, letter);
            let fi = self.final_state(from);
            let fj = self.final_state(to);
            // x <-> t & (f_from | f_to)
            let mut clauses = vec![vec![-x, t], vec![x, -t, -fi]];
            if fi == fj {
                clauses.push(vec![-x, fi]);
            } else {
                clauses.push(vec![-x, fi, fj]);
                clauses.push(vec![x, -t, -fj]);
            }
            self.define(x, clauses);
        } else {
            let (letter, rest) = self.suffix(word);
            let ways = (0..self.n)
                .map(|via| self.final_path_via(from, via, to, letter, rest))
                .collect();
            self.define_or(x, ways);
        }
        x
    }

    /// `O`: `from -letter-> via -rest-> to` with a final visit, expressed as
    /// `t ∧ (D(via, to, rest) ∨ (f(from) ∧ d(via, to, rest)))`.
    fn final_path_via(
        &mut self,
        from: State,
        via: State,
        to: State,
        letter: Letter,
        rest: WordId,
    ) -> i32 {
        let (x, fresh) = self.fresh(SemanticVar::FinalPathVia {
            from,
            via,
            to,
            letter,
            rest,
        });
        if fresh {
            let t = self.trans(from, via, letter);
            let fin = self.final_state(from);
            let later = self.final_path(via, to, rest);
            let plain = self.path(via, to, rest);
            self.define(
                x,
                vec![
                    vec![-x, t],
                    vec![-x, later, fin],
                    vec![-x, later, plain],
                    vec![x, -t, -later],
                    vec![x, -t, -fin, -plain],
                ],
            );
        }
        x
    }

    /// `x(word, from, to, level)`
    fn repeat(&mut self, word: WordId, from: State, to: State, level: u32) -> i32 {
        let (x, fresh) = self.fresh(SemanticVar::Repeat {
            word,
            from,
            to,
            level,
        });
        if !fresh {
            return x;
        }
        if level == 0 {
            let d = self.path(from, to, word);
            self.define_equiv(x, d);
        } else {
            let mut ways = vec![self.repeat(word, from, to, level - 1)];
            for via in 0..self.n {
                ways.push(self.repeat_via(word, from, via, to, level - 1));
            }
            self.define_or(x, ways);
        }
        x
    }

    /// `h(word, from, via, to, level)`
    fn repeat_via(&mut self, word: WordId, from: State, via: State, to: State, level: u32) -> i32 {
        let (x, fresh) = self.fresh(SemanticVar::RepeatVia {
            word,
            from,
            via,
            to,
            level,
        });
        if fresh {
            let first = self.repeat(word, from, via, level);
            let second = self.repeat(word, via, to, level);
            self.define_and(x, vec![first, second]);
        }
        x
    }

    fn stem_via(&mut self, stem: WordId, period: WordId, via: State, to: State) -> i32 {
        let level = self.top;
        let (x, fresh) = self.fresh(SemanticVar::StemVia {
            stem,
            period,
            via,
            to,
            level,
        });
        if fresh {
            let d = self.path(0, via, stem);
            let r = self.repeat(period, via, to, level);
            self.define_and(x, vec![d, r]);
        }
        x
    }

    fn stem_reach(&mut self, stem: WordId, period: WordId, to: State) -> i32 {
        let level = self.top;
        let (x, fresh) = self.fresh(SemanticVar::StemReach {
            stem,
            period,
            to,
            level,
        });
        if fresh {
            let ways = (0..self.n)
                .map(|via| self.stem_via(stem, period, via, to))
                .collect();
            self.define_or(x, ways);
        }
        x
    }

    fn loop_(&mut self, from: State, to: State, period: WordId) -> i32 {
        let level = self.top;
        let (x, fresh) = self.fresh(SemanticVar::Loop {
            from,
            to,
            period,
            level,
        });
        if fresh {
            let out = self.final_path(from, to, period);
            let back = self.repeat(period, to, from, level);
            self.define_and(x, vec![out, back]);
        }
        x
    }

    fn loop_knot(&mut self, knot: State, period: WordId) -> i32 {
        let level = self.top;
        let (x, fresh) = self.fresh(SemanticVar::LoopKnot {
            knot,
            period,
            level,
        });
        if fresh {
            let ways = (0..self.n).map(|to| self.loop_(knot, to, period)).collect();
            self.define_or(x, ways);
        }
        x
    }

    fn knot(&mut self, stem: WordId, period: WordId, knot: State) -> i32 {
        let (x, fresh) = self.fresh(SemanticVar::Knot { stem, period, knot });
        if fresh {
            let s = self.stem_reach(stem, period, knot);
            let l = self.loop_knot(knot, period);
            self.define_and(x, vec![s, l]);
        }
        x
    }

    /// `z(u, v)`: the candidate accepts `u v^ω`.
    pub(super) fn accepts(&mut self, w: &UpWord) -> i32 {
        let stem = self.catalog.intern(w.stem());
        let period = self.catalog.intern(w.period());
        let (x, fresh) = self.fresh(SemanticVar::Accepts { stem, period });
        if fresh {
            let ways = (0..self.n).map(|i| self.knot(stem, period, i)).collect();
            self.define_or(x, ways);
        }
        x
    }

    /// Definitions in catalog order, followed by `extra` clauses.
    pub(super) fn finish(self, extra: Vec<Clause>) -> (Cnf, VarCatalog) {
        let mut cnf = Cnf::new(self.catalog.len());
        for clauses in self.defs {
            for clause in clauses {
                cnf.add(clause);
            }
        }
        for clause in extra {
            cnf.add(clause);
        }
        (cnf, self.catalog)
    }
}

pub(super) fn build(q: &CandidateQuery<'_>) -> (Cnf, VarCatalog, EncodingStats) {
    let sigma = q.alphabet.size();
    let mut enc = Encoder::new(q.n, sigma);

    let mut goals = Vec::new();
    for w in q.samples.good() {
        goals.push(vec![enc.accepts(w)]);
    }
    for w in q.samples.bad() {
        goals.push(vec![-enc.accepts(w)]);
    }

    let mut extra = Vec::new();
    if q.options.symmetry_breaking {
        // every state but the start has an edge from a smaller state
        for j in 1..q.n {
            let clause = (0..j)
                .flat_map(|i| (0..sigma).map(move |a| (i, a)))
                .map(|(i, a)| enc.trans(i, j, a))
                .collect();
            extra.push(clause);
        }
    }
    for &letter in &q.options.forbidden_start_letters {
        for j in 0..q.n {
            extra.push(vec![-enc.trans(0, j, letter)]);
        }
    }
    extra.extend(goals);

    let (cnf, catalog) = enc.finish(extra);
    let words = q.samples.good().chain(q.samples.bad());
    let stats = EncodingStats {
        num_words: q.samples.len(),
        total_word_length: words.map(|w| w.len()).sum(),
        alphabet_size: sigma,
        states: q.n,
        variable_count: catalog.len(),
        clause_count: cnf.clauses().len(),
    };
    (cnf, catalog, stats)
}
