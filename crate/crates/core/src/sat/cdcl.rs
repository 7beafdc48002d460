//! Conflict-driven clause learning solver.
//!
//! Two watched literals per clause with blocker literals, first-UIP learning
//! with recursive clause minimization, VSIDS branching with phase saving,
//! Luby restarts and activity-based deletion of learnt clauses.

use super::cnf::{Cnf, Model};
use super::{Budget, SatOutcome};
use crate::error::SatError;

type Lit = u32;
type ClauseRef = u32;

const NO_REASON: ClauseRef = u32::MAX;

#[inline]
fn lit_of(dimacs: i32) -> Lit {
    let v = dimacs.unsigned_abs() - 1;
    (v << 1) | (dimacs < 0) as u32
}

#[inline]
fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

#[inline]
fn neg(l: Lit) -> Lit {
    l ^ 1
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Value {
    True,
    False,
    Unassigned,
}

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    activity: f64,
}

#[derive(Clone, Copy)]
struct Watch {
    clause: ClauseRef,
    blocker: Lit,
}

/// Counters reported after a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub restarts: u64,
}

struct VarHeap {
    heap: Vec<usize>,
    position: Vec<usize>,
}

impl VarHeap {
    const ABSENT: usize = usize::MAX;

    fn new(n: usize) -> Self {
        VarHeap {
            heap: Vec::with_capacity(n),
            position: vec![Self::ABSENT; n],
        }
    }

    fn contains(&self, v: usize) -> bool {
        self.position[v] != Self::ABSENT
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.position[v] = self.heap.len();
        self.heap.push(v);
        self.sift_up(self.heap.len() - 1, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.position[top] = Self::ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.position[last] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.sift_up(self.position[v], act);
        }
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if act[self.heap[parent]] >= act[v] {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.position[self.heap[i]] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.position[v] = i;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let left = 2 * i + 1;
            if left >= n {
                break;
            }
            let right = left + 1;
            let child = if right < n && act[self.heap[right]] > act[self.heap[left]] {
                right
            } else {
                left
            };
            if act[self.heap[child]] <= act[v] {
                break;
            }
            self.heap[i] = self.heap[child];
            self.position[self.heap[i]] = i;
            i = child;
        }
        self.heap[i] = v;
        self.position[v] = i;
    }
}

pub struct CdclSolver {
    num_vars: usize,
    clauses: Vec<Clause>,
    learnts: Vec<ClauseRef>,
    watches: Vec<Vec<Watch>>,
    assigns: Vec<Value>,
    level: Vec<u32>,
    reason: Vec<ClauseRef>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    clause_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    unsat: bool,
    max_learnts: f64,
    stats: SolverStats,
}

impl CdclSolver {
    pub fn new(cnf: &Cnf) -> Self {
        let n = cnf.num_vars();
        let mut solver = CdclSolver {
            num_vars: n,
            clauses: Vec::with_capacity(cnf.clauses().len()),
            learnts: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            assigns: vec![Value::Unassigned; n],
            level: vec![0; n],
            reason: vec![NO_REASON; n],
            trail: Vec::with_capacity(n),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; n],
            var_inc: 1.0,
            clause_inc: 1.0,
            heap: VarHeap::new(n),
            phase: vec![false; n],
            seen: vec![false; n],
            unsat: false,
            max_learnts: 0.0,
            stats: SolverStats::default(),
        };
        for v in 0..n {
            solver.heap.insert(v, &solver.activity);
        }
        for clause in cnf.clauses() {
            if !solver.add_input_clause(clause) {
                solver.unsat = true;
                break;
            }
        }
        solver.max_learnts = (solver.clauses.len() as f64 / 3.0).max(1000.0);
        solver
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    #[inline]
    fn value(&self, l: Lit) -> Value {
        match self.assigns[var(l)] {
            Value::Unassigned => Value::Unassigned,
            Value::True if l & 1 == 0 => Value::True,
            Value::False if l & 1 == 1 => Value::True,
            _ => Value::False,
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    // false iff the clause set became trivially unsatisfiable
    fn add_input_clause(&mut self, clause: &[i32]) -> bool {
        let mut lits: Vec<Lit> = clause.iter().map(|&l| lit_of(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == neg(w[1])) {
            return true;
        }
        // at level 0 drop false literals, skip satisfied clauses
        if lits.iter().any(|&l| self.value(l) == Value::True) {
            return true;
        }
        lits.retain(|&l| self.value(l) != Value::False);
        match lits.len() {
            0 => false,
            1 => {
                self.enqueue(lits[0], NO_REASON);
                self.propagate() == NO_REASON
            }
            _ => {
                self.attach(lits, false);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> ClauseRef {
        let cref = self.clauses.len() as ClauseRef;
        self.watches[lits[0] as usize].push(Watch {
            clause: cref,
            blocker: lits[1],
        });
        self.watches[lits[1] as usize].push(Watch {
            clause: cref,
            blocker: lits[0],
        });
        self.clauses.push(Clause {
            lits,
            learnt,
            deleted: false,
            activity: 0.0,
        });
        if learnt {
            self.learnts.push(cref);
        }
        cref
    }

    #[inline]
    fn enqueue(&mut self, l: Lit, reason: ClauseRef) {
        let v = var(l);
        self.assigns[v] = if l & 1 == 0 {
            Value::True
        } else {
            Value::False
        };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Unit propagation; returns the conflicting clause or `NO_REASON`.
    fn propagate(&mut self) -> ClauseRef {
        let mut conflict = NO_REASON;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = neg(p);
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut i = 0;
            let mut j = 0;
            'watchers: while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == Value::True {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.clause as usize;
                if self.clauses[cref].deleted {
                    continue;
                }
                {
                    let lits = &mut self.clauses[cref].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                }
                let first = self.clauses[cref].lits[0];
                if first != w.blocker && self.value(first) == Value::True {
                    ws[j] = Watch {
                        clause: w.clause,
                        blocker: first,
                    };
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                for k in 2..len {
                    let candidate = self.clauses[cref].lits[k];
                    if self.value(candidate) != Value::False {
                        self.clauses[cref].lits.swap(1, k);
                        self.watches[candidate as usize].push(Watch {
                            clause: w.clause,
                            blocker: first,
                        });
                        continue 'watchers;
                    }
                }
                ws[j] = Watch {
                    clause: w.clause,
                    blocker: first,
                };
                j += 1;
                if self.value(first) == Value::False {
                    conflict = w.clause;
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, w.clause);
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict != NO_REASON {
                self.qhead = self.trail.len();
                break;
            }
        }
        conflict
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: ClauseRef) {
        let c = &mut self.clauses[cref as usize];
        c.activity += self.clause_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.clause_inc *= 1e-20;
        }
    }

    /// First-UIP analysis; returns the learnt clause (asserting literal
    /// first) and the backjump level.
    fn analyze(&mut self, mut conflict: ClauseRef) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut pending = 0;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level();
        loop {
            if self.clauses[conflict as usize].learnt {
                self.bump_clause(conflict);
            }
            let skip = usize::from(p.is_some());
            for k in skip..self.clauses[conflict as usize].lits.len() {
                let q = self.clauses[conflict as usize].lits[k];
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] >= current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[var(self.trail[index])] {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            conflict = self.reason[var(lit)];
            self.seen[var(lit)] = false;
            pending -= 1;
            if pending == 0 {
                break;
            }
        }
        learnt[0] = neg(p.unwrap());

        // recursive minimization
        let to_clear: Vec<Lit> = learnt.clone();
        let abstract_levels = learnt[1..]
            .iter()
            .fold(0u64, |acc, &l| acc | 1u64 << (self.level[var(l)] & 63));
        let mut extra_cleared = Vec::new();
        let mut kept = vec![learnt[0]];
        for &l in &learnt[1..] {
            if self.reason[var(l)] == NO_REASON
                || !self.redundant(l, abstract_levels, &mut extra_cleared)
            {
                kept.push(l);
            }
        }
        for l in to_clear {
            self.seen[var(l)] = false;
        }
        for v in extra_cleared {
            self.seen[v] = false;
        }
        let mut learnt = kept;

        let backjump = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for k in 2..learnt.len() {
                if self.level[var(learnt[k])] > self.level[var(learnt[max_i])] {
                    max_i = k;
                }
            }
            learnt.swap(1, max_i);
            self.level[var(learnt[1])]
        };
        (learnt, backjump)
    }

    // `l` is implied by other literals of the learnt clause
    fn redundant(&mut self, l: Lit, abstract_levels: u64, cleared: &mut Vec<usize>) -> bool {
        let mut stack = vec![l];
        let top = cleared.len();
        while let Some(p) = stack.pop() {
            let reason = self.reason[var(p)] as usize;
            for k in 1..self.clauses[reason].lits.len() {
                let q = self.clauses[reason].lits[k];
                let v = var(q);
                if self.seen[v] || self.level[v] == 0 {
                    continue;
                }
                if self.reason[v] != NO_REASON
                    && abstract_levels & (1u64 << (self.level[v] & 63)) != 0
                {
                    self.seen[v] = true;
                    stack.push(q);
                    cleared.push(v);
                } else {
                    for v in cleared.drain(top..) {
                        self.seen[v] = false;
                    }
                    return false;
                }
            }
        }
        true
    }

    fn backtrack(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for k in (lim..self.trail.len()).rev() {
            let v = var(self.trail[k]);
            self.phase[v] = self.trail[k] & 1 == 0;
            self.assigns[v] = Value::Unassigned;
            self.reason[v] = NO_REASON;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = lim;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == Value::Unassigned {
                let l = (v as Lit) << 1;
                return Some(if self.phase[v] { l } else { neg(l) });
            }
        }
        None
    }

    fn locked(&self, cref: ClauseRef) -> bool {
        let first = self.clauses[cref as usize].lits[0];
        self.reason[var(first)] == cref && self.value(first) == Value::True
    }

    fn reduce_learnts(&mut self) {
        let mut learnts = std::mem::take(&mut self.learnts);
        learnts.sort_by(|&a, &b| {
            self.clauses[a as usize]
                .activity
                .total_cmp(&self.clauses[b as usize].activity)
        });
        let half = learnts.len() / 2;
        let mut kept = Vec::with_capacity(learnts.len());
        for (i, cref) in learnts.into_iter().enumerate() {
            let c = &self.clauses[cref as usize];
            if i < half && c.lits.len() > 2 && !self.locked(cref) {
                let c = &mut self.clauses[cref as usize];
                c.deleted = true;
                c.lits = Vec::new();
            } else {
                kept.push(cref);
            }
        }
        self.learnts = kept;
        for ws in &mut self.watches {
            ws.retain(|w| !self.clauses[w.clause as usize].deleted);
        }
    }

    pub fn solve(&mut self, budget: &Budget) -> Result<SatOutcome, SatError> {
        if self.unsat {
            return Ok(SatOutcome::Unsat);
        }
        let start_conflicts = self.stats.conflicts;
        let mut restart = 0u32;
        loop {
            let limit = (luby(restart) * 100.0) as u64;
            match self.search(limit, budget, start_conflicts)? {
                Some(outcome) => return Ok(outcome),
                None => {
                    restart += 1;
                    self.stats.restarts += 1;
                    self.backtrack(0);
                    self.max_learnts *= 1.05;
                }
            }
        }
    }

    fn search(
        &mut self,
        conflict_limit: u64,
        budget: &Budget,
        start_conflicts: u64,
    ) -> Result<Option<SatOutcome>, SatError> {
        let mut conflicts = 0u64;
        loop {
            let conflict = self.propagate();
            if conflict != NO_REASON {
                self.stats.conflicts += 1;
                conflicts += 1;
                if self.decision_level() == 0 {
                    self.unsat = true;
                    return Ok(Some(SatOutcome::Unsat));
                }
                let (learnt, backjump) = self.analyze(conflict);
                self.backtrack(backjump);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let first = learnt[0];
                    let cref = self.attach(learnt, true);
                    self.bump_clause(cref);
                    self.enqueue(first, cref);
                }
                self.var_inc /= 0.95;
                self.clause_inc /= 0.999;

                let used = self.stats.conflicts - start_conflicts;
                if budget.max_conflicts.is_some_and(|m| used >= m) {
                    return Err(SatError::Timeout);
                }
                if used % 256 == 0 && budget.expired() {
                    return Err(SatError::Timeout);
                }
            } else {
                if conflicts >= conflict_limit {
                    return Ok(None);
                }
                if self.learnts.len() as f64 - self.trail.len() as f64 >= self.max_learnts {
                    self.reduce_learnts();
                }
                match self.pick_branch() {
                    None => return Ok(Some(SatOutcome::Sat(self.model()))),
                    Some(l) => {
                        self.stats.decisions += 1;
                        if self.stats.decisions % 4096 == 0 && budget.expired() {
                            return Err(SatError::Timeout);
                        }
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, NO_REASON);
                    }
                }
            }
        }
    }

    fn model(&self) -> Model {
        Model::new(
            (0..self.num_vars)
                .map(|v| self.assigns[v] == Value::True)
                .collect(),
        )
    }
}

/// Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(mut x: u32) -> f64 {
    let mut size = 1u32;
    let mut seq = 0u32;
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    2f64.powi(seq as i32)
}

/// Solves `cnf` with a fresh solver and checks any model before returning it.
pub fn solve_embedded(cnf: &Cnf, budget: &Budget) -> Result<SatOutcome, SatError> {
    let outcome = CdclSolver::new(cnf).solve(budget)?;
    if let SatOutcome::Sat(model) = &outcome {
        model.check(cnf)?;
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(vars: usize, clauses: Vec<Vec<i32>>) -> SatOutcome {
        let cnf = Cnf::from_clauses(vars, clauses).unwrap();
        solve_embedded(&cnf, &Budget::unlimited()).unwrap()
    }

    #[test]
    fn luby_prefix() {
        let got: Vec<f64> = (0..9).map(luby).collect();
        assert_eq!(got, vec![1., 1., 2., 1., 1., 2., 4., 1., 1.]);
    }

    #[test]
    fn unit_clause() {
        match solve(1, vec![vec![1]]) {
            SatOutcome::Sat(m) => assert!(m.value(1)),
            SatOutcome::Unsat => panic!("expected SAT"),
        }
    }

    #[test]
    fn contradiction() {
        assert_eq!(solve(1, vec![vec![1], vec![-1]]), SatOutcome::Unsat);
    }

    #[test]
    fn empty_formula_is_sat() {
        assert!(matches!(solve(3, vec![]), SatOutcome::Sat(_)));
    }

    // pigeons into fewer holes
    fn pigeonhole(holes: usize) -> (usize, Vec<Vec<i32>>) {
        let pigeons = holes + 1;
        let x = |p: usize, h: usize| (p * holes + h + 1) as i32;
        let mut clauses = Vec::new();
        for p in 0..pigeons {
            clauses.push((0..holes).map(|h| x(p, h)).collect());
        }
        for h in 0..holes {
            for p in 0..pigeons {
                for q in p + 1..pigeons {
                    clauses.push(vec![-x(p, h), -x(q, h)]);
                }
            }
        }
        (pigeons * holes, clauses)
    }

    #[test]
    fn pigeonhole_is_unsat() {
        for holes in 1..=6 {
            let (vars, clauses) = pigeonhole(holes);
            assert_eq!(solve(vars, clauses), SatOutcome::Unsat, "{holes} holes");
        }
    }

    #[test]
    fn conflict_budget_times_out() {
        let (vars, clauses) = pigeonhole(8);
        let cnf = Cnf::from_clauses(vars, clauses).unwrap();
        let budget = Budget {
            deadline: None,
            max_conflicts: Some(10),
        };
        assert!(matches!(
            solve_embedded(&cnf, &budget),
            Err(SatError::Timeout)
        ));
    }
}
