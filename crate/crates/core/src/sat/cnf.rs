use crate::error::SatError;

/// A clause set over variables `1..=num_vars`; literal `-v` is the negation
/// of variable `v`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(num_vars: usize) -> Self {
        Cnf {
            num_vars,
            clauses: Vec::new(),
        }
    }

    /// Validating constructor.
    pub fn from_clauses(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self, SatError> {
        let mut cnf = Cnf::new(num_vars);
        for clause in clauses {
            cnf.try_add(clause)?;
        }
        Ok(cnf)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Grows the variable range if needed.
    pub fn reserve_vars(&mut self, num_vars: usize) {
        self.num_vars = self.num_vars.max(num_vars);
    }

    pub fn try_add(&mut self, clause: Vec<i32>) -> Result<(), SatError> {
        if clause.is_empty() {
            return Err(SatError::InvalidCnf("empty clause".into()));
        }
        for &lit in &clause {
            if lit == 0 {
                return Err(SatError::InvalidCnf("literal 0 inside a clause".into()));
            }
            if lit.unsigned_abs() as usize > self.num_vars {
                return Err(SatError::InvalidCnf(format!(
                    "literal {lit} exceeds {} variables",
                    self.num_vars
                )));
            }
        }
        self.clauses.push(clause);
        Ok(())
    }

    /// Panics on an invalid clause; for builders that know their indices.
    pub fn add(&mut self, clause: Vec<i32>) {
        self.try_add(clause).expect("valid clause");
    }

    /// Index of the first clause falsified by `model`, if any.
    pub fn first_violated(&self, model: &Model) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|&lit| model.lit(lit)))
    }
}

/// Total assignment; `values[v - 1]` is the value of variable `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn new(values: Vec<bool>) -> Self {
        Model { values }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, var: usize) -> bool {
        self.values[var - 1]
    }

    pub fn lit(&self, lit: i32) -> bool {
        let v = self.values[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            v
        } else {
            !v
        }
    }

    /// Errors unless every clause is satisfied.
    pub fn check(&self, cnf: &Cnf) -> Result<(), SatError> {
        if self.values.len() < cnf.num_vars() {
            return Err(SatError::BadOutput(format!(
                "model covers {} of {} variables",
                self.values.len(),
                cnf.num_vars()
            )));
        }
        match cnf.first_violated(self) {
            Some(clause) => Err(SatError::ModelRejected { clause }),
            None => Ok(()),
        }
    }
}
