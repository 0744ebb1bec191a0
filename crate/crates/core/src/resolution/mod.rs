//! Ground clausal form and resolution refutation.

pub mod cnf;
pub mod engine;
pub mod formats;

use crate::lstar::ast::Formula;
use std::collections::BTreeSet;
use std::fmt;

pub type VarId = u32;

/// A signed propositional variable standing for a ground atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: VarId,
    pub pos: bool,
}

impl Lit {
    pub fn pos(var: VarId) -> Lit {
        Lit { var, pos: true }
    }

    pub fn neg(var: VarId) -> Lit {
        Lit { var, pos: false }
    }

    pub fn complement(self) -> Lit {
        Lit {
            var: self.var,
            pos: !self.pos,
        }
    }

    /// DIMACS-style signed integer.
    pub fn code(self) -> i64 {
        let v = i64::from(self.var) + 1;
        if self.pos {
            v
        } else {
            -v
        }
    }

    pub fn from_code(code: i64) -> Option<Lit> {
        if code == 0 {
            return None;
        }
        let var = u32::try_from(code.unsigned_abs() - 1).ok()?;
        Some(Lit {
            var,
            pos: code > 0,
        })
    }
}

/// A clause under set semantics: no duplicate literals; the empty clause
/// is the refutation witness.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause(pub BTreeSet<Lit>);

impl Clause {
    pub fn from_lits(lits: impl IntoIterator<Item = Lit>) -> Clause {
        Clause(lits.into_iter().collect())
    }

    pub fn empty() -> Clause {
        Clause::default()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.0.contains(&l)
    }

    /// A clause holding both polarities of some variable.
    pub fn is_tautology(&self) -> bool {
        self.0.iter().any(|l| self.0.contains(&l.complement()))
    }

    pub fn subsumes(&self, other: &Clause) -> bool {
        self.0.is_subset(&other.0)
    }

    /// The excluded-middle clause for one variable.
    pub fn lem(var: VarId) -> Clause {
        Clause::from_lits([Lit::pos(var), Lit::neg(var)])
    }

    /// Binary resolution on `pivot`: requires the positive pivot here and
    /// the negative pivot in `other`.
    pub fn resolve(&self, other: &Clause, pivot: VarId) -> Option<Clause> {
        if !self.contains(Lit::pos(pivot)) || !other.contains(Lit::neg(pivot)) {
            return None;
        }
        let mut lits = self.0.clone();
        lits.remove(&Lit::pos(pivot));
        for l in &other.0 {
            if *l != Lit::neg(pivot) {
                lits.insert(*l);
            }
        }
        Some(Clause(lits))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{} ", l.code())?;
        }
        write!(f, "0")
    }
}

/// Maps propositional variables to the ground sentences they stand for.
/// Definition variables introduced by clausification get synthetic atoms.
#[derive(Debug, Clone, Default)]
pub struct AtomTable {
    formulas: Vec<Formula>,
    index: std::collections::HashMap<Formula, VarId>,
}

impl AtomTable {
    pub fn new() -> AtomTable {
        AtomTable::default()
    }

    pub fn var_for(&mut self, atom: &Formula) -> VarId {
        if let Some(&v) = self.index.get(atom) {
            return v;
        }
        let v = self.formulas.len() as VarId;
        self.formulas.push(atom.clone());
        self.index.insert(atom.clone(), v);
        v
    }

    pub fn fresh_definition(&mut self) -> VarId {
        let v = self.formulas.len() as VarId;
        let marker = Formula::oracle(format!("defatom_{v}"), vec![]);
        self.formulas.push(marker.clone());
        self.index.insert(marker, v);
        v
    }

    pub fn formula(&self, v: VarId) -> Option<&Formula> {
        self.formulas.get(v as usize)
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResApparatus {
    Res,
    /// Admits excluded-middle clauses as proof inputs.
    Xres,
}

impl ResApparatus {
    pub fn name(self) -> &'static str {
        match self {
            ResApparatus::Res => "res",
            ResApparatus::Xres => "xres",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResJust {
    Input(usize),
    /// An excluded-middle clause `{v, not v}`; admitted only under the
    /// extended apparatus.
    LemInput,
    Resolve {
        left: usize,
        right: usize,
        pivot: VarId,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResStep {
    pub clause: Clause,
    pub just: ResJust,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResProof {
    pub steps: Vec<ResStep>,
}

pub use cnf::{clausify, ClausifyError};
pub use engine::{res_check, res_search, ResOutcome};
