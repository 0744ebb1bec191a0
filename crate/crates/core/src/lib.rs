//! Proof calculus engine for a bounded arithmetic language.
//!
//! The language has two constants, eight function symbols (six of them
//! non-growth), equality and order. On top of it sit: exact evaluation
//! over unbounded naturals; quantifier-rank classification; a numbering
//! of terms, formulas and proofs with a substitution-oracle fixed point;
//! semantic-tableau proof objects with checking, bounded search, rank-1
//! chains and excluded-middle composition; ground resolution; builders
//! for self-verifying axiom bases with consistency probes; and a
//! benchmark harness measuring proof sizes across apparatuses.

pub mod axiom;
pub mod bench;
pub mod godel;
pub mod lstar;
pub mod resolution;
pub mod tableau;

pub use lstar::{Formula, GroundingFn, OracleTable, Rel, Term, Truth};
pub use tableau::{Apparatus, ProofTree, SearchBudget, SearchOutcome, Verdict};
