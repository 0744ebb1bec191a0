//! Tableau proofs: trees, apparatus filters, checking, search, chains,
//! composition, and the proof file format.

pub mod apparatus;
pub mod chain;
pub mod check;
pub mod compose;
mod planner;
pub(crate) use planner::match_one_var;
pub mod proof_file;
pub mod search;
pub mod tree;

pub use apparatus::{lem_instance, lem_kernel, Apparatus, ZFilter};
pub use chain::{check_chain, Tab1Chain};
pub use check::{check, falsum, Verdict};
pub use compose::{compose_linear_sum, ComposeError};
pub use proof_file::{parse_proof_file, write_proof_file, ApparatusSpec, ProofFile};
pub use search::{search, SearchBudget, SearchOutcome};
pub use tree::{Closure, Justification, Node, NodeId, ProofSize, ProofTree, RuleAux, RuleId};
