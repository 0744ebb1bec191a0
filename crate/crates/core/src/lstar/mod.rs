//! The base arithmetic language: syntax, parsing, evaluation, ranking.

pub mod ast;
pub mod eval;
pub mod mult;
pub mod parse;
pub mod rank;

pub use ast::{Formula, GroundingFn, Rel, Term};
pub use eval::{apply_grounding, eval_sentence, eval_term, EvalError, OracleTable, Truth};
pub use parse::{parse_any, parse_formula, parse_sentence, parse_term, ParseError, Parsed};
pub use rank::{is_rank1, rank, Rank};
