//! Numbering, compact numerals, growth sequences and self-reference.

pub mod code;
pub mod diag;
pub mod growth;
pub mod numeral;

pub use code::{decode, decode_formula, encode, encode_formula, encode_hilbert, encode_proof, encode_term, CodedAst, DecodeError};
pub use diag::{diagonalize, register_sub_oracle, standard_oracles, DiagError, Diagonalized, SUB_ORACLE};
pub use growth::{growth, growth_capped, growth_sentence, GrowthKind, GrowthSeq};
pub use numeral::{nat_term, numeral, numeral_value, NumeralTerm};
