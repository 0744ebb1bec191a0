//! Fixed-point construction via a substitution oracle.
//!
//! `sub(a, b)` is an oracle function symbol whose executable semantics is:
//! decode `a` to a formula with exactly one free variable, replace that
//! variable by the compact numeral of `b`, and return the code of the
//! result (0 on any failure, to keep the oracle total). Diagonalizing a
//! one-free-variable template `T(x)` produces the sentence
//! `S = T(sub(d, d))` with `d` the code of `T(sub(x, x))`; the embedded
//! `sub` term then evaluates to the code of `S` itself.

use super::code::{decode, encode_formula, CodedAst};
use super::nat_term;
use crate::lstar::ast::{Formula, Term};
use crate::lstar::eval::OracleTable;
use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

/// Name of the substitution oracle function symbol.
pub const SUB_ORACLE: &str = "sub";

/// Executable semantics of `sub`, usable directly or through a table.
pub fn sub_semantics(args: &[BigUint]) -> BigUint {
    let (a, b) = (&args[0], &args[1]);
    let formula = match decode(a) {
        Ok(CodedAst::Formula(f)) => f,
        _ => return BigUint::zero(),
    };
    let free = formula.free_vars();
    if free.len() != 1 {
        return BigUint::zero();
    }
    let var = free.into_iter().next().unwrap();
    let substituted = formula.subst_var(&var, &nat_term(b));
    encode_formula(&substituted)
}

/// Register `sub` into an oracle table.
pub fn register_sub_oracle(table: &mut OracleTable) {
    table.register_fn(SUB_ORACLE, 2, sub_semantics);
}

/// A fresh table with the substitution oracle registered.
pub fn standard_oracles() -> OracleTable {
    let mut t = OracleTable::new();
    register_sub_oracle(&mut t);
    t
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DiagError {
    #[error("template must have exactly one free variable, found {0}")]
    FreeVariableCount(usize),
}

/// Result of diagonalization: the sentence plus the embedded term that
/// evaluates to the sentence's own code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagonalized {
    pub sentence: Formula,
    pub self_code_term: Term,
}

/// Close the self-reference loop over a one-free-variable template.
pub fn diagonalize(template: &Formula) -> Result<Diagonalized, DiagError> {
    let free = template.free_vars();
    if free.len() != 1 {
        return Err(DiagError::FreeVariableCount(free.len()));
    }
    let var = free.into_iter().next().unwrap();
    let self_applied = template.subst_var(
        &var,
        &Term::OracleApp(
            SUB_ORACLE.to_string(),
            vec![Term::Var(var.clone()), Term::Var(var.clone())],
        ),
    );
    let diag_code = encode_formula(&self_applied);
    let code_numeral = nat_term(&diag_code);
    let self_code_term = Term::OracleApp(
        SUB_ORACLE.to_string(),
        vec![code_numeral.clone(), code_numeral],
    );
    let sentence = template.subst_var(&var, &self_code_term);
    Ok(Diagonalized {
        sentence,
        self_code_term,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::eval::eval_term;
    use crate::lstar::parse::parse_formula;

    #[test]
    fn fixed_point_for_identity_template() {
        let template = parse_formula("(= x x)").unwrap();
        let diag = diagonalize(&template).unwrap();
        assert!(diag.sentence.is_sentence());
        let table = standard_oracles();
        let embedded = eval_term(&diag.self_code_term, &table).unwrap();
        assert_eq!(embedded, encode_formula(&diag.sentence));
    }

    #[test]
    fn diagonalization_is_deterministic() {
        let template = parse_formula("(leq x (add x 1))").unwrap();
        let a = diagonalize(&template).unwrap();
        let b = diagonalize(&template).unwrap();
        assert_eq!(a.sentence, b.sentence);
    }

    #[test]
    fn rejects_wrong_free_variable_count() {
        let closed = parse_formula("(= 0 0)").unwrap();
        assert_eq!(
            diagonalize(&closed).unwrap_err(),
            DiagError::FreeVariableCount(0)
        );
        let two = parse_formula("(= x y)").unwrap();
        assert_eq!(
            diagonalize(&two).unwrap_err(),
            DiagError::FreeVariableCount(2)
        );
    }

    #[test]
    fn sub_oracle_is_total_on_junk() {
        assert_eq!(
            sub_semantics(&[BigUint::zero(), BigUint::zero()]),
            BigUint::zero()
        );
    }
}
