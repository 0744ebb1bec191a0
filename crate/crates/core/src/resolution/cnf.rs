//! Structural clausification of ground quantifier-free sentences.
//!
//! Each compound subformula gets a fresh definition variable and the
//! defining clauses of its connective; the output is equisatisfiable and
//! linear in the input size.

use super::{AtomTable, Clause, Lit};
use crate::lstar::ast::Formula;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClausifyError {
    #[error("quantified input; ground resolution takes quantifier-free sentences")]
    Quantified,
    #[error("input has free variables")]
    Open,
}

/// Clausify a sentence. Atoms are entered into the table as themselves;
/// compound structure is named apart.
pub fn clausify(s: &Formula, table: &mut AtomTable) -> Result<Vec<Clause>, ClausifyError> {
    if !s.is_sentence() {
        return Err(ClausifyError::Open);
    }
    let mut clauses = Vec::new();
    let root = define(s, table, &mut clauses)?;
    clauses.push(Clause::from_lits([root]));
    Ok(clauses)
}

/// Returns the literal equivalent to the formula, emitting definitional
/// clauses as needed.
fn define(
    f: &Formula,
    table: &mut AtomTable,
    out: &mut Vec<Clause>,
) -> Result<Lit, ClausifyError> {
    match f {
        Formula::Atom(..) => Ok(Lit::pos(table.var_for(f))),
        Formula::Not(g) => Ok(define(g, table, out)?.complement()),
        Formula::And(a, b) => {
            let la = define(a, table, out)?;
            let lb = define(b, table, out)?;
            let d = Lit::pos(table.fresh_definition());
            // d <-> la and lb
            out.push(Clause::from_lits([d.complement(), la]));
            out.push(Clause::from_lits([d.complement(), lb]));
            out.push(Clause::from_lits([la.complement(), lb.complement(), d]));
            Ok(d)
        }
        Formula::Or(a, b) => {
            let la = define(a, table, out)?;
            let lb = define(b, table, out)?;
            let d = Lit::pos(table.fresh_definition());
            out.push(Clause::from_lits([d.complement(), la, lb]));
            out.push(Clause::from_lits([la.complement(), d]));
            out.push(Clause::from_lits([lb.complement(), d]));
            Ok(d)
        }
        Formula::Implies(a, b) => {
            let la = define(a, table, out)?;
            let lb = define(b, table, out)?;
            let d = Lit::pos(table.fresh_definition());
            out.push(Clause::from_lits([d.complement(), la.complement(), lb]));
            out.push(Clause::from_lits([la, d]));
            out.push(Clause::from_lits([lb.complement(), d]));
            Ok(d)
        }
        Formula::Forall(..)
        | Formula::Exists(..)
        | Formula::BForall(..)
        | Formula::BExists(..) => Err(ClausifyError::Quantified),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::parse::parse_formula;

    /// Independent truth-table satisfiability over the clause set.
    pub(crate) fn clauses_satisfiable(clauses: &[Clause], vars: usize) -> bool {
        assert!(vars <= 20, "truth table oracle capped at 20 variables");
        for mask in 0u64..(1 << vars) {
            let ok = clauses.iter().all(|c| {
                c.0.iter()
                    .any(|l| (mask >> l.var) & 1 == u64::from(l.pos))
            });
            if ok {
                return true;
            }
        }
        clauses.is_empty()
    }

    #[test]
    fn contradiction_clausifies_unsat() {
        let mut table = AtomTable::new();
        let f = parse_formula("(and (= 0 0) (not (= 0 0)))").unwrap();
        let clauses = clausify(&f, &mut table).unwrap();
        assert!(!clauses_satisfiable(&clauses, table.len()));
    }

    #[test]
    fn modus_ponens_shape_is_unsat() {
        let mut table = AtomTable::new();
        let f = parse_formula(
            "(and (and (implies (= 0 0) (= 1 1)) (= 0 0)) (not (= 1 1)))",
        )
        .unwrap();
        let clauses = clausify(&f, &mut table).unwrap();
        assert!(!clauses_satisfiable(&clauses, table.len()));
    }

    #[test]
    fn satisfiable_stays_satisfiable() {
        let mut table = AtomTable::new();
        let f = parse_formula("(or (= 0 0) (= 1 1))").unwrap();
        let clauses = clausify(&f, &mut table).unwrap();
        assert!(clauses_satisfiable(&clauses, table.len()));
    }

    #[test]
    fn quantified_input_is_rejected() {
        let mut table = AtomTable::new();
        let f = parse_formula("(forall x (= x x))").unwrap();
        assert_eq!(clausify(&f, &mut table), Err(ClausifyError::Quantified));
    }
}
