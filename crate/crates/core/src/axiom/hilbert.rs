//! A minimal Hilbert-Frege proof checker.
//!
//! Lines are justified as basis axioms, instances of four logical axiom
//! schemas, or modus ponens over earlier lines. The schemas: all
//! propositional tautologies (decided by truth table over the opaque
//! non-propositional parts), universal instantiation with a ground term,
//! distribution of a universal over an implication, and vacuous
//! generalization. Checking only; there is no Hilbert-style search.

use crate::lstar::ast::Formula;
use crate::lstar::parse::{self, ParseError, SExpr};
use crate::tableau::match_one_var;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HilbertJust {
    BasisAxiom(usize),
    Tautology,
    UnivInst,
    UnivDist,
    VacuousGen,
    Mp(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertLine {
    pub formula: Formula,
    pub just: HilbertJust,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HilbertProof {
    pub lines: Vec<HilbertLine>,
}

/// Check a proof of `theorem` from `axioms`. Returns a diagnostic naming
/// the first bad line on failure.
pub fn check_hilbert(
    proof: &HilbertProof,
    theorem: &Formula,
    axioms: &[Formula],
) -> Result<(), String> {
    if proof.lines.is_empty() {
        return Err("empty proof".into());
    }
    for (i, line) in proof.lines.iter().enumerate() {
        let ok = match &line.just {
            HilbertJust::BasisAxiom(k) => axioms.get(*k) == Some(&line.formula),
            HilbertJust::Tautology => is_tautology(&line.formula),
            HilbertJust::UnivInst => is_univ_inst(&line.formula),
            HilbertJust::UnivDist => is_univ_dist(&line.formula),
            HilbertJust::VacuousGen => is_vacuous_gen(&line.formula),
            HilbertJust::Mp(a, b) => {
                if *a >= i || *b >= i {
                    false
                } else {
                    match &proof.lines[*b].formula {
                        Formula::Implies(x, y) => {
                            **x == proof.lines[*a].formula && **y == line.formula
                        }
                        _ => false,
                    }
                }
            }
        };
        if !ok {
            return Err(format!("line {i}: justification does not check"));
        }
    }
    if &proof.lines.last().unwrap().formula != theorem {
        return Err("last line is not the stated theorem".into());
    }
    Ok(())
}

const TAUT_ATOM_LIMIT: usize = 16;

/// Truth-table tautology over the propositional skeleton: atoms and
/// quantified subformulas are opaque leaves.
pub fn is_tautology(f: &Formula) -> bool {
    let mut leaves = Vec::new();
    collect_leaves(f, &mut leaves);
    if leaves.len() > TAUT_ATOM_LIMIT {
        return false;
    }
    let n = leaves.len();
    let index: HashMap<&Formula, usize> = leaves.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    for mask in 0u32..(1 << n) {
        if !eval_skeleton(f, &index, mask) {
            return false;
        }
    }
    true
}

fn collect_leaves<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::Not(g) => collect_leaves(g, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            collect_leaves(a, out);
            collect_leaves(b, out);
        }
        leaf => {
            if !out.contains(&leaf) {
                out.push(leaf);
            }
        }
    }
}

fn eval_skeleton(f: &Formula, index: &HashMap<&Formula, usize>, mask: u32) -> bool {
    match f {
        Formula::Not(g) => !eval_skeleton(g, index, mask),
        Formula::And(a, b) => eval_skeleton(a, index, mask) && eval_skeleton(b, index, mask),
        Formula::Or(a, b) => eval_skeleton(a, index, mask) || eval_skeleton(b, index, mask),
        Formula::Implies(a, b) => !eval_skeleton(a, index, mask) || eval_skeleton(b, index, mask),
        leaf => mask & (1 << index[leaf]) != 0,
    }
}

/// `forall x A -> A[x := t]` for some ground `t` (or `A` itself when `x`
/// does not occur).
fn is_univ_inst(f: &Formula) -> bool {
    let (a, b) = match f {
        Formula::Implies(a, b) => (a, b),
        _ => return false,
    };
    let (x, body) = match &**a {
        Formula::Forall(x, body) => (x, body),
        _ => return false,
    };
    if **body == **b {
        return true;
    }
    match match_one_var(body, x, b) {
        Some(t) => t.is_ground(),
        None => false,
    }
}

/// `forall x (A -> B) -> (forall x A -> forall x B)`
fn is_univ_dist(f: &Formula) -> bool {
    let (lhs, rhs) = match f {
        Formula::Implies(a, b) => (a, b),
        _ => return false,
    };
    let (x, ab) = match &**lhs {
        Formula::Forall(x, ab) => (x, ab),
        _ => return false,
    };
    let (a, b) = match &**ab {
        Formula::Implies(a, b) => (a, b),
        _ => return false,
    };
    match &**rhs {
        Formula::Implies(fa, fb) => {
            matches!(&**fa, Formula::Forall(x2, a2) if x2 == x && **a2 == **a)
                && matches!(&**fb, Formula::Forall(x2, b2) if x2 == x && **b2 == **b)
        }
        _ => false,
    }
}

/// `A -> forall x A` where `x` is not free in `A`.
fn is_vacuous_gen(f: &Formula) -> bool {
    match f {
        Formula::Implies(a, b) => match &**b {
            Formula::Forall(x, inner) => **inner == **a && !a.free_vars().contains(x),
            _ => false,
        },
        _ => false,
    }
}

// --- canonical serialization, for numbering proofs ---

impl HilbertProof {
    pub fn to_canonical_sexpr(&self) -> String {
        let mut out = String::from("(hproof");
        for line in &self.lines {
            let just = match &line.just {
                HilbertJust::BasisAxiom(k) => format!("(basisaxiom {k})"),
                HilbertJust::Tautology => "(taut)".into(),
                HilbertJust::UnivInst => "(univinst)".into(),
                HilbertJust::UnivDist => "(univdist)".into(),
                HilbertJust::VacuousGen => "(vacgen)".into(),
                HilbertJust::Mp(a, b) => format!("(mp {a} {b})"),
            };
            out.push_str(&format!(" (line {just} {})", line.formula));
        }
        out.push(')');
        out
    }

    pub fn from_canonical_sexpr(text: &str) -> Result<HilbertProof, ParseError> {
        let e = parse::read_single(text)?;
        let items = e
            .as_list()
            .ok_or_else(|| ParseError::new(e.pos(), "expected (hproof ...)"))?;
        if items.first().and_then(SExpr::as_sym) != Some("hproof") {
            return Err(ParseError::new(e.pos(), "expected (hproof ...)"));
        }
        let mut proof = HilbertProof::default();
        for item in &items[1..] {
            let parts = item
                .as_list()
                .filter(|p| p.len() == 3 && p[0].as_sym() == Some("line"))
                .ok_or_else(|| ParseError::new(item.pos(), "expected (line just formula)"))?;
            let jparts = parts[1]
                .as_list()
                .ok_or_else(|| ParseError::new(parts[1].pos(), "expected a justification"))?;
            let num = |e: &SExpr| -> Result<usize, ParseError> {
                e.as_sym()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| ParseError::new(e.pos(), "expected a number"))
            };
            let just = match (jparts.first().and_then(SExpr::as_sym), jparts.len()) {
                (Some("basisaxiom"), 2) => HilbertJust::BasisAxiom(num(&jparts[1])?),
                (Some("taut"), 1) => HilbertJust::Tautology,
                (Some("univinst"), 1) => HilbertJust::UnivInst,
                (Some("univdist"), 1) => HilbertJust::UnivDist,
                (Some("vacgen"), 1) => HilbertJust::VacuousGen,
                (Some("mp"), 3) => HilbertJust::Mp(num(&jparts[1])?, num(&jparts[2])?),
                _ => return Err(ParseError::new(parts[1].pos(), "unknown justification")),
            };
            let formula = parse::formula_from_sexpr(&parts[2])?;
            proof.lines.push(HilbertLine { formula, just });
        }
        Ok(proof)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::parse::parse_formula;

    #[test]
    fn tautologies() {
        assert!(is_tautology(
            &parse_formula("(or (= 0 0) (not (= 0 0)))").unwrap()
        ));
        assert!(is_tautology(
            &parse_formula("(implies (= 0 1) (= 0 1))").unwrap()
        ));
        assert!(!is_tautology(&parse_formula("(= 0 0)").unwrap()));
    }

    #[test]
    fn one_line_axiom_proof_checks() {
        let ax = parse_formula("(leq 0 1)").unwrap();
        let proof = HilbertProof {
            lines: vec![HilbertLine {
                formula: ax.clone(),
                just: HilbertJust::BasisAxiom(0),
            }],
        };
        assert!(check_hilbert(&proof, &ax, &[ax.clone()]).is_ok());
    }

    #[test]
    fn modus_ponens_checks() {
        let a = parse_formula("(= 0 0)").unwrap();
        let ab = parse_formula("(implies (= 0 0) (leq 0 0))").unwrap();
        let b = parse_formula("(leq 0 0)").unwrap();
        let axioms = vec![a.clone(), ab.clone()];
        let proof = HilbertProof {
            lines: vec![
                HilbertLine {
                    formula: a,
                    just: HilbertJust::BasisAxiom(0),
                },
                HilbertLine {
                    formula: ab,
                    just: HilbertJust::BasisAxiom(1),
                },
                HilbertLine {
                    formula: b.clone(),
                    just: HilbertJust::Mp(0, 1),
                },
            ],
        };
        assert!(check_hilbert(&proof, &b, &axioms).is_ok());
        let wrong = check_hilbert(&proof, &parse_formula("(= 1 1)").unwrap(), &axioms);
        assert!(wrong.is_err());
    }

    #[test]
    fn universal_instantiation_schema() {
        assert!(is_univ_inst(
            &parse_formula("(implies (forall x (= x x)) (= (add 0 1) (add 0 1)))").unwrap()
        ));
        assert!(!is_univ_inst(
            &parse_formula("(implies (forall x (= x x)) (= 0 1))").unwrap()
        ));
    }

    #[test]
    fn serialization_round_trips() {
        let p = HilbertProof {
            lines: vec![HilbertLine {
                formula: parse_formula("(or (= 0 0) (not (= 0 0)))").unwrap(),
                just: HilbertJust::Tautology,
            }],
        };
        let text = p.to_canonical_sexpr();
        assert_eq!(HilbertProof::from_canonical_sexpr(&text).unwrap(), p);
    }
}
