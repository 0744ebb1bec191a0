//! The self-referential consistency sentence over a basis.
//!
//! The sentence asserts: no proof of `0 = 1` exists from the basis
//! extended with this very sentence. Self-reference is closed with the
//! substitution oracle; the proof relation is an oracle predicate whose
//! first argument carries the sentence's own code, so its semantics can
//! extend the captured basis with the sentence it is asked about.

use super::basis::AxiomBasis;
use crate::godel::{decode, diagonalize, encode_formula, nat_term, CodedAst, DiagError};
use crate::lstar::ast::{Formula, Term};
use crate::tableau::{check, falsum, Apparatus, Verdict};
use sha2::{Digest, Sha256};

/// Short stable fingerprint of a basis-and-apparatus pair, used to give
/// each proof oracle a distinct symbol name.
pub fn fingerprint(axioms: &[Formula], apparatus: &Apparatus) -> String {
    let mut hasher = Sha256::new();
    hasher.update(apparatus.name().as_bytes());
    for a in axioms {
        hasher.update(a.to_string().as_bytes());
        hasher.update(b"\n");
    }
    let digest = hasher.finalize();
    digest[..4].iter().map(|b| format!("{b:02x}")).collect()
}

/// The apparatus used when validating coded proofs. Chains are not coded
/// objects, so the chain apparatus falls back to plain tableau here.
fn oracle_apparatus(app: &Apparatus) -> Apparatus {
    match app {
        Apparatus::Tab1 => Apparatus::Tab,
        other => other.clone(),
    }
}

/// Build the sentence and register its proof oracle into the basis.
///
/// The registered predicate `prf_<fp>(s, a, b)` holds when `b` codes a
/// proof tree that validates theorem `a` from the captured axioms plus
/// the sentence coded by `s`, under the given apparatus.
pub fn build_selfref(basis: &mut AxiomBasis, apparatus: &Apparatus) -> Result<Formula, DiagError> {
    let fp = fingerprint(basis.axioms(), apparatus);
    let sym = format!("prf_{fp}");
    let falsum_code = nat_term(&encode_formula(&falsum()));
    let template = Formula::forall(
        "p",
        Formula::not(Formula::oracle(
            sym.clone(),
            vec![Term::var("x"), falsum_code, Term::var("p")],
        )),
    );
    let diag = diagonalize(&template)?;

    let captured: Vec<Formula> = basis.axioms().to_vec();
    let app = oracle_apparatus(apparatus);
    basis.oracles_mut().register_pred(sym, 3, move |args| {
        let own = match decode(&args[0]) {
            Ok(CodedAst::Formula(f)) => f,
            _ => return false,
        };
        let theorem = match decode(&args[1]) {
            Ok(CodedAst::Formula(f)) => f,
            _ => return false,
        };
        let proof = match decode(&args[2]) {
            Ok(CodedAst::Proof(p)) => p,
            _ => return false,
        };
        let mut extended = captured.clone();
        extended.push(own);
        matches!(check(&proof, &theorem, &extended, &app), Verdict::Valid)
    });
    Ok(diag.sentence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axiom::basis::AxiomTag;
    use crate::godel::standard_oracles;
    use crate::lstar::eval::eval_term;
    use crate::lstar::parse::parse_formula;
    use crate::lstar::rank::{rank, Rank};
    use crate::lstar::Rel;

    fn small_basis() -> AxiomBasis {
        let mut b = AxiomBasis::with_oracles("small", standard_oracles());
        b.push(parse_formula("(= 0 0)").unwrap(), AxiomTag::User)
            .unwrap();
        b
    }

    #[test]
    fn sentence_has_the_fixed_point_property() {
        let mut basis = small_basis();
        let s = build_selfref(&mut basis, &Apparatus::Tab).unwrap();
        assert!(s.is_sentence());
        // the embedded substitution term evaluates to the sentence's code
        let sub_terms: Vec<Term> = s
            .terms()
            .iter()
            .flat_map(|t| {
                let mut subs = Vec::new();
                t.subterms(&mut subs);
                subs
            })
            .filter(|t| matches!(t, Term::OracleApp(n, _) if n == "sub"))
            .collect();
        assert!(!sub_terms.is_empty());
        let value = eval_term(&sub_terms[0], basis.oracles()).unwrap();
        assert_eq!(value, encode_formula(&s));
    }

    #[test]
    fn sentence_is_rank_pi1() {
        let mut basis = small_basis();
        let s = build_selfref(&mut basis, &Apparatus::Tab).unwrap();
        assert_eq!(rank(&s), Rank::Pi(1));
    }

    #[test]
    fn matrix_is_a_negated_proof_atom() {
        let mut basis = small_basis();
        let s = build_selfref(&mut basis, &Apparatus::Tab).unwrap();
        match &s {
            Formula::Forall(_, body) => match &**body {
                Formula::Not(inner) => {
                    assert!(matches!(&**inner, Formula::Atom(Rel::Oracle(n), _) if n.starts_with("prf_")))
                }
                other => panic!("unexpected matrix {other}"),
            },
            other => panic!("unexpected shape {other}"),
        }
    }

    #[test]
    fn oracle_accepts_exactly_checkable_proofs() {
        use crate::godel::{encode_formula, encode_proof};
        use crate::tableau::{search, SearchBudget, SearchOutcome};
        let mut basis = small_basis();
        let s = build_selfref(&mut basis, &Apparatus::Tab).unwrap();
        let own_code = encode_formula(&s);
        // a proof of the basis axiom from the extended basis
        let goal = parse_formula("(= 0 0)").unwrap();
        let mut extended = basis.axioms().to_vec();
        extended.push(s.clone());
        let proof = match search(
            &goal,
            &extended,
            &Apparatus::Tab,
            &SearchBudget::default(),
            basis.oracles(),
        ) {
            SearchOutcome::Found(p) => p,
            SearchOutcome::Exhausted => panic!("no proof"),
        };
        let sym = match &s {
            Formula::Forall(_, body) => match &**body {
                Formula::Not(inner) => match &**inner {
                    Formula::Atom(Rel::Oracle(n), _) => n.clone(),
                    _ => unreachable!(),
                },
                _ => unreachable!(),
            },
            _ => unreachable!(),
        };
        let table = basis.oracles();
        let accepted = table
            .eval_pred(
                &sym,
                &[own_code.clone(), encode_formula(&goal), encode_proof(&proof)],
            )
            .unwrap();
        assert!(accepted);
        // a proof of 0 = 1 does not exist, so a mismatched code is rejected
        let rejected = table
            .eval_pred(
                &sym,
                &[own_code, encode_formula(&falsum()), encode_proof(&proof)],
            )
            .unwrap();
        assert!(!rejected);
    }
}
