//! Chains of rank-1 lemmas, each proved by plain tableau from the basis
//! plus the lemmas before it. The final lemma is the chain's goal.

use super::apparatus::Apparatus;
use super::check::{check, Verdict};
use super::tree::ProofTree;
use crate::lstar::ast::Formula;
use crate::lstar::rank::is_rank1;

#[derive(Debug, Clone, PartialEq)]
pub struct Tab1Chain {
    pub pairs: Vec<(ProofTree, Formula)>,
}

impl Tab1Chain {
    pub fn goal(&self) -> Option<&Formula> {
        self.pairs.last().map(|(_, f)| f)
    }
}

/// Validate a chain: every lemma rank-1, every sub-proof a plain tableau
/// proof of its lemma from the basis extended with the earlier lemmas.
pub fn check_chain(chain: &Tab1Chain, axioms: &[Formula]) -> Verdict {
    if chain.pairs.is_empty() {
        return Verdict::Invalid("empty chain".into());
    }
    let mut extended = axioms.to_vec();
    for (i, (proof, lemma)) in chain.pairs.iter().enumerate() {
        let index = i + 1;
        if !lemma.is_sentence() {
            return Verdict::Invalid(format!("lemma at index {index} has free variables"));
        }
        if !is_rank1(lemma) {
            return Verdict::Invalid(format!(
                "rank violation at index {index}: lemma is not rank-1"
            ));
        }
        if let Verdict::Invalid(why) = check(proof, lemma, &extended, &Apparatus::Tab) {
            return Verdict::Invalid(format!("bad sub-proof at index {index}: {why}"));
        }
        extended.push(lemma.clone());
    }
    Verdict::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::eval::OracleTable;
    use crate::lstar::parse::parse_formula;
    use crate::tableau::search::{search, SearchBudget, SearchOutcome};

    fn prove(goal: &Formula, axioms: &[Formula]) -> ProofTree {
        match search(
            goal,
            axioms,
            &Apparatus::Tab,
            &SearchBudget::default(),
            &OracleTable::new(),
        ) {
            SearchOutcome::Found(t) => t,
            SearchOutcome::Exhausted => panic!("no proof of {goal}"),
        }
    }

    #[test]
    fn degenerate_single_lemma_chain() {
        let goal = parse_formula("(leq 0 1)").unwrap();
        let axioms = vec![goal.clone()];
        let chain = Tab1Chain {
            pairs: vec![(prove(&goal, &axioms), goal)],
        };
        assert_eq!(check_chain(&chain, &axioms), Verdict::Valid);
    }

    #[test]
    fn rank_violation_is_reported_with_its_index() {
        let lemma = parse_formula("(forall x (exists z (= (add x 1) z)))").unwrap();
        let axioms = vec![lemma.clone()];
        let chain = Tab1Chain {
            pairs: vec![(prove(&lemma, &axioms), lemma)],
        };
        match check_chain(&chain, &axioms) {
            Verdict::Invalid(d) => assert!(d.contains("rank violation at index 1"), "{d}"),
            Verdict::Valid => panic!("chain should be rejected"),
        }
    }

    #[test]
    fn forward_lemma_reuse() {
        let a = parse_formula("(= 0 0)").unwrap();
        let b = parse_formula("(leq 0 0)").unwrap();
        let c = parse_formula("(leq 1 1)").unwrap();
        let axioms = vec![
            a.clone(),
            parse_formula("(implies (= 0 0) (leq 0 0))").unwrap(),
            parse_formula("(implies (leq 0 0) (leq 1 1))").unwrap(),
        ];
        let p1 = prove(&a, &axioms);
        let mut ext = axioms.clone();
        ext.push(a.clone());
        let p2 = prove(&b, &ext);
        ext.push(b.clone());
        let p3 = prove(&c, &ext);
        let chain = Tab1Chain {
            pairs: vec![(p1, a), (p2, b), (p3, c)],
        };
        assert_eq!(check_chain(&chain, &axioms), Verdict::Valid);
    }
}
