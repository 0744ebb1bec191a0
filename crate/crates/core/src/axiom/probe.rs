//! Level-1 consistency probing.
//!
//! Enumerates small rank-1 sentences in code order and, for each, runs a
//! shallow proof search for the sentence and (only when that succeeds)
//! for its negation. Reporting the first sentence provable together with
//! its negation witnesses an inconsistency; exhausting the enumeration is
//! inconclusive by design, never a consistency proof.

use super::basis::AxiomBasis;
use super::enumerate::enumerate_sentences;
use crate::lstar::ast::Formula;
use crate::lstar::rank::is_rank1;
use crate::tableau::{search, Apparatus, ProofTree, SearchBudget, SearchOutcome};

/// Printed length cap for enumerated candidate sentences.
const PROBE_FRAGMENT_LEN: usize = 22;

/// Per-side search budget: the probe screens for shallow contradictions.
const SCREEN_BUDGET: SearchBudget = SearchBudget {
    max_nodes: 400,
    max_depth: 2,
};

#[derive(Debug, Clone, PartialEq)]
pub enum ProbeOutcome {
    /// No contradictory pair surfaced; explicitly inconclusive.
    NoPairFound,
    PairFound {
        sentence: Formula,
        proof_positive: Box<ProofTree>,
        proof_negative: Box<ProofTree>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport {
    pub outcome: ProbeOutcome,
    pub sentences_examined: usize,
    pub budget: usize,
}

impl ProbeReport {
    pub fn found_pair(&self) -> bool {
        matches!(self.outcome, ProbeOutcome::PairFound { .. })
    }
}

/// Probe for a level-1 violation: a rank-1 sentence provable alongside
/// its negation. `budget` caps how many enumerated sentences to examine.
pub fn probe_level1(basis: &AxiomBasis, apparatus: &Apparatus, budget: usize) -> ProbeReport {
    let apparatus = match apparatus {
        Apparatus::Tab1 => &Apparatus::Tab,
        other => other,
    };
    let candidates = enumerate_sentences(PROBE_FRAGMENT_LEN, budget);
    let mut examined = 0;
    for phi in candidates {
        if !is_rank1(&phi) {
            continue;
        }
        examined += 1;
        let positive = match search(
            &phi,
            basis.axioms(),
            apparatus,
            &SCREEN_BUDGET,
            basis.oracles(),
        ) {
            SearchOutcome::Found(p) => p,
            SearchOutcome::Exhausted => continue,
        };
        let negation = Formula::not(phi.clone());
        if let SearchOutcome::Found(n) = search(
            &negation,
            basis.axioms(),
            apparatus,
            &SCREEN_BUDGET,
            basis.oracles(),
        ) {
            return ProbeReport {
                outcome: ProbeOutcome::PairFound {
                    sentence: phi,
                    proof_positive: Box::new(positive),
                    proof_negative: Box::new(n),
                },
                sentences_examined: examined,
                budget,
            };
        }
    }
    ProbeReport {
        outcome: ProbeOutcome::NoPairFound,
        sentences_examined: examined,
        budget,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axiom::basis::AxiomTag;
    use crate::godel::standard_oracles;
    use crate::lstar::parse::parse_formula;

    #[test]
    fn explicit_contradiction_is_found() {
        let mut basis = AxiomBasis::with_oracles("bad", standard_oracles());
        basis
            .push(parse_formula("(= 0 0)").unwrap(), AxiomTag::User)
            .unwrap();
        basis
            .push(parse_formula("(not (= 0 0))").unwrap(), AxiomTag::User)
            .unwrap();
        let report = probe_level1(&basis, &Apparatus::Tab, 1000);
        match report.outcome {
            ProbeOutcome::PairFound { sentence, .. } => {
                assert_eq!(sentence, parse_formula("(= 0 0)").unwrap());
            }
            ProbeOutcome::NoPairFound => panic!("expected a pair"),
        }
    }

    #[test]
    fn probe_is_deterministic() {
        let basis = AxiomBasis::with_oracles("empty", standard_oracles());
        let a = probe_level1(&basis, &Apparatus::Tab, 300);
        let b = probe_level1(&basis, &Apparatus::Tab, 300);
        assert_eq!(a, b);
        assert_eq!(a.outcome, ProbeOutcome::NoPairFound);
        assert!(a.sentences_examined > 0);
    }
}
