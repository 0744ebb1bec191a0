//! Classification of a basis by which totality statements it
//! establishes: successor, addition, multiplication.

use super::basis::AxiomBasis;
use crate::lstar::ast::Formula;
use crate::lstar::mult::{addition_totality, multiplication_totality, successor_totality};
use crate::tableau::{search, Apparatus, SearchBudget, SearchOutcome};

/// How one totality statement was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqStatus {
    /// Verbatim member of the basis; an axiom is a one-line proof.
    Declared,
    ProvedWithinBudget,
    NotEstablished,
}

impl EqStatus {
    pub fn established(self) -> bool {
        !matches!(self, EqStatus::NotEstablished)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeEvidence {
    pub successor: EqStatus,
    pub addition: EqStatus,
    pub multiplication: EqStatus,
}

/// The label ladder: a basis proving all three totality statements sits
/// at the top; one proving only the first two is next; successor alone is
/// below that; otherwise the basis asserts no totality at all. With mixed
/// evidence the greatest consistent label applies and the evidence field
/// shows the gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TypeClass {
    NS,
    S,
    A,
    M,
}

impl TypeClass {
    pub fn name(self) -> &'static str {
        match self {
            TypeClass::NS => "NS",
            TypeClass::S => "S",
            TypeClass::A => "A",
            TypeClass::M => "M",
        }
    }
}

fn establish(goal: &Formula, basis: &AxiomBasis, budget: &SearchBudget) -> EqStatus {
    if basis.contains(goal) {
        return EqStatus::Declared;
    }
    match search(
        goal,
        basis.axioms(),
        &Apparatus::Tab,
        budget,
        basis.oracles(),
    ) {
        SearchOutcome::Found(_) => EqStatus::ProvedWithinBudget,
        SearchOutcome::Exhausted => EqStatus::NotEstablished,
    }
}

pub fn classify_type(basis: &AxiomBasis, budget: &SearchBudget) -> (TypeClass, TypeEvidence) {
    let evidence = TypeEvidence {
        successor: establish(&successor_totality(), basis, budget),
        addition: establish(&addition_totality(), basis, budget),
        multiplication: establish(&multiplication_totality(), basis, budget),
    };
    let label = if evidence.successor.established()
        && evidence.addition.established()
        && evidence.multiplication.established()
    {
        TypeClass::M
    } else if evidence.successor.established() && evidence.addition.established() {
        TypeClass::A
    } else if evidence.successor.established() {
        TypeClass::S
    } else {
        TypeClass::NS
    };
    (label, evidence)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axiom::basis::AxiomTag;
    use crate::godel::standard_oracles;

    fn basis_with(axioms: Vec<Formula>) -> AxiomBasis {
        let mut b = AxiomBasis::with_oracles("t", standard_oracles());
        b.push_all(axioms, AxiomTag::User).unwrap();
        b
    }

    #[test]
    fn declared_statements_count() {
        let b = basis_with(vec![
            successor_totality(),
            addition_totality(),
            multiplication_totality(),
        ]);
        let (label, ev) = classify_type(&b, &SearchBudget::default());
        assert_eq!(label, TypeClass::M);
        assert_eq!(ev.successor, EqStatus::Declared);
        assert_eq!(ev.multiplication, EqStatus::Declared);
    }

    #[test]
    fn empty_basis_asserts_nothing() {
        let b = basis_with(vec![]);
        let budget = SearchBudget {
            max_nodes: 500,
            max_depth: 2,
        };
        let (label, _) = classify_type(&b, &budget);
        assert_eq!(label, TypeClass::NS);
    }

    #[test]
    fn first_two_statements_only() {
        let b = basis_with(vec![successor_totality(), addition_totality()]);
        let budget = SearchBudget {
            max_nodes: 500,
            max_depth: 2,
        };
        let (label, ev) = classify_type(&b, &budget);
        assert_eq!(label, TypeClass::A);
        assert_eq!(ev.multiplication, EqStatus::NotEstablished);
    }

    #[test]
    fn mixed_evidence_takes_the_greatest_consistent_label() {
        let b = basis_with(vec![successor_totality(), multiplication_totality()]);
        let budget = SearchBudget {
            max_nodes: 500,
            max_depth: 2,
        };
        let (label, ev) = classify_type(&b, &budget);
        assert_eq!(label, TypeClass::S);
        assert_eq!(ev.multiplication, EqStatus::Declared);
        assert_eq!(ev.addition, EqStatus::NotEstablished);
    }
}
