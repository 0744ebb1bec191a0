//! Deduction apparatus descriptors.
//!
//! Every tableau variant is the base rule set plus a filter deciding which
//! excluded-middle instances may appear as logical-axiom nodes: none for
//! plain tableau, all of them for the extended variant, an arbitrary
//! sentence set for the enriched family, and the one-free-variable
//! universal form for the base-variable-enriched family.

use crate::lstar::ast::Formula;
use crate::lstar::rank::{rank, Rank};
use std::collections::BTreeSet;

/// Predicate over formulas selecting admissible excluded-middle kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZFilter {
    Nothing,
    Everything,
    /// Membership in an explicit sentence list.
    Sentences(BTreeSet<Formula>),
    /// All formulas whose quantifiers are bounded.
    Delta0,
}

impl ZFilter {
    pub fn accepts(&self, f: &Formula) -> bool {
        match self {
            ZFilter::Nothing => false,
            ZFilter::Everything => true,
            ZFilter::Sentences(set) => set.contains(f),
            ZFilter::Delta0 => rank(f) == Rank::Delta0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Apparatus {
    /// No logical axioms; excluded middle only as a derived theorem.
    Tab,
    /// Any sentence of the form `U or not U` admitted as a node.
    Xtab,
    /// `U or not U` admitted exactly for sentences the filter accepts.
    ZEnriched(ZFilter),
    /// `forall x (U(x) or not U(x))` admitted for one-free-variable
    /// formulas the filter accepts.
    ZVarEnriched(ZFilter),
    /// Chains of rank-1 lemmas, each proved by plain tableau; checked by
    /// the chain checker rather than the single-tree checker.
    Tab1,
}

impl Apparatus {
    /// Decide whether a sentence may stand as a logical-axiom node.
    pub fn admits_logical_axiom(&self, sentence: &Formula) -> bool {
        match self {
            Apparatus::Tab | Apparatus::Tab1 => false,
            Apparatus::Xtab => lem_kernel(sentence).is_some(),
            Apparatus::ZEnriched(z) => lem_kernel(sentence).is_some_and(|u| z.accepts(u)),
            Apparatus::ZVarEnriched(z) => match sentence {
                Formula::Forall(x, body) => lem_kernel(body).is_some_and(|u| {
                    let free = u.free_vars();
                    free.len() == 1 && free.contains(x) && z.accepts(u)
                }),
                _ => false,
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Apparatus::Tab => "tab",
            Apparatus::Xtab => "xtab",
            Apparatus::ZEnriched(_) => "z-enriched",
            Apparatus::ZVarEnriched(_) => "z-var-enriched",
            Apparatus::Tab1 => "tab1",
        }
    }
}

/// Match `U or not U`, returning the kernel `U`.
pub fn lem_kernel(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Or(a, b) => match &**b {
            Formula::Not(inner) if **inner == **a => Some(a),
            _ => None,
        },
        _ => None,
    }
}

/// Build the excluded-middle instance for a kernel.
pub fn lem_instance(kernel: &Formula) -> Formula {
    Formula::or(kernel.clone(), Formula::not(kernel.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::parse::parse_formula;

    #[test]
    fn tab_admits_nothing() {
        let lem = parse_formula("(or (= 0 0) (not (= 0 0)))").unwrap();
        assert!(!Apparatus::Tab.admits_logical_axiom(&lem));
        assert!(Apparatus::Xtab.admits_logical_axiom(&lem));
    }

    #[test]
    fn tab_equals_empty_enrichment() {
        let lem = parse_formula("(or (leq 0 1) (not (leq 0 1)))").unwrap();
        assert_eq!(
            Apparatus::Tab.admits_logical_axiom(&lem),
            Apparatus::ZEnriched(ZFilter::Nothing).admits_logical_axiom(&lem)
        );
    }

    #[test]
    fn xtab_equals_full_enrichment() {
        for src in [
            "(or (= 0 0) (not (= 0 0)))",
            "(or (forall x (= x x)) (not (forall x (= x x))))",
        ] {
            let f = parse_formula(src).unwrap();
            assert_eq!(
                Apparatus::Xtab.admits_logical_axiom(&f),
                Apparatus::ZEnriched(ZFilter::Everything).admits_logical_axiom(&f)
            );
        }
    }

    #[test]
    fn shape_must_match_exactly() {
        let not_lem = parse_formula("(or (= 0 0) (not (= 0 1)))").unwrap();
        assert!(!Apparatus::Xtab.admits_logical_axiom(&not_lem));
    }

    #[test]
    fn var_enriched_requires_universal_form() {
        let f = parse_formula("(forall x (or (= x 0) (not (= x 0))))").unwrap();
        let app = Apparatus::ZVarEnriched(ZFilter::Delta0);
        assert!(app.admits_logical_axiom(&f));
        // the plain sentence form is not admitted by the variable-enriched family
        let g = parse_formula("(or (= 0 0) (not (= 0 0)))").unwrap();
        assert!(!app.admits_logical_axiom(&g));
        // kernel must use exactly the bound variable
        let h = parse_formula("(forall x (or (= 0 0) (not (= 0 0))))").unwrap();
        assert!(!app.admits_logical_axiom(&h));
    }

    #[test]
    fn sentence_list_filter() {
        let u = parse_formula("(= 0 1)").unwrap();
        let mut set = BTreeSet::new();
        set.insert(u.clone());
        let app = Apparatus::ZEnriched(ZFilter::Sentences(set));
        assert!(app.admits_logical_axiom(&lem_instance(&u)));
        let other = parse_formula("(= 1 1)").unwrap();
        assert!(!app.admits_logical_axiom(&lem_instance(&other)));
    }
}
