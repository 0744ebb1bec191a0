//! Tableau proof validation.
//!
//! Every node is verified locally against its cited ancestor; branching
//! rules must produce exactly the prescribed sibling pair; every leaf must
//! carry a closure witness whose two sentences are exact negations after
//! bounded-quantifier canonicalization; parameters introduced by the
//! existential rules must be globally fresh. The checker is pure.

use super::apparatus::Apparatus;
use super::tree::{Justification, Node, NodeId, ProofTree, RuleAux, RuleId};
use crate::lstar::ast::{Formula, Rel, Term};
use std::collections::{HashMap, HashSet};

/// Checker verdict. The diagnostic names the first offending node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

macro_rules! invalid {
    ($($arg:tt)*) => {
        return Verdict::Invalid(format!($($arg)*))
    };
}

/// Check a proof tree against its goal, axiom list and apparatus.
pub fn check(tree: &ProofTree, goal: &Formula, axioms: &[Formula], app: &Apparatus) -> Verdict {
    if matches!(app, Apparatus::Tab1) {
        invalid!("chain apparatus requires the chain checker");
    }
    if tree.nodes.is_empty() {
        invalid!("empty tree");
    }

    // structural soundness: ids sequential, root unique, parents resolve
    for (i, n) in tree.nodes.iter().enumerate() {
        if n.id != i {
            invalid!("node {}: id field disagrees with position {}", n.id, i);
        }
        match n.parent {
            None if i != 0 => invalid!("node {i}: only the root may lack a parent"),
            Some(p) if p >= tree.nodes.len() => invalid!("node {i}: dangling parent {p}"),
            Some(p) if p >= i => invalid!("node {i}: parent {p} does not precede it"),
            _ => {}
        }
    }
    if tree.nodes[0].parent.is_some() {
        invalid!("node 0: root must not have a parent");
    }

    let children = tree.children();

    // root holds exactly the negated goal
    match &tree.nodes[0].just {
        Justification::NegatedGoal => {}
        _ => invalid!("node 0: root must be justified as the negated goal"),
    }
    if tree.nodes[0].sentence != Formula::not(goal.clone()) {
        invalid!("node 0: root sentence is not the negation of the goal");
    }

    for n in tree.nodes.iter().skip(1) {
        if let Some(d) = check_node(tree, n, axioms, app, &children) {
            return Verdict::Invalid(d);
        }
    }

    // branching integrity: two children only as a rule-3/4 sibling pair
    for (id, kids) in children.iter().enumerate() {
        match kids.len() {
            0 | 1 => {}
            2 => {
                if let Some(d) = check_sibling_pair(tree, kids[0], kids[1]) {
                    invalid!("node {}: {}", id, d);
                }
            }
            n => invalid!("node {id}: {n} children (at most 2 allowed)"),
        }
    }
    // a branching-rule node must come with its sibling
    for n in tree.nodes.iter().skip(1) {
        if let Justification::RuleApp { rule, .. } = &n.just {
            if rule.branches() {
                let parent = n.parent.expect("non-root");
                if children[parent].len() != 2 {
                    invalid!(
                        "node {}: branching rule {} without its sibling",
                        n.id,
                        rule.name()
                    );
                }
            }
        }
    }

    if let Some(d) = check_closures(tree, &children) {
        return Verdict::Invalid(d);
    }
    if let Some(d) = check_param_freshness(tree) {
        return Verdict::Invalid(d);
    }
    Verdict::Valid
}

fn check_node(
    tree: &ProofTree,
    n: &Node,
    axioms: &[Formula],
    app: &Apparatus,
    _children: &[Vec<NodeId>],
) -> Option<String> {
    match &n.just {
        Justification::NegatedGoal => Some(format!("node {}: negated goal outside the root", n.id)),
        Justification::ProperAxiom(i) => match axioms.get(*i) {
            Some(ax) if *ax == n.sentence => None,
            Some(_) => Some(format!(
                "node {}: sentence differs from basis axiom {}",
                n.id, i
            )),
            None => Some(format!("node {}: axiom index {} out of range", n.id, i)),
        },
        Justification::LogicalAxiom => {
            if app.admits_logical_axiom(&n.sentence) {
                None
            } else {
                Some(format!(
                    "node {}: logical axiom not admitted under apparatus {}",
                    n.id,
                    app.name()
                ))
            }
        }
        Justification::RuleApp {
            rule,
            ancestor,
            aux,
        } => {
            if *ancestor >= tree.nodes.len() {
                return Some(format!("node {}: dangling ancestor {}", n.id, ancestor));
            }
            if !tree.is_proper_ancestor(*ancestor, n.id) {
                return Some(format!(
                    "node {}: cited node {} is not an ancestor on its branch",
                    n.id, ancestor
                ));
            }
            let anc = &tree.nodes[*ancestor].sentence;
            if let Some(d) = check_rule_schema(*rule, anc, &n.sentence, aux.as_ref()) {
                return Some(format!("node {}: {}", n.id, d));
            }
            None
        }
    }
}

/// Match one rule application against the Appendix schema.
fn check_rule_schema(
    rule: RuleId,
    anc: &Formula,
    derived: &Formula,
    aux: Option<&RuleAux>,
) -> Option<String> {
    match rule {
        RuleId::R1 => {
            if aux.is_some() {
                return Some("rule 1 carries no payload".into());
            }
            match anc {
                Formula::And(a, b) if **a == *derived || **b == *derived => None,
                Formula::And(..) => Some("rule 1: derived sentence is neither conjunct".into()),
                _ => Some("rule 1: ancestor is not a conjunction".into()),
            }
        }
        RuleId::R2 => {
            if aux.is_some() {
                return Some("rule 2 carries no payload".into());
            }
            let expected = rule2_image(anc);
            if expected.contains(derived) {
                None
            } else {
                Some("rule 2: derived sentence does not match any negation form".into())
            }
        }
        RuleId::R3 => match anc {
            Formula::Or(a, b) if **a == *derived || **b == *derived => None,
            Formula::Or(..) => Some("rule 3: derived sentence is neither disjunct".into()),
            _ => Some("rule 3: ancestor is not a disjunction".into()),
        },
        RuleId::R4 => match anc {
            Formula::Implies(a, b) => {
                let neg_a = Formula::not((**a).clone());
                if neg_a == *derived || **b == *derived {
                    None
                } else {
                    Some("rule 4: derived sentence matches neither branch".into())
                }
            }
            _ => Some("rule 4: ancestor is not an implication".into()),
        },
        RuleId::R5 => {
            let t = match aux {
                Some(RuleAux::Term(t)) => t,
                _ => return Some("rule 5 needs an instantiation term".into()),
            };
            if let Some(d) = ground_term_check(t) {
                return Some(format!("rule 5: {d}"));
            }
            match anc {
                Formula::Forall(v, body) => {
                    if body.subst_var(v, t) == *derived {
                        None
                    } else {
                        Some("rule 5: derived sentence is not the cited instance".into())
                    }
                }
                _ => Some("rule 5: ancestor is not a universal".into()),
            }
        }
        RuleId::R6 => {
            let p = match aux {
                Some(RuleAux::Param(p)) => p,
                _ => return Some("rule 6 needs a parameter".into()),
            };
            match anc {
                Formula::Exists(v, body) => {
                    if body.subst_var(v, &Term::Param(p.clone())) == *derived {
                        None
                    } else {
                        Some("rule 6: derived sentence is not the parameter instance".into())
                    }
                }
                _ => Some("rule 6: ancestor is not an existential".into()),
            }
        }
        RuleId::RA => {
            let t = match aux {
                Some(RuleAux::Term(t)) => t,
                _ => return Some("rule a needs an instantiation term".into()),
            };
            if let Some(d) = ground_term_check(t) {
                return Some(format!("rule a: {d}"));
            }
            match anc {
                Formula::BForall(v, bound, body) => {
                    let expected = Formula::implies(
                        Formula::leq(t.clone(), bound.clone()),
                        body.subst_var(v, t),
                    );
                    if expected == *derived {
                        None
                    } else {
                        Some("rule a: derived sentence is not the guarded instance".into())
                    }
                }
                _ => Some("rule a: ancestor is not a bounded universal".into()),
            }
        }
        RuleId::RB => {
            let p = match aux {
                Some(RuleAux::Param(p)) => p,
                _ => return Some("rule b needs a parameter".into()),
            };
            match anc {
                Formula::BExists(v, bound, body) => {
                    let pt = Term::Param(p.clone());
                    let expected = Formula::and(
                        Formula::leq(pt.clone(), bound.clone()),
                        body.subst_var(v, &pt),
                    );
                    if expected == *derived {
                        None
                    } else {
                        Some("rule b: derived sentence is not the witnessed conjunction".into())
                    }
                }
                _ => Some("rule b: ancestor is not a bounded existential".into()),
            }
        }
    }
}

/// All sentences rule 2 can produce from an ancestor. The two bounded
/// forms push negation through the quantifier abbreviations.
fn rule2_image(anc: &Formula) -> Vec<Formula> {
    let inner = match anc {
        Formula::Not(g) => g,
        _ => return Vec::new(),
    };
    let image = match &**inner {
        Formula::Not(u) => vec![(**u).clone()],
        Formula::Or(a, b) => vec![Formula::and(
            Formula::not((**a).clone()),
            Formula::not((**b).clone()),
        )],
        Formula::Implies(a, b) => vec![Formula::and((**a).clone(), Formula::not((**b).clone()))],
        Formula::And(a, b) => vec![Formula::or(
            Formula::not((**a).clone()),
            Formula::not((**b).clone()),
        )],
        Formula::Exists(v, body) => vec![Formula::forall(
            v.clone(),
            Formula::not((**body).clone()),
        )],
        Formula::Forall(v, body) => vec![Formula::exists(
            v.clone(),
            Formula::not((**body).clone()),
        )],
        Formula::BExists(v, bound, body) => vec![Formula::bforall(
            v.clone(),
            bound.clone(),
            Formula::not((**body).clone()),
        )],
        Formula::BForall(v, bound, body) => vec![Formula::bexists(
            v.clone(),
            bound.clone(),
            Formula::not((**body).clone()),
        )],
        Formula::Atom(..) => Vec::new(),
    };
    image
}

/// Instantiation terms must be ground; parameters are fine, variables not.
fn ground_term_check(t: &Term) -> Option<String> {
    let mut vars = std::collections::BTreeSet::new();
    t.free_vars(&mut vars);
    vars.iter()
        .next()
        .map(|v| format!("instantiation term contains variable '{v}'"))
}

fn check_sibling_pair(tree: &ProofTree, left: NodeId, right: NodeId) -> Option<String> {
    let (ln, rn) = (&tree.nodes[left], &tree.nodes[right]);
    let (l_rule, l_anc) = match &ln.just {
        Justification::RuleApp {
            rule, ancestor, ..
        } if rule.branches() => (*rule, *ancestor),
        _ => {
            return Some(format!(
                "two children but node {left} is not a branching-rule application"
            ))
        }
    };
    let (r_rule, r_anc) = match &rn.just {
        Justification::RuleApp {
            rule, ancestor, ..
        } if rule.branches() => (*rule, *ancestor),
        _ => {
            return Some(format!(
                "two children but node {right} is not a branching-rule application"
            ))
        }
    };
    if l_rule != r_rule || l_anc != r_anc {
        return Some(format!(
            "siblings {left} and {right} cite different rules or ancestors"
        ));
    }
    let anc = &tree.nodes[l_anc].sentence;
    let (want_a, want_b) = match (l_rule, anc) {
        (RuleId::R3, Formula::Or(a, b)) => ((**a).clone(), (**b).clone()),
        (RuleId::R4, Formula::Implies(a, b)) => (Formula::not((**a).clone()), (**b).clone()),
        _ => return Some(format!("siblings {left}/{right}: ancestor shape mismatch")),
    };
    let got = (ln.sentence.clone(), rn.sentence.clone());
    if got == (want_a.clone(), want_b.clone()) || got == (want_b, want_a) {
        None
    } else {
        Some(format!(
            "siblings {left}/{right} are not the prescribed pair"
        ))
    }
}

fn check_closures(tree: &ProofTree, children: &[Vec<NodeId>]) -> Option<String> {
    let mut by_leaf: HashMap<NodeId, &super::tree::Closure> = HashMap::new();
    for c in &tree.closures {
        if c.leaf >= tree.nodes.len() || c.phi >= tree.nodes.len() || c.neg_phi >= tree.nodes.len()
        {
            return Some(format!("closure at leaf {}: dangling node id", c.leaf));
        }
        by_leaf.insert(c.leaf, c);
    }
    for (id, kids) in children.iter().enumerate() {
        if !kids.is_empty() {
            continue;
        }
        let c = match by_leaf.get(&id) {
            Some(c) => c,
            None => return Some(format!("leaf {id}: branch has no closure witness")),
        };
        let branch: HashSet<NodeId> = tree.ancestors_inclusive(id).into_iter().collect();
        if !branch.contains(&c.phi) || !branch.contains(&c.neg_phi) {
            return Some(format!(
                "leaf {id}: closure pair ({}, {}) is not on the branch",
                c.phi, c.neg_phi
            ));
        }
        let phi = canonical(&tree.nodes[c.phi].sentence);
        let neg = canonical(&tree.nodes[c.neg_phi].sentence);
        if neg != Formula::not(phi) {
            return Some(format!(
                "leaf {id}: nodes {} and {} are not an exact contradictory pair",
                c.phi, c.neg_phi
            ));
        }
    }
    None
}

/// Closure comparison happens after bounded-quantifier canonicalization.
fn canonical(f: &Formula) -> Formula {
    f.expand_bounded()
}

fn check_param_freshness(tree: &ProofTree) -> Option<String> {
    // map each parameter to its introducing node
    let mut intro: HashMap<String, NodeId> = HashMap::new();
    for n in &tree.nodes {
        if let Justification::RuleApp {
            rule: RuleId::R6 | RuleId::RB,
            aux: Some(RuleAux::Param(p)),
            ..
        } = &n.just
        {
            if let Some(prev) = intro.insert(p.clone(), n.id) {
                return Some(format!(
                    "node {}: parameter '{}' already introduced at node {}",
                    n.id, p, prev
                ));
            }
        }
    }
    // every occurrence must sit at or below the introduction
    for n in &tree.nodes {
        for p in n.sentence.params() {
            match intro.get(&p) {
                None => {
                    return Some(format!(
                        "node {}: parameter '{}' was never introduced",
                        n.id, p
                    ))
                }
                Some(&at) => {
                    if n.id != at && !tree.is_proper_ancestor(at, n.id) {
                        return Some(format!(
                            "node {}: parameter '{}' escapes the scope of node {}",
                            n.id, p, at
                        ));
                    }
                }
            }
        }
    }
    None
}

/// Sentences of a whole branch, root first. Used by searchers and tests.
pub fn branch_sentences(tree: &ProofTree, leaf: NodeId) -> Vec<Formula> {
    let mut ids = tree.ancestors_inclusive(leaf);
    ids.reverse();
    ids.into_iter()
        .map(|i| tree.nodes[i].sentence.clone())
        .collect()
}

/// Convenience: the atom `0 = 1`, the canonical falsehood.
pub fn falsum() -> Formula {
    Formula::Atom(Rel::Eq, vec![Term::zero(), Term::one()])
}
