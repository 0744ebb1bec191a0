//! Composition of two proofs through an excluded-middle node.
//!
//! Given a proof of `phi` and a proof of `phi -> psi` from the same basis,
//! the composed refutation of `not psi` is: an excluded-middle node
//! `phi or not phi` under the root, a branching on it, the whole `phi`
//! proof grafted under the `not phi` sibling, and the implication proof's
//! refutation grafted under the `phi` sibling. The top decomposition of
//! the implication proof (negated implication, its conjunction, and the
//! extracted conjuncts) is dropped: those sentences already sit on the
//! host branch. Output size stays within the input sizes plus a small
//! multiple of the two sentence lengths.

use super::apparatus::Apparatus;
use super::check::{check, Verdict};
use super::tree::{Justification, NodeId, ProofTree, RuleId};
use crate::lstar::ast::Formula;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("first proof's goal does not match the implication's antecedent")]
    GoalMismatch,
    #[error("proof root is not a negated goal")]
    BadRoot,
    #[error("unsupported proof shape for grafting: {0}")]
    UnsupportedShape(String),
    #[error("composed tree failed validation: {0}")]
    Composed(String),
}

fn root_goal(p: &ProofTree) -> Result<Formula, ComposeError> {
    match p.nodes.first().map(|n| &n.sentence) {
        Some(Formula::Not(inner)) => Ok((**inner).clone()),
        _ => Err(ComposeError::BadRoot),
    }
}

/// Compose `p1 : phi` and `p2 : phi -> psi` into an extended-tableau
/// proof of `psi` over the same axiom list.
pub fn compose_linear_sum(
    p1: &ProofTree,
    p2: &ProofTree,
    axioms: &[Formula],
) -> Result<ProofTree, ComposeError> {
    let phi = root_goal(p1)?;
    let (phi2, psi) = match root_goal(p2)? {
        Formula::Implies(a, b) => ((*a).clone(), (*b).clone()),
        _ => return Err(ComposeError::GoalMismatch),
    };
    if phi != phi2 {
        return Err(ComposeError::GoalMismatch);
    }

    // keep the two proofs' parameters apart before merging
    let mut p1 = p1.clone();
    prefix_params(&mut p1, "l");
    let mut p2 = p2.clone();
    prefix_params(&mut p2, "r");

    let mut out = ProofTree::with_root(Formula::not(psi.clone()));
    let lem = out.add_node(
        0,
        Formula::or(phi.clone(), Formula::not(phi.clone())),
        Justification::LogicalAxiom,
    );
    let left = out.add_node(
        lem,
        phi.clone(),
        Justification::RuleApp {
            rule: RuleId::R3,
            ancestor: lem,
            aux: None,
        },
    );
    let right = out.add_node(
        lem,
        Formula::not(phi.clone()),
        Justification::RuleApp {
            rule: RuleId::R3,
            ancestor: lem,
            aux: None,
        },
    );

    graft_whole(&p1, &mut out, right)?;
    graft_implication(&p2, &mut out, left, 0, &phi, &psi)?;

    out.rename_params_canonical();
    match check(&out, &psi, axioms, &Apparatus::Xtab) {
        Verdict::Valid => Ok(out),
        Verdict::Invalid(d) => Err(ComposeError::Composed(d)),
    }
}

fn prefix_params(tree: &mut ProofTree, prefix: &str) {
    let mut names = std::collections::BTreeSet::new();
    for n in &tree.nodes {
        names.extend(n.sentence.params());
        if let Justification::RuleApp {
            aux: Some(super::tree::RuleAux::Param(p)),
            ..
        } = &n.just
        {
            names.insert(p.clone());
        }
    }
    let map = names
        .into_iter()
        .map(|n| (n.clone(), format!("{prefix}_{n}")))
        .collect();
    tree.apply_param_map(&map);
}

/// Copy every non-root node of `src` below `attach`; the root's citations
/// point at `attach`, whose sentence equals the root's.
fn graft_whole(src: &ProofTree, out: &mut ProofTree, attach: NodeId) -> Result<(), ComposeError> {
    debug_assert_eq!(src.nodes[0].sentence, out.nodes[attach].sentence);
    let mut map: HashMap<NodeId, NodeId> = HashMap::new();
    map.insert(0, attach);
    for n in src.nodes.iter().skip(1) {
        let parent = n.parent.expect("non-root");
        let new_parent = *map
            .get(&parent)
            .ok_or_else(|| ComposeError::UnsupportedShape("dangling parent".into()))?;
        let just = remap_just(&n.just, &map)?;
        let id = out.add_node(new_parent, n.sentence.clone(), just);
        map.insert(n.id, id);
    }
    for c in &src.closures {
        out.add_closure(resolve(&map, c.leaf)?, resolve(&map, c.phi)?, resolve(&map, c.neg_phi)?);
    }
    Ok(())
}

/// Copy the refutation inside an implication proof onto a branch already
/// carrying the antecedent (at `phi_node`) and the negated consequent
/// (at `neg_psi_node`). The root, the conjunction it decomposes to, and
/// the conjunct extractions are skipped and their citations redirected.
fn graft_implication(
    src: &ProofTree,
    out: &mut ProofTree,
    phi_node: NodeId,
    neg_psi_node: NodeId,
    phi: &Formula,
    psi: &Formula,
) -> Result<(), ComposeError> {
    let conj = Formula::and(phi.clone(), Formula::not(psi.clone()));
    let neg_psi = Formula::not(psi.clone());
    // where a skipped node's citations and children are redirected
    let mut cite: HashMap<NodeId, NodeId> = HashMap::new();
    let mut attach: HashMap<NodeId, NodeId> = HashMap::new();
    let mut skipped_conj: Vec<NodeId> = vec![];
    attach.insert(0, phi_node);

    for n in src.nodes.iter().skip(1) {
        let parent = n.parent.expect("non-root");
        let skip = match &n.just {
            Justification::RuleApp {
                rule: RuleId::R2,
                ancestor: 0,
                ..
            } if n.sentence == conj => {
                skipped_conj.push(n.id);
                true
            }
            Justification::RuleApp {
                rule: RuleId::R1,
                ancestor,
                ..
            } if skipped_conj.contains(ancestor) => {
                if n.sentence == *phi {
                    cite.insert(n.id, phi_node);
                    true
                } else if n.sentence == neg_psi {
                    cite.insert(n.id, neg_psi_node);
                    true
                } else {
                    return Err(ComposeError::UnsupportedShape(format!(
                        "node {}: unexpected extraction from the top conjunction",
                        n.id
                    )));
                }
            }
            _ => false,
        };
        if skip {
            let up = *attach
                .get(&parent)
                .ok_or_else(|| ComposeError::UnsupportedShape("graft lost its anchor".into()))?;
            attach.insert(n.id, up);
            continue;
        }
        let new_parent = *attach
            .get(&parent)
            .ok_or_else(|| ComposeError::UnsupportedShape("graft lost its anchor".into()))?;
        let just = match &n.just {
            Justification::RuleApp {
                rule,
                ancestor,
                aux,
            } => {
                let target = match cite.get(ancestor) {
                    Some(&c) => c,
                    None => {
                        return Err(ComposeError::UnsupportedShape(format!(
                            "node {}: cites the dropped top decomposition",
                            n.id
                        )))
                    }
                };
                Justification::RuleApp {
                    rule: *rule,
                    ancestor: target,
                    aux: aux.clone(),
                }
            }
            Justification::NegatedGoal => {
                return Err(ComposeError::UnsupportedShape(
                    "negated goal inside a grafted subtree".into(),
                ))
            }
            other => other.clone(),
        };
        let id = out.add_node(new_parent, n.sentence.clone(), just);
        cite.insert(n.id, id);
        attach.insert(n.id, id);
    }
    for c in &src.closures {
        // a branch closing against the dropped root pairs some node
        // holding the implication with the negated implication itself;
        // expand that node by rule 4 so both sides close on the host
        if c.neg_phi == 0 {
            let imp = resolve(&cite, c.phi)?;
            let leaf = resolve(&attach, c.leaf)?;
            if leaf != imp
                || !matches!(&out.nodes[imp].sentence,
                             Formula::Implies(a, b) if **a == *phi && **b == *psi)
            {
                return Err(ComposeError::UnsupportedShape(
                    "closure cites the dropped root in a non-implication position".into(),
                ));
            }
            let l = out.add_node(
                imp,
                Formula::not(phi.clone()),
                Justification::RuleApp {
                    rule: RuleId::R4,
                    ancestor: imp,
                    aux: None,
                },
            );
            out.add_closure(l, phi_node, l);
            let r = out.add_node(
                imp,
                psi.clone(),
                Justification::RuleApp {
                    rule: RuleId::R4,
                    ancestor: imp,
                    aux: None,
                },
            );
            out.add_closure(r, r, neg_psi_node);
            continue;
        }
        // a leaf that was itself skipped collapses onto its anchor
        let leaf = resolve(&attach, c.leaf)?;
        let phi_id = resolve(&cite, c.phi)?;
        let neg_id = resolve(&cite, c.neg_phi)?;
        out.add_closure(leaf, phi_id, neg_id);
    }
    Ok(())
}

fn remap_just(
    j: &Justification,
    map: &HashMap<NodeId, NodeId>,
) -> Result<Justification, ComposeError> {
    Ok(match j {
        Justification::RuleApp {
            rule,
            ancestor,
            aux,
        } => Justification::RuleApp {
            rule: *rule,
            ancestor: *map
                .get(ancestor)
                .ok_or_else(|| ComposeError::UnsupportedShape("dangling citation".into()))?,
            aux: aux.clone(),
        },
        Justification::NegatedGoal => {
            return Err(ComposeError::UnsupportedShape(
                "negated goal inside a grafted subtree".into(),
            ))
        }
        other => other.clone(),
    })
}

fn resolve(map: &HashMap<NodeId, NodeId>, id: NodeId) -> Result<NodeId, ComposeError> {
    map.get(&id).copied().ok_or_else(|| {
        ComposeError::UnsupportedShape(format!("closure cites the dropped node {id}"))
    })
}
