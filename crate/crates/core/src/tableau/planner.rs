//! Goal-directed proof construction.
//!
//! The planner builds a refutation of the negated goal directly, steering
//! every rule choice with the standard-model evaluator. It only ever emits
//! legal rule applications, so its output is re-validated by the checker
//! like any other tree. Three mechanisms carry the weight:
//!
//! * decomposition of a sentence known false under the current parameter
//!   assignment, extracting exactly the falsified part;
//! * case analysis on bounded witnesses: a parameter `p <= k` is split
//!   over `p = 0, ..., p = k` with a case-split axiom, after which ground
//!   literals are settled through the equality core and the fact tables;
//! * witness synthesis for existential goals, either by the reflexivity
//!   trick (`exists z. t = z` instantiates at `t`) or by matching the
//!   matrix against a basis axiom.
//!
//! Whenever the required axiom is missing from the basis or a shape falls
//! outside these mechanisms, the planner declines and the caller falls
//! back to blind search.

use super::tree::{Justification, NodeId, ProofTree, RuleAux, RuleId};
use crate::axiom::group1;
use crate::godel::nat_term;
use crate::lstar::ast::{Formula, Rel, Term};
use crate::lstar::eval::{eval_sentence, eval_term, OracleTable, Truth};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use std::collections::HashMap;

/// Witness enumeration ceiling when refuting an unbounded quantifier.
const WITNESS_SCAN: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PlanFail {
    /// Shape or axiom outside the planner's reach; blind search may try.
    Unsupported,
    /// Node budget exhausted; blind search would fare no better.
    Budget,
}

type Assignment = HashMap<String, BigUint>;

pub(crate) struct Planner<'a> {
    axioms: &'a [Formula],
    axiom_index: HashMap<&'a Formula, usize>,
    oracles: &'a OracleTable,
    max_nodes: usize,
    next_param: usize,
}

/// One growing branch: its tip and every sentence already on it.
#[derive(Clone)]
struct Branch {
    tip: NodeId,
    facts: HashMap<Formula, NodeId>,
}

impl Branch {
    fn note(&mut self, f: &Formula, id: NodeId) {
        self.facts.entry(f.clone()).or_insert(id);
    }
}

impl<'a> Planner<'a> {
    pub(crate) fn new(
        axioms: &'a [Formula],
        oracles: &'a OracleTable,
        max_nodes: usize,
    ) -> Planner<'a> {
        let axiom_index = axioms.iter().enumerate().map(|(i, f)| (f, i)).collect();
        Planner {
            axioms,
            axiom_index,
            oracles,
            max_nodes,
            next_param: 0,
        }
    }

    pub(crate) fn plan(&mut self, goal: &Formula) -> Result<ProofTree, PlanFail> {
        let mut tree = ProofTree::with_root(Formula::not(goal.clone()));
        let mut branch = Branch {
            tip: 0,
            facts: HashMap::new(),
        };
        branch.note(&tree.nodes[0].sentence.clone(), 0);
        let sigma = Assignment::new();
        self.refute(&mut tree, &mut branch, 0, &sigma)?;
        Ok(tree)
    }

    fn fresh_param(&mut self) -> String {
        self.next_param += 1;
        format!("p{}", self.next_param)
    }

    fn grow(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        sentence: Formula,
        just: Justification,
    ) -> Result<NodeId, PlanFail> {
        if tree.nodes.len() >= self.max_nodes {
            return Err(PlanFail::Budget);
        }
        let id = tree.add_node(branch.tip, sentence.clone(), just);
        branch.tip = id;
        branch.note(&sentence, id);
        Ok(id)
    }

    fn rule_app(rule: RuleId, ancestor: NodeId, aux: Option<RuleAux>) -> Justification {
        Justification::RuleApp {
            rule,
            ancestor,
            aux,
        }
    }

    /// Truth of a formula under a parameter assignment, or None when the
    /// evaluator cannot settle it.
    fn truth(&self, f: &Formula, sigma: &Assignment) -> Option<bool> {
        let closed = subst_params(f, sigma);
        if !closed.params().is_empty() {
            return None;
        }
        match eval_sentence(&closed, self.oracles, 64) {
            Ok(Truth::True) => Some(true),
            Ok(Truth::False) => Some(false),
            _ => None,
        }
    }

    /// Put a basis axiom on the branch (or reuse it).
    fn use_axiom(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        f: &Formula,
    ) -> Result<NodeId, PlanFail> {
        if let Some(&id) = branch.facts.get(f) {
            return Ok(id);
        }
        let idx = *self.axiom_index.get(f).ok_or(PlanFail::Unsupported)?;
        self.grow(tree, branch, f.clone(), Justification::ProperAxiom(idx))
    }

    /// Instantiate a universal already on the branch, one rule-5 node per
    /// quantifier, reusing existing instances.
    fn instantiate(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        mut at: NodeId,
        terms: &[Term],
    ) -> Result<NodeId, PlanFail> {
        for t in terms {
            let body = match &tree.nodes[at].sentence {
                Formula::Forall(v, body) => body.subst_var(v, t),
                _ => return Err(PlanFail::Unsupported),
            };
            if let Some(&id) = branch.facts.get(&body) {
                at = id;
                continue;
            }
            at = self.grow(
                tree,
                branch,
                body,
                Self::rule_app(RuleId::R5, at, Some(RuleAux::Term(t.clone()))),
            )?;
        }
        Ok(at)
    }

    /// Modus ponens as a tableau step: branch on the implication node; the
    /// negated-antecedent side closes against `antecedent`, the consequent
    /// side continues.
    fn mp(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        implication: NodeId,
        antecedent: NodeId,
    ) -> Result<NodeId, PlanFail> {
        let (a, b) = match &tree.nodes[implication].sentence {
            Formula::Implies(a, b) => ((**a).clone(), (**b).clone()),
            _ => return Err(PlanFail::Unsupported),
        };
        if let Some(&id) = branch.facts.get(&b) {
            return Ok(id);
        }
        debug_assert_eq!(tree.nodes[antecedent].sentence, a);
        if tree.nodes.len() + 2 > self.max_nodes {
            return Err(PlanFail::Budget);
        }
        let parent = branch.tip;
        let left = tree.add_node(
            parent,
            Formula::not(a),
            Self::rule_app(RuleId::R4, implication, None),
        );
        tree.add_closure(left, antecedent, left);
        let right = tree.add_node(parent, b.clone(), Self::rule_app(RuleId::R4, implication, None));
        branch.tip = right;
        branch.note(&b, right);
        Ok(right)
    }

    /// Derive an instantiated basis axiom and feed it the given premises.
    fn derive(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        axiom: &Formula,
        inst: &[Term],
        premises: &[NodeId],
    ) -> Result<NodeId, PlanFail> {
        let ax = self.use_axiom(tree, branch, axiom)?;
        let mut at = self.instantiate(tree, branch, ax, inst)?;
        for &p in premises {
            at = self.mp(tree, branch, at, p)?;
        }
        Ok(at)
    }

    /// Try `work`; roll the tree back if it fails.
    fn attempt<F>(
        &mut self,
        tree: &mut ProofTree,
        branch: &Branch,
        work: F,
    ) -> Result<(), PlanFail>
    where
        F: FnOnce(&mut Self, &mut ProofTree, &mut Branch) -> Result<(), PlanFail>,
    {
        let nodes_mark = tree.nodes.len();
        let closures_mark = tree.closures.len();
        let mut scratch = branch.clone();
        match work(self, tree, &mut scratch) {
            Ok(()) => Ok(()),
            Err(e) => {
                tree.nodes.truncate(nodes_mark);
                tree.closures.truncate(closures_mark);
                Err(e)
            }
        }
    }

    /// If the exact complement of `f` is on the branch, close and report.
    fn try_direct_close(
        &mut self,
        tree: &mut ProofTree,
        branch: &Branch,
        node: NodeId,
        f: &Formula,
    ) -> bool {
        if let Formula::Not(inner) = f {
            if let Some(&pos) = branch.facts.get(inner) {
                tree.add_closure(branch.tip, pos, node);
                return true;
            }
        }
        if let Some(&neg) = branch.facts.get(&Formula::not(f.clone())) {
            tree.add_closure(branch.tip, node, neg);
            return true;
        }
        false
    }

    /// Term-value derivation: produce a branch node `t = v` where `v` is
    /// the compact numeral of the term's value under `sigma`.
    fn term_value(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        t: &Term,
        sigma: &Assignment,
    ) -> Result<(NodeId, BigUint), PlanFail> {
        let value = self.eval_with(t, sigma)?;
        let numeral = nat_term(&value);
        let goal_eq = Formula::eq(t.clone(), numeral.clone());
        if let Some(&id) = branch.facts.get(&goal_eq) {
            return Ok((id, value));
        }
        if *t == numeral {
            let id = self.derive(tree, branch, &group1::reflexivity(), &[t.clone()], &[])?;
            return Ok((id, value));
        }
        match t {
            Term::App(f, args) => {
                let arg_values: Vec<BigUint> = args
                    .iter()
                    .map(|a| self.eval_with(a, sigma))
                    .collect::<Result<_, _>>()?;
                let arg_numerals: Vec<Term> = arg_values.iter().map(nat_term).collect();
                let fact = Formula::eq(Term::App(*f, arg_numerals.clone()), numeral.clone());
                if Term::App(*f, arg_numerals.clone()) == *t {
                    // arguments already canonical: the table fact is the goal
                    let id = self.use_axiom(tree, branch, &fact)?;
                    return Ok((id, value));
                }
                let mut arg_nodes = Vec::new();
                for a in args {
                    let (n, _) = self.term_value(tree, branch, a, sigma)?;
                    arg_nodes.push(n);
                }
                let fact_node = self.use_axiom(tree, branch, &fact)?;
                let mut inst: Vec<Term> = args.clone();
                inst.extend(arg_numerals.iter().cloned());
                let cong = self.derive(
                    tree,
                    branch,
                    &group1::fn_congruence(*f),
                    &inst,
                    &arg_nodes,
                )?;
                let trans = self.derive(
                    tree,
                    branch,
                    &group1::transitivity(),
                    &[
                        t.clone(),
                        Term::App(*f, arg_numerals.clone()),
                        numeral.clone(),
                    ],
                    &[cong, fact_node],
                )?;
                Ok((trans, value))
            }
            Term::Param(p) => {
                // the case split placed `p = j` on the branch
                let j = sigma.get(p).ok_or(PlanFail::Unsupported)?;
                let eq = Formula::eq(Term::Param(p.clone()), nat_term(j));
                match branch.facts.get(&eq) {
                    Some(&id) => Ok((id, value)),
                    None => Err(PlanFail::Unsupported),
                }
            }
            _ => Err(PlanFail::Unsupported),
        }
    }

    fn eval_with(&self, t: &Term, sigma: &Assignment) -> Result<BigUint, PlanFail> {
        let closed = subst_params_term(t, sigma);
        eval_term(&closed, self.oracles).map_err(|_| PlanFail::Unsupported)
    }

    /// Swap an equation: from a node `a = b` derive `b = a`.
    fn sym(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        node: NodeId,
    ) -> Result<NodeId, PlanFail> {
        let (a, b) = match &tree.nodes[node].sentence {
            Formula::Atom(Rel::Eq, args) => (args[0].clone(), args[1].clone()),
            _ => return Err(PlanFail::Unsupported),
        };
        self.derive(tree, branch, &group1::symmetry(), &[a, b], &[node])
    }

    /// Settle a false literal: derive its contradictory mate from the
    /// equality core and the fact tables, then close.
    fn close_literal(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        target: NodeId,
        sigma: &Assignment,
    ) -> Result<(), PlanFail> {
        let f = tree.nodes[target].sentence.clone();
        if self.try_direct_close(tree, branch, target, &f) {
            return Ok(());
        }
        match &f {
            // branch holds t = u, but the values differ: push it down to a
            // numeral apartness fact
            Formula::Atom(Rel::Eq, args) => {
                let (tn, tv) = self.term_value(tree, branch, &args[0], sigma)?;
                let (un, uv) = self.term_value(tree, branch, &args[1], sigma)?;
                if tv == uv {
                    return Err(PlanFail::Unsupported);
                }
                let bad = self.derive(
                    tree,
                    branch,
                    &group1::eq_congruence(),
                    &[
                        args[0].clone(),
                        args[1].clone(),
                        nat_term(&tv),
                        nat_term(&uv),
                    ],
                    &[tn, un, target],
                )?;
                let apart = Formula::not(Formula::eq(nat_term(&tv), nat_term(&uv)));
                let apart_node = self.use_axiom(tree, branch, &apart)?;
                tree.add_closure(branch.tip, bad, apart_node);
                Ok(())
            }
            // branch holds t <= u with t's value above u's
            Formula::Atom(Rel::Leq, args) => {
                let (tn, tv) = self.term_value(tree, branch, &args[0], sigma)?;
                let (un, uv) = self.term_value(tree, branch, &args[1], sigma)?;
                if tv <= uv {
                    return Err(PlanFail::Unsupported);
                }
                let bad = self.derive(
                    tree,
                    branch,
                    &group1::leq_congruence(),
                    &[
                        args[0].clone(),
                        args[1].clone(),
                        nat_term(&tv),
                        nat_term(&uv),
                    ],
                    &[tn, un, target],
                )?;
                let apart = Formula::not(Formula::leq(nat_term(&tv), nat_term(&uv)));
                let apart_node = self.use_axiom(tree, branch, &apart)?;
                tree.add_closure(branch.tip, bad, apart_node);
                Ok(())
            }
            Formula::Not(inner) => match &**inner {
                // branch holds not (t = u) although the values agree
                Formula::Atom(Rel::Eq, args) => {
                    let (tn, tv) = self.term_value(tree, branch, &args[0], sigma)?;
                    let (un, uv) = self.term_value(tree, branch, &args[1], sigma)?;
                    if tv != uv {
                        return Err(PlanFail::Unsupported);
                    }
                    let back = self.sym(tree, branch, un)?;
                    let derived = self.derive(
                        tree,
                        branch,
                        &group1::transitivity(),
                        &[args[0].clone(), nat_term(&tv), args[1].clone()],
                        &[tn, back],
                    )?;
                    tree.add_closure(branch.tip, derived, target);
                    Ok(())
                }
                // branch holds not (t <= u) although the order does hold
                Formula::Atom(Rel::Leq, args) => {
                    let (tn, tv) = self.term_value(tree, branch, &args[0], sigma)?;
                    let (un, uv) = self.term_value(tree, branch, &args[1], sigma)?;
                    if tv > uv {
                        return Err(PlanFail::Unsupported);
                    }
                    let fact = Formula::leq(nat_term(&tv), nat_term(&uv));
                    let fact_node = self.use_axiom(tree, branch, &fact)?;
                    let t_back = self.sym(tree, branch, tn)?;
                    let u_back = self.sym(tree, branch, un)?;
                    let derived = self.derive(
                        tree,
                        branch,
                        &group1::leq_congruence(),
                        &[
                            nat_term(&tv),
                            nat_term(&uv),
                            args[0].clone(),
                            args[1].clone(),
                        ],
                        &[t_back, u_back, fact_node],
                    )?;
                    tree.add_closure(branch.tip, derived, target);
                    Ok(())
                }
                _ => Err(PlanFail::Unsupported),
            },
            _ => Err(PlanFail::Unsupported),
        }
    }

    /// Refute the sentence at `target`, known false under `sigma`.
    /// Parameters outside `sigma` are symbolic; only shapes that are false
    /// for every parameter value are handled then.
    fn refute(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        target: NodeId,
        sigma: &Assignment,
    ) -> Result<(), PlanFail> {
        let f = tree.nodes[target].sentence.clone();
        if self.try_direct_close(tree, branch, target, &f) {
            return Ok(());
        }
        if !f.params().iter().all(|p| sigma.contains_key(p)) {
            return self.refute_symbolic(tree, branch, target, sigma);
        }
        match &f {
            Formula::Atom(..) => self.close_literal(tree, branch, target, sigma),
            Formula::Not(inner) => {
                let inner = (**inner).clone();
                self.refute_negation(tree, branch, target, &inner, sigma)
            }
            Formula::And(a, b) => {
                let pick = if self.truth(a, sigma) == Some(false) {
                    (**a).clone()
                } else if self.truth(b, sigma) == Some(false) {
                    (**b).clone()
                } else {
                    return Err(PlanFail::Unsupported);
                };
                let node = self.grow(tree, branch, pick, Self::rule_app(RuleId::R1, target, None))?;
                self.refute(tree, branch, node, sigma)
            }
            Formula::Or(a, b) => self.branch_pair(
                tree,
                branch,
                target,
                RuleId::R3,
                (**a).clone(),
                (**b).clone(),
                sigma,
            ),
            Formula::Implies(a, b) => self.branch_pair(
                tree,
                branch,
                target,
                RuleId::R4,
                Formula::not((**a).clone()),
                (**b).clone(),
                sigma,
            ),
            Formula::Forall(v, body) => {
                // false universal: instantiate at a counterexample
                let m = self.find_unbounded_witness(v, body, sigma, false)?;
                let inst = body.subst_var(v, &nat_term(&m));
                let node = self.grow(
                    tree,
                    branch,
                    inst,
                    Self::rule_app(RuleId::R5, target, Some(RuleAux::Term(nat_term(&m)))),
                )?;
                self.refute(tree, branch, node, sigma)
            }
            Formula::Exists(v, body) => {
                // false unbounded existential: parameter, then symbolic
                let p = self.fresh_param();
                let inst = body.subst_var(v, &Term::Param(p.clone()));
                let node = self.grow(
                    tree,
                    branch,
                    inst,
                    Self::rule_app(RuleId::R6, target, Some(RuleAux::Param(p))),
                )?;
                self.refute_symbolic(tree, branch, node, sigma)
            }
            Formula::BForall(v, bound, body) => {
                let limit = self.eval_with(bound, sigma)?;
                let m = self.find_bounded_witness(v, body, &limit, sigma, false)?;
                let guarded = Formula::implies(
                    Formula::leq(nat_term(&m), bound.clone()),
                    body.subst_var(v, &nat_term(&m)),
                );
                let node = self.grow(
                    tree,
                    branch,
                    guarded,
                    Self::rule_app(RuleId::RA, target, Some(RuleAux::Term(nat_term(&m)))),
                )?;
                self.refute(tree, branch, node, sigma)
            }
            Formula::BExists(v, bound, body) => {
                let v = v.clone();
                let bound = bound.clone();
                let body = (**body).clone();
                self.case_split_bexists(tree, branch, target, &v, &bound, &body, sigma)
            }
        }
    }

    fn refute_negation(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        target: NodeId,
        inner: &Formula,
        sigma: &Assignment,
    ) -> Result<(), PlanFail> {
        match inner {
            Formula::Atom(..) => self.close_literal(tree, branch, target, sigma),
            Formula::Not(g) => {
                let node = self.rule2(tree, branch, target, (**g).clone())?;
                self.refute(tree, branch, node, sigma)
            }
            Formula::And(a, b) => {
                let node = self.rule2(
                    tree,
                    branch,
                    target,
                    Formula::or(Formula::not((**a).clone()), Formula::not((**b).clone())),
                )?;
                self.refute(tree, branch, node, sigma)
            }
            Formula::Or(a, b) => {
                let node = self.rule2(
                    tree,
                    branch,
                    target,
                    Formula::and(Formula::not((**a).clone()), Formula::not((**b).clone())),
                )?;
                // pick the false conjunct: the negation of the true disjunct
                let pick = if self.truth(a, sigma) == Some(true) {
                    Formula::not((**a).clone())
                } else if self.truth(b, sigma) == Some(true) {
                    Formula::not((**b).clone())
                } else {
                    return Err(PlanFail::Unsupported);
                };
                let picked =
                    self.grow(tree, branch, pick, Self::rule_app(RuleId::R1, node, None))?;
                self.refute(tree, branch, picked, sigma)
            }
            Formula::Implies(a, b) => {
                let node = self.rule2(
                    tree,
                    branch,
                    target,
                    Formula::and((**a).clone(), Formula::not((**b).clone())),
                )?;
                let pick = if self.truth(a, sigma) == Some(false) {
                    (**a).clone()
                } else if self.truth(b, sigma) == Some(true) {
                    Formula::not((**b).clone())
                } else {
                    return Err(PlanFail::Unsupported);
                };
                let picked =
                    self.grow(tree, branch, pick, Self::rule_app(RuleId::R1, node, None))?;
                self.refute(tree, branch, picked, sigma)
            }
            Formula::Forall(v, body) => {
                let node = self.rule2(
                    tree,
                    branch,
                    target,
                    Formula::exists(v.clone(), Formula::not((**body).clone())),
                )?;
                self.refute(tree, branch, node, sigma)
            }
            Formula::Exists(v, body) => {
                let node = self.rule2(
                    tree,
                    branch,
                    target,
                    Formula::forall(v.clone(), Formula::not((**body).clone())),
                )?;
                // an instantiation matching a basis axiom or closing by
                // reflexivity beats enumerating the witness value
                let direct = self.attempt(tree, branch, |me, tree, scratch| {
                    me.synthesize_witness(tree, scratch, node, v, body)
                });
                if direct.is_ok() {
                    return Ok(());
                }
                self.refute(tree, branch, node, sigma)
            }
            Formula::BForall(v, bound, body) => {
                let node = self.rule2(
                    tree,
                    branch,
                    target,
                    Formula::bexists(v.clone(), bound.clone(), Formula::not((**body).clone())),
                )?;
                self.refute(tree, branch, node, sigma)
            }
            Formula::BExists(v, bound, body) => {
                let node = self.rule2(
                    tree,
                    branch,
                    target,
                    Formula::bforall(v.clone(), bound.clone(), Formula::not((**body).clone())),
                )?;
                self.refute(tree, branch, node, sigma)
            }
        }
    }

    fn rule2(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        ancestor: NodeId,
        sentence: Formula,
    ) -> Result<NodeId, PlanFail> {
        self.grow(tree, branch, sentence, Self::rule_app(RuleId::R2, ancestor, None))
    }

    /// Refute both sides of a branching rule.
    #[allow(clippy::too_many_arguments)]
    fn branch_pair(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        target: NodeId,
        rule: RuleId,
        left: Formula,
        right: Formula,
        sigma: &Assignment,
    ) -> Result<(), PlanFail> {
        if tree.nodes.len() + 2 > self.max_nodes {
            return Err(PlanFail::Budget);
        }
        let parent = branch.tip;
        let lid = tree.add_node(parent, left.clone(), Self::rule_app(rule, target, None));
        let rid = tree.add_node(parent, right.clone(), Self::rule_app(rule, target, None));
        let mut lbranch = branch.clone();
        lbranch.tip = lid;
        lbranch.note(&left, lid);
        self.refute(tree, &mut lbranch, lid, sigma)?;
        let mut rbranch = branch.clone();
        rbranch.tip = rid;
        rbranch.note(&right, rid);
        self.refute(tree, &mut rbranch, rid, sigma)
    }

    /// Find a value making `body` take the wanted truth value.
    fn find_unbounded_witness(
        &self,
        v: &str,
        body: &Formula,
        sigma: &Assignment,
        want: bool,
    ) -> Result<BigUint, PlanFail> {
        for i in 0..WITNESS_SCAN {
            let m = BigUint::from(i);
            if self.truth(&body.subst_var(v, &nat_term(&m)), sigma) == Some(want) {
                return Ok(m);
            }
        }
        Err(PlanFail::Unsupported)
    }

    fn find_bounded_witness(
        &self,
        v: &str,
        body: &Formula,
        limit: &BigUint,
        sigma: &Assignment,
        want: bool,
    ) -> Result<BigUint, PlanFail> {
        let mut m = BigUint::from(0u8);
        while m <= *limit {
            if self.truth(&body.subst_var(v, &nat_term(&m)), sigma) == Some(want) {
                return Ok(m);
            }
            m += BigUint::one();
        }
        Err(PlanFail::Unsupported)
    }

    /// Refute a false bounded existential by case analysis on the witness.
    #[allow(clippy::too_many_arguments)]
    fn case_split_bexists(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        target: NodeId,
        v: &str,
        bound: &Term,
        body: &Formula,
        sigma: &Assignment,
    ) -> Result<(), PlanFail> {
        let limit = self.eval_with(bound, sigma)?;
        let k = limit.to_u32().ok_or(PlanFail::Unsupported)?;
        let p = self.fresh_param();
        let pt = Term::Param(p.clone());
        let witnessed = Formula::and(
            Formula::leq(pt.clone(), bound.clone()),
            body.subst_var(v, &pt),
        );
        let wnode = self.grow(
            tree,
            branch,
            witnessed,
            Self::rule_app(RuleId::RB, target, Some(RuleAux::Param(p.clone()))),
        )?;
        let constraint = self.grow(
            tree,
            branch,
            Formula::leq(pt.clone(), bound.clone()),
            Self::rule_app(RuleId::R1, wnode, None),
        )?;
        let body_inst = body.subst_var(v, &pt);
        let body_node = self.grow(
            tree,
            branch,
            body_inst,
            Self::rule_app(RuleId::R1, wnode, None),
        )?;

        // normalize the constraint to `p <= limit-numeral`
        let limit_numeral = nat_term(&limit);
        let norm_constraint = if *bound == limit_numeral {
            constraint
        } else {
            let (bnode, _) = self.term_value(tree, branch, bound, sigma)?;
            let p_refl = self.derive(tree, branch, &group1::reflexivity(), &[pt.clone()], &[])?;
            self.derive(
                tree,
                branch,
                &group1::leq_congruence(),
                &[pt.clone(), bound.clone(), pt.clone(), limit_numeral.clone()],
                &[p_refl, bnode, constraint],
            )?
        };

        let cases_node = self.derive(
            tree,
            branch,
            &group1::case_split(k),
            &[pt.clone()],
            &[norm_constraint],
        )?;
        self.split_cases(tree, branch, cases_node, k, &p, body_node, sigma)
    }

    /// Peel the left-nested case disjunction; the rightmost disjunct of
    /// the current level is the case `p = level`.
    #[allow(clippy::too_many_arguments)]
    fn split_cases(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        cases_node: NodeId,
        level: u32,
        p: &str,
        body_node: NodeId,
        sigma: &Assignment,
    ) -> Result<(), PlanFail> {
        let sentence = tree.nodes[cases_node].sentence.clone();
        match sentence {
            Formula::Or(rest, case) => {
                if tree.nodes.len() + 2 > self.max_nodes {
                    return Err(PlanFail::Budget);
                }
                let parent = branch.tip;
                let lid = tree.add_node(
                    parent,
                    (*rest).clone(),
                    Self::rule_app(RuleId::R3, cases_node, None),
                );
                let rid = tree.add_node(
                    parent,
                    (*case).clone(),
                    Self::rule_app(RuleId::R3, cases_node, None),
                );
                let mut rbranch = branch.clone();
                rbranch.tip = rid;
                rbranch.note(&case, rid);
                self.settle_case(tree, &mut rbranch, level, p, body_node, sigma)?;
                let mut lbranch = branch.clone();
                lbranch.tip = lid;
                lbranch.note(&rest, lid);
                self.split_cases(tree, &mut lbranch, lid, level - 1, p, body_node, sigma)
            }
            Formula::Atom(Rel::Eq, _) => self.settle_case(tree, branch, 0, p, body_node, sigma),
            _ => Err(PlanFail::Unsupported),
        }
    }

    fn settle_case(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        j: u32,
        p: &str,
        body_node: NodeId,
        sigma: &Assignment,
    ) -> Result<(), PlanFail> {
        let mut sigma2 = sigma.clone();
        sigma2.insert(p.to_string(), BigUint::from(j));
        self.refute(tree, branch, body_node, &sigma2)
    }

    /// Symbolic refutation: the sentence must be false for every value of
    /// its unconstrained parameters. Handles quantifier prefixes and the
    /// witness-synthesis patterns.
    fn refute_symbolic(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        target: NodeId,
        sigma: &Assignment,
    ) -> Result<(), PlanFail> {
        let f = tree.nodes[target].sentence.clone();
        if self.try_direct_close(tree, branch, target, &f) {
            return Ok(());
        }
        match &f {
            Formula::Not(inner) => match &**inner {
                Formula::Not(g) => {
                    let node = self.rule2(tree, branch, target, (**g).clone())?;
                    self.refute_symbolic(tree, branch, node, sigma)
                }
                Formula::Exists(z, body) => {
                    let node = self.rule2(
                        tree,
                        branch,
                        target,
                        Formula::forall(z.clone(), Formula::not((**body).clone())),
                    )?;
                    self.synthesize_witness(tree, branch, node, z, body)
                }
                Formula::Forall(x, body) => {
                    let node = self.rule2(
                        tree,
                        branch,
                        target,
                        Formula::exists(x.clone(), Formula::not((**body).clone())),
                    )?;
                    let p = self.fresh_param();
                    let inst = Formula::not((**body).clone()).subst_var(x, &Term::Param(p.clone()));
                    let inner_node = self.grow(
                        tree,
                        branch,
                        inst,
                        Self::rule_app(RuleId::R6, node, Some(RuleAux::Param(p))),
                    )?;
                    self.refute_symbolic(tree, branch, inner_node, sigma)
                }
                Formula::Atom(Rel::Eq, args) if args[0] == args[1] => {
                    let refl =
                        self.derive(tree, branch, &group1::reflexivity(), &[args[0].clone()], &[])?;
                    tree.add_closure(branch.tip, refl, target);
                    Ok(())
                }
                _ => Err(PlanFail::Unsupported),
            },
            Formula::Exists(v, body) => {
                let p = self.fresh_param();
                let inst = body.subst_var(v, &Term::Param(p.clone()));
                let node = self.grow(
                    tree,
                    branch,
                    inst,
                    Self::rule_app(RuleId::R6, target, Some(RuleAux::Param(p))),
                )?;
                self.refute_symbolic(tree, branch, node, sigma)
            }
            _ => Err(PlanFail::Unsupported),
        }
    }

    /// Given a branch node `forall z. not body(z)`, find a term whose
    /// instance contradicts something derivable, and close with it.
    fn synthesize_witness(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut Branch,
        forall_node: NodeId,
        z: &str,
        body: &Formula,
    ) -> Result<(), PlanFail> {
        // reflexivity pattern: body is `u = z` or `z = u` with z-free u
        if let Formula::Atom(Rel::Eq, args) = body {
            for (zside, uside) in [(&args[1], &args[0]), (&args[0], &args[1])] {
                if *zside == Term::Var(z.to_string()) && !term_mentions_var(uside, z) {
                    let u = (*uside).clone();
                    let done = self.attempt(tree, branch, |me, tree, scratch| {
                        let inst = me.instantiate(tree, scratch, forall_node, &[u.clone()])?;
                        let refl =
                            me.derive(tree, scratch, &group1::reflexivity(), &[u.clone()], &[])?;
                        tree.add_closure(scratch.tip, refl, inst);
                        Ok(())
                    });
                    if done.is_ok() {
                        return Ok(());
                    }
                }
            }
        }
        // axiom pattern: some basis axiom is exactly body[z := t]
        let candidates: Vec<(Formula, Term)> = self
            .axioms
            .iter()
            .filter_map(|ax| match_one_var(body, z, ax).map(|t| (ax.clone(), t)))
            .filter(|(_, t)| t.is_ground())
            .collect();
        for (ax, t) in candidates {
            let done = self.attempt(tree, branch, |me, tree, scratch| {
                let ax_node = me.use_axiom(tree, scratch, &ax)?;
                let inst = me.instantiate(tree, scratch, forall_node, &[t.clone()])?;
                tree.add_closure(scratch.tip, ax_node, inst);
                Ok(())
            });
            if done.is_ok() {
                return Ok(());
            }
        }
        Err(PlanFail::Unsupported)
    }
}

fn term_mentions_var(t: &Term, v: &str) -> bool {
    let mut vars = std::collections::BTreeSet::new();
    t.free_vars(&mut vars);
    vars.contains(v)
}

/// Match `pattern[z := ?]` against `target`, returning the unique filler.
/// Quantifiers shadowing `z` switch to exact comparison.
pub(crate) fn match_one_var(pattern: &Formula, z: &str, target: &Formula) -> Option<Term> {
    let mut found: Option<Term> = None;
    if match_formula(pattern, z, target, &mut found, false) {
        found
    } else {
        None
    }
}

fn match_formula(
    pat: &Formula,
    z: &str,
    tgt: &Formula,
    found: &mut Option<Term>,
    shadowed: bool,
) -> bool {
    match (pat, tgt) {
        (Formula::Atom(r1, a1), Formula::Atom(r2, a2)) => {
            r1 == r2
                && a1.len() == a2.len()
                && a1
                    .iter()
                    .zip(a2)
                    .all(|(p, t)| match_term(p, z, t, found, shadowed))
        }
        (Formula::Not(p), Formula::Not(t)) => match_formula(p, z, t, found, shadowed),
        (Formula::And(p1, p2), Formula::And(t1, t2))
        | (Formula::Or(p1, p2), Formula::Or(t1, t2))
        | (Formula::Implies(p1, p2), Formula::Implies(t1, t2)) => {
            match_formula(p1, z, t1, found, shadowed) && match_formula(p2, z, t2, found, shadowed)
        }
        (Formula::Forall(v1, p), Formula::Forall(v2, t))
        | (Formula::Exists(v1, p), Formula::Exists(v2, t)) => {
            v1 == v2 && match_formula(p, z, t, found, shadowed || v1 == z)
        }
        (Formula::BForall(v1, b1, p), Formula::BForall(v2, b2, t))
        | (Formula::BExists(v1, b1, p), Formula::BExists(v2, b2, t)) => {
            v1 == v2
                && match_term(b1, z, b2, found, shadowed)
                && match_formula(p, z, t, found, shadowed || v1 == z)
        }
        _ => false,
    }
}

fn match_term(pat: &Term, z: &str, tgt: &Term, found: &mut Option<Term>, shadowed: bool) -> bool {
    match pat {
        Term::Var(v) if v == z && !shadowed => match found {
            Some(prev) => prev == tgt,
            None => {
                *found = Some(tgt.clone());
                true
            }
        },
        Term::App(f1, a1) => match tgt {
            Term::App(f2, a2) if f1 == f2 && a1.len() == a2.len() => a1
                .iter()
                .zip(a2)
                .all(|(p, t)| match_term(p, z, t, found, shadowed)),
            _ => false,
        },
        Term::OracleApp(n1, a1) => match tgt {
            Term::OracleApp(n2, a2) if n1 == n2 && a1.len() == a2.len() => a1
                .iter()
                .zip(a2)
                .all(|(p, t)| match_term(p, z, t, found, shadowed)),
            _ => false,
        },
        _ => pat == tgt,
    }
}

pub(crate) fn subst_params(f: &Formula, sigma: &Assignment) -> Formula {
    match f {
        Formula::Atom(rel, args) => Formula::Atom(
            rel.clone(),
            args.iter().map(|t| subst_params_term(t, sigma)).collect(),
        ),
        Formula::Not(g) => Formula::not(subst_params(g, sigma)),
        Formula::And(a, b) => Formula::and(subst_params(a, sigma), subst_params(b, sigma)),
        Formula::Or(a, b) => Formula::or(subst_params(a, sigma), subst_params(b, sigma)),
        Formula::Implies(a, b) => Formula::implies(subst_params(a, sigma), subst_params(b, sigma)),
        Formula::Forall(v, g) => Formula::forall(v.clone(), subst_params(g, sigma)),
        Formula::Exists(v, g) => Formula::exists(v.clone(), subst_params(g, sigma)),
        Formula::BForall(v, b, g) => Formula::bforall(
            v.clone(),
            subst_params_term(b, sigma),
            subst_params(g, sigma),
        ),
        Formula::BExists(v, b, g) => Formula::bexists(
            v.clone(),
            subst_params_term(b, sigma),
            subst_params(g, sigma),
        ),
    }
}

fn subst_params_term(t: &Term, sigma: &Assignment) -> Term {
    match t {
        Term::Param(p) => match sigma.get(p) {
            Some(v) => nat_term(v),
            None => t.clone(),
        },
        Term::Const(_) | Term::Var(_) => t.clone(),
        Term::App(f, args) => Term::App(
            *f,
            args.iter().map(|a| subst_params_term(a, sigma)).collect(),
        ),
        Term::OracleApp(name, args) => Term::OracleApp(
            name.clone(),
            args.iter().map(|a| subst_params_term(a, sigma)).collect(),
        ),
    }
}
