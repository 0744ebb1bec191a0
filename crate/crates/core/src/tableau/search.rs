//! Bounded proof search.
//!
//! Strategy ladder, each rung validated by the checker before returning:
//! a direct axiom hit, the five-node excluded-middle construction, the
//! goal-directed planner, and finally a deterministic blind saturation.
//! The saturation applies non-branching rules first, introduces basis
//! axioms in order, instantiates universals from a growing term pool
//! (constants, branch subterms, then successive numerals), and under an
//! enriched apparatus inserts excluded-middle nodes for goal subformulas
//! and filter sentences in code order. Search never backtracks over rule
//! order, so a stuck branch ends the attempt; exhaustion is a normal
//! outcome, not an error.

use super::apparatus::{lem_instance, Apparatus, ZFilter};
use super::check::{check, Verdict};
use super::planner::{PlanFail, Planner};
use super::tree::{Justification, NodeId, ProofTree, RuleAux, RuleId};
use crate::godel::{encode_formula, nat_term};
use crate::lstar::ast::{Formula, Term};
use crate::lstar::eval::OracleTable;
use num_bigint::BigUint;
use std::collections::{HashMap, HashSet, VecDeque};

/// Node-count and instantiation-depth limits for one search call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: usize,
    pub max_depth: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 10_000,
            max_depth: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(ProofTree),
    Exhausted,
}

impl SearchOutcome {
    pub fn found(self) -> Option<ProofTree> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::Exhausted => None,
        }
    }
}

/// Search for a proof of `goal` from `axioms` under the apparatus.
/// Deterministic for fixed inputs; found trees always pass the checker.
pub fn search(
    goal: &Formula,
    axioms: &[Formula],
    app: &Apparatus,
    budget: &SearchBudget,
    oracles: &OracleTable,
) -> SearchOutcome {
    if matches!(app, Apparatus::Tab1) || !goal.is_sentence() {
        return SearchOutcome::Exhausted;
    }
    let accept = |tree: Option<ProofTree>| -> Option<ProofTree> {
        let tree = tree?;
        match check(&tree, goal, axioms, app) {
            Verdict::Valid => Some(tree),
            Verdict::Invalid(why) => {
                debug_assert!(false, "search produced an invalid tree: {why}");
                None
            }
        }
    };
    if let Some(t) = accept(direct_hit(goal, axioms)) {
        return SearchOutcome::Found(t);
    }
    if let Some(t) = accept(lem_construction(goal)) {
        return SearchOutcome::Found(t);
    }
    if let Some(t) = accept(run_planner(goal, axioms, budget, oracles)) {
        return SearchOutcome::Found(t);
    }
    if let Some(t) = accept(fallback(goal, axioms, app, budget)) {
        return SearchOutcome::Found(t);
    }
    SearchOutcome::Exhausted
}

/// Goal present verbatim in the basis: two nodes.
fn direct_hit(goal: &Formula, axioms: &[Formula]) -> Option<ProofTree> {
    let idx = axioms.iter().position(|a| a == goal)?;
    let mut tree = ProofTree::with_root(Formula::not(goal.clone()));
    let ax = tree.add_node(0, goal.clone(), Justification::ProperAxiom(idx));
    tree.add_closure(ax, ax, 0);
    Some(tree)
}

/// The five-node refutation of a negated excluded-middle instance,
/// valid under every apparatus including plain tableau.
fn lem_construction(goal: &Formula) -> Option<ProofTree> {
    let kernel = super::apparatus::lem_kernel(goal)?.clone();
    let mut tree = ProofTree::with_root(Formula::not(goal.clone()));
    let conj = tree.add_node(
        0,
        Formula::and(
            Formula::not(kernel.clone()),
            Formula::not(Formula::not(kernel.clone())),
        ),
        Justification::RuleApp {
            rule: RuleId::R2,
            ancestor: 0,
            aux: None,
        },
    );
    let neg = tree.add_node(
        conj,
        Formula::not(kernel.clone()),
        Justification::RuleApp {
            rule: RuleId::R1,
            ancestor: conj,
            aux: None,
        },
    );
    let negneg = tree.add_node(
        neg,
        Formula::not(Formula::not(kernel.clone())),
        Justification::RuleApp {
            rule: RuleId::R1,
            ancestor: conj,
            aux: None,
        },
    );
    let pos = tree.add_node(
        negneg,
        kernel,
        Justification::RuleApp {
            rule: RuleId::R2,
            ancestor: negneg,
            aux: None,
        },
    );
    tree.add_closure(pos, pos, neg);
    Some(tree)
}

fn run_planner(
    goal: &Formula,
    axioms: &[Formula],
    budget: &SearchBudget,
    oracles: &OracleTable,
) -> Option<ProofTree> {
    let mut planner = Planner::new(axioms, oracles, budget.max_nodes);
    match planner.plan(goal) {
        Ok(tree) => Some(tree),
        Err(PlanFail::Unsupported) | Err(PlanFail::Budget) => None,
    }
}

// ---------------------------------------------------------------------
// blind saturation

enum FallbackFail {
    Stuck,
    Budget,
}

struct Fallback<'a> {
    axioms: &'a [Formula],
    max_nodes: usize,
    max_depth: u32,
    lem_kernels: Vec<Formula>,
    next_param: usize,
}

#[derive(Clone)]
struct FBranch {
    tip: NodeId,
    /// canonical (bounded-expanded) sentence -> node holding it
    canon: HashMap<Formula, NodeId>,
    /// non-literal nodes awaiting decomposition
    queue: VecDeque<NodeId>,
    /// universal nodes available for repeated instantiation
    universals: Vec<NodeId>,
    used_instances: HashSet<(NodeId, Term)>,
    axiom_cursor: usize,
    lem_cursor: usize,
    round: u32,
    /// ground subterm pool, extended as the branch grows
    pool: Vec<Term>,
    /// node ids below this are already folded into the pool
    pool_mark: usize,
}

fn fallback(
    goal: &Formula,
    axioms: &[Formula],
    app: &Apparatus,
    budget: &SearchBudget,
) -> Option<ProofTree> {
    let mut engine = Fallback {
        axioms,
        max_nodes: budget.max_nodes,
        max_depth: budget.max_depth,
        lem_kernels: lem_candidates(goal, app),
        next_param: 0,
    };
    let mut tree = ProofTree::with_root(Formula::not(goal.clone()));
    let mut branch = FBranch {
        tip: 0,
        canon: HashMap::new(),
        queue: VecDeque::new(),
        universals: Vec::new(),
        used_instances: HashSet::new(),
        axiom_cursor: 0,
        lem_cursor: 0,
        round: 0,
        pool: vec![Term::zero(), Term::one()],
        pool_mark: 0,
    };
    engine.register(&tree, &mut branch, 0);
    match engine.close_branch(&mut tree, branch) {
        Ok(()) => Some(tree),
        Err(_) => None,
    }
}

/// Excluded-middle kernels to try: goal subformulas first, then filter
/// sentences in code order.
fn lem_candidates(goal: &Formula, app: &Apparatus) -> Vec<Formula> {
    match app {
        Apparatus::Tab | Apparatus::Tab1 => return Vec::new(),
        _ => {}
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    collect_subformulas(goal, &mut seen, &mut out);
    if let Apparatus::ZEnriched(ZFilter::Sentences(set)) = app {
        let mut listed: Vec<&Formula> = set.iter().collect();
        listed.sort_by_key(|f| encode_formula(f));
        for f in listed {
            if seen.insert(f.clone()) {
                out.push(f.clone());
            }
        }
    }
    out.retain(|kernel| app.admits_logical_axiom(&lem_instance(kernel)));
    out
}

fn collect_subformulas(f: &Formula, seen: &mut HashSet<Formula>, out: &mut Vec<Formula>) {
    if seen.insert(f.clone()) {
        out.push(f.clone());
    }
    match f {
        Formula::Atom(..) => {}
        Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => {
            collect_subformulas(g, seen, out)
        }
        Formula::BForall(_, _, g) | Formula::BExists(_, _, g) => collect_subformulas(g, seen, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            collect_subformulas(a, seen, out);
            collect_subformulas(b, seen, out);
        }
    }
}

impl<'a> Fallback<'a> {
    /// File a node into the branch bookkeeping.
    fn register(&mut self, tree: &ProofTree, branch: &mut FBranch, id: NodeId) {
        let sentence = &tree.nodes[id].sentence;
        branch.canon.insert(sentence.expand_bounded(), id);
        match sentence {
            Formula::Atom(..) => {}
            Formula::Not(inner) if matches!(**inner, Formula::Atom(..)) => {}
            Formula::Forall(..) | Formula::BForall(..) => branch.universals.push(id),
            _ => branch.queue.push_back(id),
        }
    }

    fn add(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut FBranch,
        sentence: Formula,
        just: Justification,
    ) -> Result<NodeId, FallbackFail> {
        if tree.nodes.len() >= self.max_nodes {
            return Err(FallbackFail::Budget);
        }
        let id = tree.add_node(branch.tip, sentence, just);
        branch.tip = id;
        self.register(tree, branch, id);
        Ok(id)
    }

    fn fresh_param(&mut self) -> String {
        self.next_param += 1;
        format!("q{}", self.next_param)
    }

    /// Drive one branch to closure. Mutates the shared tree; any failure
    /// aborts the whole attempt, so nothing is ever pruned.
    fn close_branch(&mut self, tree: &mut ProofTree, mut branch: FBranch) -> Result<(), FallbackFail> {
        loop {
            if let Some(id) = branch.queue.pop_front() {
                match self.decompose(tree, &mut branch, id)? {
                    Step::Closed => return Ok(()),
                    Step::Split(l, r) => {
                        let mut left = branch.clone();
                        left.tip = l;
                        self.register(tree, &mut left, l);
                        if let Some((phi, neg)) = self.closes_other(tree, &left, l) {
                            tree.add_closure(l, phi, neg);
                        } else {
                            self.close_branch(tree, left)?;
                        }
                        let mut right = branch;
                        right.tip = r;
                        self.register(tree, &mut right, r);
                        if let Some((phi, neg)) = self.closes_other(tree, &right, r) {
                            tree.add_closure(r, phi, neg);
                            return Ok(());
                        }
                        return self.close_branch(tree, right);
                    }
                    Step::Grew => continue,
                }
            }
            // saturation moves, one per pass
            if branch.axiom_cursor < self.axioms.len() {
                let ax = self.axioms[branch.axiom_cursor].clone();
                let idx = branch.axiom_cursor;
                branch.axiom_cursor += 1;
                if branch.canon.contains_key(&ax.expand_bounded()) {
                    continue;
                }
                let id = self.add(tree, &mut branch, ax, Justification::ProperAxiom(idx))?;
                if let Some((phi, neg)) = self.closes_other(tree, &branch, id) {
                    tree.add_closure(branch.tip, phi, neg);
                    return Ok(());
                }
                continue;
            }
            if let Some((uni, term)) = self.next_instantiation(tree, &mut branch) {
                branch.used_instances.insert((uni, term.clone()));
                let node = match &tree.nodes[uni].sentence {
                    Formula::Forall(v, body) => {
                        let inst = body.subst_var(v, &term);
                        self.add(
                            tree,
                            &mut branch,
                            inst,
                            Justification::RuleApp {
                                rule: RuleId::R5,
                                ancestor: uni,
                                aux: Some(RuleAux::Term(term)),
                            },
                        )?
                    }
                    Formula::BForall(v, bound, body) => {
                        let inst = Formula::implies(
                            Formula::leq(term.clone(), bound.clone()),
                            body.subst_var(v, &term),
                        );
                        self.add(
                            tree,
                            &mut branch,
                            inst,
                            Justification::RuleApp {
                                rule: RuleId::RA,
                                ancestor: uni,
                                aux: Some(RuleAux::Term(term)),
                            },
                        )?
                    }
                    _ => continue,
                };
                if let Some((phi, neg)) = self.closes_other(tree, &branch, node) {
                    tree.add_closure(branch.tip, phi, neg);
                    return Ok(());
                }
                continue;
            }
            if branch.lem_cursor < self.lem_kernels.len() {
                let kernel = self.lem_kernels[branch.lem_cursor].clone();
                branch.lem_cursor += 1;
                let inst = lem_instance(&kernel);
                if branch.canon.contains_key(&inst.expand_bounded()) {
                    continue;
                }
                self.add(tree, &mut branch, inst, Justification::LogicalAxiom)?;
                continue;
            }
            if branch.round < self.max_depth {
                branch.round += 1;
                continue;
            }
            return Err(FallbackFail::Stuck);
        }
    }

    /// Closure check where the fresh node may pair with any earlier one.
    fn closes_other(
        &self,
        tree: &ProofTree,
        branch: &FBranch,
        id: NodeId,
    ) -> Option<(NodeId, NodeId)> {
        let c = tree.nodes[id].sentence.expand_bounded();
        if let Formula::Not(inner) = &c {
            if let Some(&pos) = branch.canon.get(inner) {
                if pos != id {
                    return Some((pos, id));
                }
            }
        }
        if let Some(&neg) = branch.canon.get(&Formula::not(c)) {
            if neg != id {
                return Some((id, neg));
            }
        }
        None
    }

    fn decompose(
        &mut self,
        tree: &mut ProofTree,
        branch: &mut FBranch,
        id: NodeId,
    ) -> Result<Step, FallbackFail> {
        let f = tree.nodes[id].sentence.clone();
        let rule = |rule, aux| Justification::RuleApp {
            rule,
            ancestor: id,
            aux,
        };
        match &f {
            Formula::And(a, b) => {
                let n1 = self.add(tree, branch, (**a).clone(), rule(RuleId::R1, None))?;
                if let Some((phi, neg)) = self.closes_other(tree, branch, n1) {
                    tree.add_closure(branch.tip, phi, neg);
                    return Ok(Step::Closed);
                }
                let n2 = self.add(tree, branch, (**b).clone(), rule(RuleId::R1, None))?;
                if let Some((phi, neg)) = self.closes_other(tree, branch, n2) {
                    tree.add_closure(branch.tip, phi, neg);
                    return Ok(Step::Closed);
                }
                Ok(Step::Grew)
            }
            Formula::Or(a, b) => {
                if tree.nodes.len() + 2 > self.max_nodes {
                    return Err(FallbackFail::Budget);
                }
                let l = tree.add_node(branch.tip, (**a).clone(), rule(RuleId::R3, None));
                let r = tree.add_node(branch.tip, (**b).clone(), rule(RuleId::R3, None));
                Ok(Step::Split(l, r))
            }
            Formula::Implies(a, b) => {
                if tree.nodes.len() + 2 > self.max_nodes {
                    return Err(FallbackFail::Budget);
                }
                let l = tree.add_node(
                    branch.tip,
                    Formula::not((**a).clone()),
                    rule(RuleId::R4, None),
                );
                let r = tree.add_node(branch.tip, (**b).clone(), rule(RuleId::R4, None));
                Ok(Step::Split(l, r))
            }
            Formula::Exists(v, body) => {
                let p = self.fresh_param();
                let inst = body.subst_var(v, &Term::Param(p.clone()));
                let n = self.add(tree, branch, inst, rule(RuleId::R6, Some(RuleAux::Param(p))))?;
                if let Some((phi, neg)) = self.closes_other(tree, branch, n) {
                    tree.add_closure(branch.tip, phi, neg);
                    return Ok(Step::Closed);
                }
                Ok(Step::Grew)
            }
            Formula::BExists(v, bound, body) => {
                let p = self.fresh_param();
                let pt = Term::Param(p.clone());
                let inst = Formula::and(
                    Formula::leq(pt.clone(), bound.clone()),
                    body.subst_var(v, &pt),
                );
                let n = self.add(tree, branch, inst, rule(RuleId::RB, Some(RuleAux::Param(p))))?;
                if let Some((phi, neg)) = self.closes_other(tree, branch, n) {
                    tree.add_closure(branch.tip, phi, neg);
                    return Ok(Step::Closed);
                }
                Ok(Step::Grew)
            }
            Formula::Not(inner) => {
                let image = match &**inner {
                    Formula::Not(g) => (**g).clone(),
                    Formula::Or(a, b) => Formula::and(
                        Formula::not((**a).clone()),
                        Formula::not((**b).clone()),
                    ),
                    Formula::Implies(a, b) => {
                        Formula::and((**a).clone(), Formula::not((**b).clone()))
                    }
                    Formula::And(a, b) => Formula::or(
                        Formula::not((**a).clone()),
                        Formula::not((**b).clone()),
                    ),
                    Formula::Exists(v, body) => {
                        Formula::forall(v.clone(), Formula::not((**body).clone()))
                    }
                    Formula::Forall(v, body) => {
                        Formula::exists(v.clone(), Formula::not((**body).clone()))
                    }
                    Formula::BExists(v, bound, body) => Formula::bforall(
                        v.clone(),
                        bound.clone(),
                        Formula::not((**body).clone()),
                    ),
                    Formula::BForall(v, bound, body) => Formula::bexists(
                        v.clone(),
                        bound.clone(),
                        Formula::not((**body).clone()),
                    ),
                    Formula::Atom(..) => return Ok(Step::Grew),
                };
                let n = self.add(tree, branch, image, rule(RuleId::R2, None))?;
                if let Some((phi, neg)) = self.closes_other(tree, branch, n) {
                    tree.add_closure(branch.tip, phi, neg);
                    return Ok(Step::Closed);
                }
                Ok(Step::Grew)
            }
            Formula::Atom(..) | Formula::Forall(..) | Formula::BForall(..) => Ok(Step::Grew),
        }
    }

    /// Next (universal node, term) pair not yet tried on this branch.
    fn next_instantiation(
        &self,
        tree: &ProofTree,
        branch: &mut FBranch,
    ) -> Option<(NodeId, Term)> {
        Self::extend_pool(tree, branch);
        for k in 2..2 + u64::from(branch.round) {
            let t = nat_term(&BigUint::from(k));
            if !branch.pool.contains(&t) {
                branch.pool.push(t);
            }
        }
        for &uni in &branch.universals {
            for t in &branch.pool {
                if !branch.used_instances.contains(&(uni, t.clone())) {
                    return Some((uni, t.clone()));
                }
            }
        }
        None
    }

    /// Fold ground subterms of branch nodes not yet scanned into the
    /// pool. Node ids grow along a branch, so one high-water mark works.
    fn extend_pool(tree: &ProofTree, branch: &mut FBranch) {
        let mut fresh: Vec<NodeId> = tree
            .ancestors_inclusive(branch.tip)
            .into_iter()
            .take_while(|&id| id >= branch.pool_mark)
            .collect();
        fresh.reverse();
        for id in fresh {
            for t in tree.nodes[id].sentence.terms() {
                let mut subs = Vec::new();
                t.subterms(&mut subs);
                for s in subs {
                    if s.is_ground() && !branch.pool.contains(&s) {
                        branch.pool.push(s);
                    }
                }
            }
        }
        branch.pool_mark = branch.tip + 1;
    }
}

enum Step {
    Closed,
    Grew,
    Split(NodeId, NodeId),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::parse::parse_formula;

    fn tab_search(goal: &str, axioms: &[&str]) -> SearchOutcome {
        let goal = parse_formula(goal).unwrap();
        let axioms: Vec<Formula> = axioms.iter().map(|a| parse_formula(a).unwrap()).collect();
        search(
            &goal,
            &axioms,
            &Apparatus::Tab,
            &SearchBudget::default(),
            &OracleTable::new(),
        )
    }

    #[test]
    fn excluded_middle_is_a_tab_theorem() {
        let out = tab_search("(or (= 0 0) (not (= 0 0)))", &[]);
        match out {
            SearchOutcome::Found(t) => assert!(t.nodes.len() <= 6),
            SearchOutcome::Exhausted => panic!("expected a proof"),
        }
    }

    #[test]
    fn axiom_goals_are_two_node_proofs() {
        let out = tab_search("(leq 0 1)", &["(leq 0 1)"]);
        assert!(matches!(out, SearchOutcome::Found(t) if t.nodes.len() == 2));
    }

    #[test]
    fn falsehood_from_nothing_exhausts() {
        assert_eq!(tab_search("(= 0 1)", &[]), SearchOutcome::Exhausted);
        let goal = parse_formula("(= 0 1)").unwrap();
        let out = search(
            &goal,
            &[],
            &Apparatus::Xtab,
            &SearchBudget::default(),
            &OracleTable::new(),
        );
        assert_eq!(out, SearchOutcome::Exhausted);
    }

    #[test]
    fn modus_ponens_chain_closes() {
        let out = tab_search(
            "(= 1 1)",
            &["(= 0 0)", "(implies (= 0 0) (= 1 1))"],
        );
        assert!(matches!(out, SearchOutcome::Found(_)));
    }

    #[test]
    fn propositional_branching() {
        // goal b from axioms (a or b) and (not a)
        let out = tab_search(
            "(leq 1 1)",
            &["(or (= 0 0) (leq 1 1))", "(not (= 0 0))"],
        );
        assert!(matches!(out, SearchOutcome::Found(_)));
    }
}
