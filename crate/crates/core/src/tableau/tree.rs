//! Tableau proof objects.
//!
//! A proof tree refutes the negation of its goal: the root holds the
//! negated goal, every other node is a proper axiom, an admitted logical
//! axiom, or a rule application citing an ancestor on the same branch,
//! and every root-to-leaf branch records a contradictory sentence pair.

use crate::lstar::ast::{Formula, Term};
use crate::lstar::parse::{self, ParseError, SExpr};
use std::collections::BTreeMap;
use std::fmt;

pub type NodeId = usize;

/// The elimination rules: 1 conjunction, 2 negation forms, 3 and 4 the
/// branching rules for disjunction and implication, 5 and 6 the
/// quantifier rules, `a` and `b` their bounded hybrids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    RA,
    RB,
}

impl RuleId {
    pub fn name(self) -> &'static str {
        match self {
            RuleId::R1 => "1",
            RuleId::R2 => "2",
            RuleId::R3 => "3",
            RuleId::R4 => "4",
            RuleId::R5 => "5",
            RuleId::R6 => "6",
            RuleId::RA => "a",
            RuleId::RB => "b",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        Some(match s {
            "1" => RuleId::R1,
            "2" => RuleId::R2,
            "3" => RuleId::R3,
            "4" => RuleId::R4,
            "5" => RuleId::R5,
            "6" => RuleId::R6,
            "a" => RuleId::RA,
            "b" => RuleId::RB,
            _ => return None,
        })
    }

    pub fn branches(self) -> bool {
        matches!(self, RuleId::R3 | RuleId::R4)
    }
}

/// Extra datum a rule application carries: the instantiation term for
/// rules 5/a, the introduced parameter for rules 6/b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleAux {
    Term(Term),
    Param(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// Root only: the temporary negated hypothesis.
    NegatedGoal,
    /// Member of the axiom basis, by index into the materialized list.
    ProperAxiom(usize),
    /// An admitted excluded-middle instance; which shapes are accepted
    /// depends on the apparatus.
    LogicalAxiom,
    RuleApp {
        rule: RuleId,
        ancestor: NodeId,
        aux: Option<RuleAux>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: NodeId,
    pub parent: Option<NodeId>,
    pub sentence: Formula,
    pub just: Justification,
}

/// Closure witness for one leaf: two branch nodes holding a sentence and
/// its exact negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Closure {
    pub leaf: NodeId,
    pub phi: NodeId,
    pub neg_phi: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProofTree {
    pub nodes: Vec<Node>,
    pub closures: Vec<Closure>,
}

/// Proof size under the two measures the harness reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProofSize {
    pub nodes: usize,
    pub symbols: usize,
}

impl ProofTree {
    /// Start a tree from the negated goal.
    pub fn with_root(negated_goal: Formula) -> ProofTree {
        ProofTree {
            nodes: vec![Node {
                id: 0,
                parent: None,
                sentence: negated_goal,
                just: Justification::NegatedGoal,
            }],
            closures: Vec::new(),
        }
    }

    pub fn add_node(&mut self, parent: NodeId, sentence: Formula, just: Justification) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(Node {
            id,
            parent: Some(parent),
            sentence,
            just,
        });
        id
    }

    pub fn add_closure(&mut self, leaf: NodeId, phi: NodeId, neg_phi: NodeId) {
        self.closures.push(Closure { leaf, phi, neg_phi });
    }

    pub fn node(&self, id: NodeId) -> Option<&Node> {
        self.nodes.get(id)
    }

    /// Child lists in id order.
    pub fn children(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.nodes.len()];
        for n in &self.nodes {
            if let Some(p) = n.parent {
                if p < out.len() {
                    out[p].push(n.id);
                }
            }
        }
        out
    }

    /// Walk from `id` up to the root, inclusive.
    pub fn ancestors_inclusive(&self, mut id: NodeId) -> Vec<NodeId> {
        let mut out = vec![id];
        while let Some(p) = self.nodes.get(id).and_then(|n| n.parent) {
            out.push(p);
            id = p;
        }
        out
    }

    pub fn is_proper_ancestor(&self, anc: NodeId, of: NodeId) -> bool {
        let mut cur = self.nodes.get(of).and_then(|n| n.parent);
        while let Some(p) = cur {
            if p == anc {
                return true;
            }
            cur = self.nodes.get(p).and_then(|n| n.parent);
        }
        false
    }

    pub fn size(&self) -> ProofSize {
        ProofSize {
            nodes: self.nodes.len(),
            symbols: self.nodes.iter().map(|n| n.sentence.token_count()).sum(),
        }
    }

    /// Rename parameters to `p1, p2, ...` in discovery order (node order,
    /// aux fields included) so that serialized proofs are bit-stable.
    pub fn rename_params_canonical(&mut self) {
        let mut mapping: BTreeMap<String, String> = BTreeMap::new();
        let discover = |name: &str, mapping: &mut BTreeMap<String, String>| {
            if !mapping.contains_key(name) {
                let fresh = format!("p{}", mapping.len() + 1);
                mapping.insert(name.to_string(), fresh);
            }
        };
        for n in &self.nodes {
            if let Justification::RuleApp {
                aux: Some(RuleAux::Param(p)),
                ..
            } = &n.just
            {
                discover(p, &mut mapping);
            }
            for p in n.sentence.params() {
                discover(&p, &mut mapping);
            }
        }
        if mapping.iter().all(|(k, v)| k == v) {
            return;
        }
        self.apply_param_map(&mapping);
    }

    /// Simultaneous parameter rename; the map should be total over the
    /// tree's parameters so targets cannot collide with leftovers.
    pub(crate) fn apply_param_map(&mut self, mapping: &BTreeMap<String, String>) {
        for n in &mut self.nodes {
            n.sentence = rename_params_formula(&n.sentence, mapping);
            if let Justification::RuleApp { aux: Some(aux), .. } = &mut n.just {
                match aux {
                    RuleAux::Param(p) => {
                        if let Some(v) = mapping.get(p) {
                            *p = v.clone();
                        }
                    }
                    RuleAux::Term(t) => *t = rename_params_term(t, mapping),
                }
            }
        }
    }

    /// Single-line canonical form, the basis of the proof numbering.
    pub fn to_canonical_sexpr(&self) -> String {
        let mut out = String::from("(proof");
        for n in &self.nodes {
            out.push_str(&format!(
                " (node {} {} {} {})",
                n.id,
                match n.parent {
                    Some(p) => p.to_string(),
                    None => "_".to_string(),
                },
                just_to_sexpr(&n.just),
                n.sentence
            ));
        }
        let mut closures = self.closures.clone();
        closures.sort_by_key(|c| c.leaf);
        for c in &closures {
            out.push_str(&format!(" (close {} {} {})", c.leaf, c.phi, c.neg_phi));
        }
        out.push(')');
        out
    }

    pub fn from_canonical_sexpr(text: &str) -> Result<ProofTree, ParseError> {
        let e = parse::read_single(text)?;
        let items = e
            .as_list()
            .ok_or_else(|| ParseError::new(e.pos(), "expected a proof list"))?;
        if items.first().and_then(SExpr::as_sym) != Some("proof") {
            return Err(ParseError::new(e.pos(), "expected (proof ...)"));
        }
        let mut tree = ProofTree::default();
        for item in &items[1..] {
            let parts = item
                .as_list()
                .ok_or_else(|| ParseError::new(item.pos(), "expected (node ...) or (close ...)"))?;
            match parts.first().and_then(SExpr::as_sym) {
                Some("node") => {
                    if parts.len() != 5 {
                        return Err(ParseError::new(item.pos(), "node takes 4 fields"));
                    }
                    let id = parse_usize(&parts[1])?;
                    let parent = match parts[2].as_sym() {
                        Some("_") => None,
                        _ => Some(parse_usize(&parts[2])?),
                    };
                    let just = just_from_sexpr(&parts[3])?;
                    let sentence = parse::formula_from_sexpr(&parts[4])?;
                    if id != tree.nodes.len() {
                        return Err(ParseError::new(item.pos(), "node ids must be sequential"));
                    }
                    tree.nodes.push(Node {
                        id,
                        parent,
                        sentence,
                        just,
                    });
                }
                Some("close") => {
                    if parts.len() != 4 {
                        return Err(ParseError::new(item.pos(), "close takes 3 fields"));
                    }
                    tree.closures.push(Closure {
                        leaf: parse_usize(&parts[1])?,
                        phi: parse_usize(&parts[2])?,
                        neg_phi: parse_usize(&parts[3])?,
                    });
                }
                _ => return Err(ParseError::new(item.pos(), "expected node or close")),
            }
        }
        Ok(tree)
    }
}

fn rename_params_term(t: &Term, map: &BTreeMap<String, String>) -> Term {
    match t {
        Term::Param(p) => match map.get(p) {
            Some(v) => Term::Param(v.clone()),
            None => t.clone(),
        },
        Term::Const(_) | Term::Var(_) => t.clone(),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| rename_params_term(a, map)).collect()),
        Term::OracleApp(name, args) => Term::OracleApp(
            name.clone(),
            args.iter().map(|a| rename_params_term(a, map)).collect(),
        ),
    }
}

fn rename_params_formula(f: &Formula, map: &BTreeMap<String, String>) -> Formula {
    match f {
        Formula::Atom(rel, args) => Formula::Atom(
            rel.clone(),
            args.iter().map(|t| rename_params_term(t, map)).collect(),
        ),
        Formula::Not(g) => Formula::not(rename_params_formula(g, map)),
        Formula::And(a, b) => Formula::and(rename_params_formula(a, map), rename_params_formula(b, map)),
        Formula::Or(a, b) => Formula::or(rename_params_formula(a, map), rename_params_formula(b, map)),
        Formula::Implies(a, b) => {
            Formula::implies(rename_params_formula(a, map), rename_params_formula(b, map))
        }
        Formula::Forall(v, g) => Formula::forall(v.clone(), rename_params_formula(g, map)),
        Formula::Exists(v, g) => Formula::exists(v.clone(), rename_params_formula(g, map)),
        Formula::BForall(v, bound, g) => Formula::bforall(
            v.clone(),
            rename_params_term(bound, map),
            rename_params_formula(g, map),
        ),
        Formula::BExists(v, bound, g) => Formula::bexists(
            v.clone(),
            rename_params_term(bound, map),
            rename_params_formula(g, map),
        ),
    }
}

fn just_to_sexpr(j: &Justification) -> String {
    match j {
        Justification::NegatedGoal => "(negatedgoal)".to_string(),
        Justification::ProperAxiom(i) => format!("(axiom {i})"),
        Justification::LogicalAxiom => "(lem)".to_string(),
        Justification::RuleApp {
            rule,
            ancestor,
            aux,
        } => match aux {
            None => format!("(rule {} {})", rule.name(), ancestor),
            Some(RuleAux::Term(t)) => format!("(rule {} {} (term {}))", rule.name(), ancestor, t),
            Some(RuleAux::Param(p)) => format!("(rule {} {} (param {}))", rule.name(), ancestor, p),
        },
    }
}

fn parse_usize(e: &SExpr) -> Result<usize, ParseError> {
    e.as_sym()
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| ParseError::new(e.pos(), "expected a number"))
}

pub(crate) fn just_from_sexpr(e: &SExpr) -> Result<Justification, ParseError> {
    let parts = e
        .as_list()
        .ok_or_else(|| ParseError::new(e.pos(), "expected a justification list"))?;
    match parts.first().and_then(SExpr::as_sym) {
        Some("negatedgoal") => Ok(Justification::NegatedGoal),
        Some("axiom") if parts.len() == 2 => Ok(Justification::ProperAxiom(parse_usize(&parts[1])?)),
        Some("lem") => Ok(Justification::LogicalAxiom),
        Some("rule") if parts.len() == 3 || parts.len() == 4 => {
            let rule = parts[1]
                .as_sym()
                .and_then(RuleId::from_name)
                .ok_or_else(|| ParseError::new(parts[1].pos(), "unknown rule id"))?;
            let ancestor = parse_usize(&parts[2])?;
            let aux = match parts.get(3) {
                None => None,
                Some(a) => {
                    let inner = a
                        .as_list()
                        .ok_or_else(|| ParseError::new(a.pos(), "expected (term ..) or (param ..)"))?;
                    match inner.first().and_then(SExpr::as_sym) {
                        Some("term") if inner.len() == 2 => {
                            Some(RuleAux::Term(parse::term_from_sexpr(&inner[1])?))
                        }
                        Some("param") if inner.len() == 2 => {
                            let name = inner[1]
                                .as_sym()
                                .ok_or_else(|| ParseError::new(inner[1].pos(), "expected a name"))?;
                            Some(RuleAux::Param(name.to_string()))
                        }
                        _ => return Err(ParseError::new(a.pos(), "bad rule payload")),
                    }
                }
            };
            Ok(Justification::RuleApp {
                rule,
                ancestor,
                aux,
            })
        }
        _ => Err(ParseError::new(e.pos(), "unknown justification")),
    }
}

impl fmt::Display for ProofTree {
    /// Indented pretty form for terminal output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let children = self.children();
        let mut stack = vec![(0usize, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            let n = &self.nodes[id];
            writeln!(
                f,
                "{}[{}] {} {}",
                "  ".repeat(depth),
                id,
                just_to_sexpr(&n.just),
                n.sentence
            )?;
            for &c in children[id].iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        for c in &self.closures {
            writeln!(f, "close leaf={} phi={} negphi={}", c.leaf, c.phi, c.neg_phi)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::parse::parse_formula;

    fn tiny_tree() -> ProofTree {
        let goal = parse_formula("(= 0 0)").unwrap();
        let mut t = ProofTree::with_root(Formula::not(goal.clone()));
        let ax = t.add_node(0, goal, Justification::ProperAxiom(0));
        t.add_closure(ax, ax, 0);
        t
    }

    #[test]
    fn canonical_sexpr_round_trips() {
        let t = tiny_tree();
        let text = t.to_canonical_sexpr();
        let back = ProofTree::from_canonical_sexpr(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_canonical_sexpr(), text);
    }

    #[test]
    fn sizes_count_tokens() {
        let t = tiny_tree();
        let s = t.size();
        assert_eq!(s.nodes, 2);
        // root (not (= 0 0)) has 4 tokens, axiom (= 0 0) has 3
        assert_eq!(s.symbols, 7);
    }

    #[test]
    fn param_renaming_is_canonical() {
        let goal = parse_formula("(= 0 0)").unwrap();
        let mut t = ProofTree::with_root(Formula::not(goal.clone()));
        let e = t.add_node(
            0,
            parse_formula("(= $zulu 0)").unwrap(),
            Justification::RuleApp {
                rule: RuleId::R6,
                ancestor: 0,
                aux: Some(RuleAux::Param("zulu".into())),
            },
        );
        let _ = e;
        t.rename_params_canonical();
        assert_eq!(t.nodes[1].sentence, parse_formula("(= $p1 0)").unwrap());
        match &t.nodes[1].just {
            Justification::RuleApp {
                aux: Some(RuleAux::Param(p)),
                ..
            } => assert_eq!(p, "p1"),
            other => panic!("unexpected justification {other:?}"),
        }
    }
}
