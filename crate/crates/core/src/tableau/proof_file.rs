//! The on-disk proof format.
//!
//! Header lines `goal <sexpr>`, `basis <path>`, `apparatus <spec>`, then
//! one node per line `id parent justification sexpr` and one
//! `close leaf phi negphi` line per branch. `#` starts a comment. Paths
//! must not contain whitespace or parentheses.

use super::tree::{just_from_sexpr, Closure, Justification, Node, ProofTree, RuleAux, RuleId};
use crate::lstar::ast::Formula;
use crate::lstar::parse::{self, ParseError, SExpr};
use std::fmt::Write as _;

/// Apparatus selector as written in files and on the command line:
/// `tab`, `xtab`, `tab1`, or `z:<listfile>` naming a file of sentences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ApparatusSpec {
    Tab,
    Xtab,
    Tab1,
    ZFile(String),
}

impl ApparatusSpec {
    pub fn parse(s: &str) -> Option<ApparatusSpec> {
        match s {
            "tab" => Some(ApparatusSpec::Tab),
            "xtab" => Some(ApparatusSpec::Xtab),
            "tab1" => Some(ApparatusSpec::Tab1),
            _ => s.strip_prefix("z:").map(|p| ApparatusSpec::ZFile(p.to_string())),
        }
    }
}

impl std::fmt::Display for ApparatusSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ApparatusSpec::Tab => write!(f, "tab"),
            ApparatusSpec::Xtab => write!(f, "xtab"),
            ApparatusSpec::Tab1 => write!(f, "tab1"),
            ApparatusSpec::ZFile(p) => write!(f, "z:{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofFile {
    pub goal: Formula,
    pub basis_path: String,
    pub apparatus: ApparatusSpec,
    pub tree: ProofTree,
}

pub fn write_proof_file(pf: &ProofFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "goal {}", pf.goal);
    let _ = writeln!(out, "basis {}", pf.basis_path);
    let _ = writeln!(out, "apparatus {}", pf.apparatus);
    for n in &pf.tree.nodes {
        let parent = match n.parent {
            Some(p) => p.to_string(),
            None => "_".to_string(),
        };
        let _ = writeln!(out, "{} {} {} {}", n.id, parent, just_text(&n.just), n.sentence);
    }
    let mut closures = pf.tree.closures.clone();
    closures.sort_by_key(|c| c.leaf);
    for c in &closures {
        let _ = writeln!(out, "close {} {} {}", c.leaf, c.phi, c.neg_phi);
    }
    out
}

fn just_text(j: &Justification) -> String {
    match j {
        Justification::NegatedGoal => "(negatedgoal)".into(),
        Justification::ProperAxiom(i) => format!("(axiom {i})"),
        Justification::LogicalAxiom => "(lem)".into(),
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

fn line_error(lineno: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line: lineno,
        col: 1,
        msg: msg.into(),
    }
}

fn expect_num(e: &SExpr, lineno: usize) -> Result<usize, ParseError> {
    e.as_sym()
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| line_error(lineno, "expected a number"))
}

pub fn parse_proof_file(text: &str) -> Result<ProofFile, ParseError> {
    let mut goal = None;
    let mut basis_path = None;
    let mut apparatus = None;
    let mut tree = ProofTree::default();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let items = parse::read_all(line).map_err(|e| line_error(lineno, e.msg))?;
        match items.first().and_then(SExpr::as_sym) {
            Some("goal") => {
                if items.len() != 2 {
                    return Err(line_error(lineno, "goal takes one sexpr"));
                }
                goal = Some(
                    parse::formula_from_sexpr(&items[1]).map_err(|e| line_error(lineno, e.msg))?,
                );
            }
            Some("basis") => {
                let p = items
                    .get(1)
                    .and_then(SExpr::as_sym)
                    .ok_or_else(|| line_error(lineno, "basis takes a path"))?;
                basis_path = Some(p.to_string());
            }
            Some("apparatus") => {
                let spec = items
                    .get(1)
                    .and_then(SExpr::as_sym)
                    .and_then(ApparatusSpec::parse)
                    .ok_or_else(|| line_error(lineno, "unknown apparatus"))?;
                apparatus = Some(spec);
            }
            Some("close") => {
                if items.len() != 4 {
                    return Err(line_error(lineno, "close takes 3 numbers"));
                }
                tree.closures.push(Closure {
                    leaf: expect_num(&items[1], lineno)?,
                    phi: expect_num(&items[2], lineno)?,
                    neg_phi: expect_num(&items[3], lineno)?,
                });
            }
            _ => {
                // node line: id parent justification sentence
                if items.len() != 4 {
                    return Err(line_error(lineno, "node line takes 4 fields"));
                }
                let id = expect_num(&items[0], lineno)?;
                let parent = match items[1].as_sym() {
                    Some("_") => None,
                    _ => Some(expect_num(&items[1], lineno)?),
                };
                let just = just_from_sexpr(&items[2]).map_err(|e| line_error(lineno, e.msg))?;
                let sentence =
                    parse::formula_from_sexpr(&items[3]).map_err(|e| line_error(lineno, e.msg))?;
                if id != tree.nodes.len() {
                    return Err(line_error(lineno, "node ids must be sequential from 0"));
                }
                tree.nodes.push(Node {
                    id,
                    parent,
                    sentence,
                    just,
                });
            }
        }
    }
    Ok(ProofFile {
        goal: goal.ok_or_else(|| line_error(1, "missing goal line"))?,
        basis_path: basis_path.ok_or_else(|| line_error(1, "missing basis line"))?,
        apparatus: apparatus.ok_or_else(|| line_error(1, "missing apparatus line"))?,
        tree,
    })
}

/// Z-list files: one sentence per line, `#` comments.
pub fn parse_sentence_lines(text: &str) -> Result<Vec<Formula>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = crate::lstar::parse::parse_sentence(line).map_err(|mut e| {
            e.line = i + 1;
            e
        })?;
        out.push(f);
    }
    Ok(out)
}

// RuleId is used through just_text's serialization.
#[allow(unused_imports)]
use RuleId as _;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::parse::parse_formula;

    #[test]
    fn proof_file_round_trips() {
        let goal = parse_formula("(= 0 0)").unwrap();
        let mut tree = ProofTree::with_root(Formula::not(goal.clone()));
        let ax = tree.add_node(0, goal.clone(), Justification::ProperAxiom(0));
        tree.add_closure(ax, ax, 0);
        let pf = ProofFile {
            goal,
            basis_path: "basis.axb".into(),
            apparatus: ApparatusSpec::Tab,
            tree,
        };
        let text = write_proof_file(&pf);
        let back = parse_proof_file(&text).unwrap();
        assert_eq!(back, pf);
        assert_eq!(write_proof_file(&back), text);
    }

    #[test]
    fn apparatus_specs_parse() {
        assert_eq!(ApparatusSpec::parse("tab"), Some(ApparatusSpec::Tab));
        assert_eq!(ApparatusSpec::parse("xtab"), Some(ApparatusSpec::Xtab));
        assert_eq!(ApparatusSpec::parse("tab1"), Some(ApparatusSpec::Tab1));
        assert_eq!(
            ApparatusSpec::parse("z:allowed.zlist"),
            Some(ApparatusSpec::ZFile("allowed.zlist".into()))
        );
        assert_eq!(ApparatusSpec::parse("resolution"), None);
    }

    #[test]
    fn corrupted_node_is_reported() {
        let text = "goal (= 0 0)\nbasis b.axb\napparatus tab\n0 _ (negatedgoal) (not (= 0 0))\n2 0 (axiom 0) (= 0 0)\n";
        let err = parse_proof_file(text).unwrap_err();
        assert_eq!(err.line, 5);
    }
}
