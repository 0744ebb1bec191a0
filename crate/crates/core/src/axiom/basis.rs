//! Named axiom bases with provenance tags and oracle registrations.

use crate::lstar::ast::{Formula, Rel, Term};
use crate::lstar::eval::OracleTable;
use crate::lstar::parse::{parse_sentence, ParseError};
use thiserror::Error;

/// Where an axiom came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxiomTag {
    Group0,
    Group1,
    Group2,
    Group3,
    Totality,
    User,
}

impl AxiomTag {
    pub fn name(self) -> &'static str {
        match self {
            AxiomTag::Group0 => "group0",
            AxiomTag::Group1 => "group1",
            AxiomTag::Group2 => "group2",
            AxiomTag::Group3 => "group3",
            AxiomTag::Totality => "totality",
            AxiomTag::User => "user",
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BasisError {
    #[error("axiom has free variables: {0}")]
    NotASentence(String),
    #[error("axiom uses unregistered oracle symbol '{0}'")]
    UnknownOracle(String),
    #[error("{0}")]
    Parse(String),
}

/// A finite list of proper axioms plus the oracle table interpreting any
/// oracle symbols they mention. Immutable once built, except for
/// materializing generator instances during construction.
#[derive(Clone, Default)]
pub struct AxiomBasis {
    pub name: String,
    axioms: Vec<Formula>,
    tags: Vec<AxiomTag>,
    oracles: OracleTable,
    /// Reflection generator: oracle symbol plus the source axioms it
    /// certifies proofs against. Instances materialize on demand.
    pub(crate) group2: Option<(String, Vec<Formula>)>,
}

impl AxiomBasis {
    pub fn new(name: impl Into<String>) -> AxiomBasis {
        AxiomBasis {
            name: name.into(),
            ..AxiomBasis::default()
        }
    }

    pub fn with_oracles(name: impl Into<String>, oracles: OracleTable) -> AxiomBasis {
        AxiomBasis {
            name: name.into(),
            axioms: Vec::new(),
            tags: Vec::new(),
            oracles,
            group2: None,
        }
    }

    pub fn axioms(&self) -> &[Formula] {
        &self.axioms
    }

    pub fn tags(&self) -> &[AxiomTag] {
        &self.tags
    }

    pub fn oracles(&self) -> &OracleTable {
        &self.oracles
    }

    pub fn oracles_mut(&mut self) -> &mut OracleTable {
        &mut self.oracles
    }

    pub fn set_group2(&mut self, oracle_symbol: String, source_axioms: Vec<Formula>) {
        self.group2 = Some((oracle_symbol, source_axioms));
    }

    pub fn group2_symbol(&self) -> Option<&str> {
        self.group2.as_ref().map(|(s, _)| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.axioms.contains(f)
    }

    /// Append one axiom after validating it.
    pub fn push(&mut self, axiom: Formula, tag: AxiomTag) -> Result<usize, BasisError> {
        if !axiom.is_sentence() {
            return Err(BasisError::NotASentence(axiom.to_string()));
        }
        if let Some(sym) = self.first_unregistered_oracle(&axiom) {
            return Err(BasisError::UnknownOracle(sym));
        }
        self.axioms.push(axiom);
        self.tags.push(tag);
        Ok(self.axioms.len() - 1)
    }

    pub fn push_all(
        &mut self,
        axioms: impl IntoIterator<Item = Formula>,
        tag: AxiomTag,
    ) -> Result<(), BasisError> {
        for a in axioms {
            self.push(a, tag)?;
        }
        Ok(())
    }

    fn first_unregistered_oracle(&self, f: &Formula) -> Option<String> {
        let mut missing = None;
        visit_oracles(f, &mut |name, is_pred| {
            if missing.is_none() {
                let known = if is_pred {
                    self.oracles.has_pred(name)
                } else {
                    self.oracles.has_fn(name)
                };
                if !known {
                    missing = Some(name.to_string());
                }
            }
        });
        missing
    }
}

impl std::fmt::Debug for AxiomBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AxiomBasis")
            .field("name", &self.name)
            .field("axioms", &self.axioms.len())
            .finish()
    }
}

fn visit_oracles(f: &Formula, visit: &mut impl FnMut(&str, bool)) {
    match f {
        Formula::Atom(rel, args) => {
            if let Rel::Oracle(name) = rel {
                visit(name, true);
            }
            for t in args {
                visit_oracle_terms(t, visit);
            }
        }
        Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => visit_oracles(g, visit),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            visit_oracles(a, visit);
            visit_oracles(b, visit);
        }
        Formula::BForall(_, bound, g) | Formula::BExists(_, bound, g) => {
            visit_oracle_terms(bound, visit);
            visit_oracles(g, visit);
        }
    }
}

fn visit_oracle_terms(t: &Term, visit: &mut impl FnMut(&str, bool)) {
    match t {
        Term::OracleApp(name, args) => {
            visit(name, false);
            for a in args {
                visit_oracle_terms(a, visit);
            }
        }
        Term::App(_, args) => {
            for a in args {
                visit_oracle_terms(a, visit);
            }
        }
        _ => {}
    }
}

/// Parsed form of a basis file: directives plus explicit sentences.
/// Lines: `group0`, `group1`, `group2 <path>`, `group3`, `totality`, one
/// sentence per line otherwise; `#` comments.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxbFile {
    pub group0: bool,
    pub group1: bool,
    pub group2_beta: Option<String>,
    pub group3: bool,
    pub totality: bool,
    pub sentences: Vec<Formula>,
}

pub fn parse_axb(text: &str) -> Result<AxbFile, ParseError> {
    let mut out = AxbFile::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["group0"] => out.group0 = true,
            ["group1"] => out.group1 = true,
            ["group2", path] => out.group2_beta = Some((*path).to_string()),
            ["group3"] => out.group3 = true,
            ["totality"] => out.totality = true,
            _ => {
                let f = parse_sentence(line).map_err(|mut e| {
                    e.line = i + 1;
                    e
                })?;
                out.sentences.push(f);
            }
        }
    }
    Ok(out)
}

pub fn write_axb(file: &AxbFile) -> String {
    let mut out = String::new();
    if file.group0 {
        out.push_str("group0\n");
    }
    if file.group1 {
        out.push_str("group1\n");
    }
    if let Some(p) = &file.group2_beta {
        out.push_str(&format!("group2 {p}\n"));
    }
    if file.totality {
        out.push_str("totality\n");
    }
    if file.group3 {
        out.push_str("group3\n");
    }
    for s in &file.sentences {
        out.push_str(&format!("{s}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::parse::parse_formula;

    #[test]
    fn push_rejects_open_formulas() {
        let mut b = AxiomBasis::new("t");
        let open = parse_formula("(= x 0)").unwrap();
        assert!(matches!(b.push(open, AxiomTag::User), Err(BasisError::NotASentence(_))));
    }

    #[test]
    fn push_rejects_unknown_oracles() {
        let mut b = AxiomBasis::new("t");
        let f = parse_formula("(oracle ghost 0)").unwrap();
        assert!(matches!(b.push(f, AxiomTag::User), Err(BasisError::UnknownOracle(_))));
    }

    #[test]
    fn axb_round_trip() {
        let text = "# demo\ngroup0\ngroup1\ngroup2 beta.axb\ntotality\ngroup3\n(= 0 0)\n";
        let parsed = parse_axb(text).unwrap();
        assert!(parsed.group0 && parsed.group1 && parsed.group3 && parsed.totality);
        assert_eq!(parsed.group2_beta.as_deref(), Some("beta.axb"));
        assert_eq!(parsed.sentences.len(), 1);
        let written = write_axb(&parsed);
        assert_eq!(parse_axb(&written).unwrap(), parsed);
    }
}
