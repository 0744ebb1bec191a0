//! DIMACS-like clause files, the atom sidecar, and the proof format.

use super::{AtomTable, Clause, Lit, ResJust, ResProof, ResStep};
use crate::lstar::ast::Formula;
use crate::lstar::parse::{parse_formula, ParseError};

/// `p cnf <vars> <clauses>` header then one zero-terminated clause per
/// line; `c` lines are comments.
pub fn write_cnf(clauses: &[Clause], vars: usize) -> String {
    let mut out = format!("p cnf {} {}\n", vars, clauses.len());
    for c in clauses {
        out.push_str(&format!("{c}\n"));
    }
    out
}

pub fn parse_cnf(text: &str) -> Result<Vec<Clause>, String> {
    let mut clauses = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('p') {
            continue;
        }
        let mut lits = Vec::new();
        for tok in line.split_whitespace() {
            let code: i64 = tok.parse().map_err(|_| format!("bad literal '{tok}'"))?;
            if code == 0 {
                break;
            }
            lits.push(Lit::from_code(code).ok_or_else(|| format!("bad literal '{tok}'"))?);
        }
        clauses.push(Clause::from_lits(lits));
    }
    Ok(clauses)
}

/// Sidecar mapping each variable to the sentence it stands for:
/// `<1-based var><TAB><sexpr>` per line.
pub fn write_atoms(table: &AtomTable) -> String {
    let mut out = String::new();
    for v in 0..table.len() as u32 {
        if let Some(f) = table.formula(v) {
            out.push_str(&format!("{}\t{}\n", v + 1, f));
        }
    }
    out
}

pub fn parse_atoms(text: &str) -> Result<Vec<(u32, Formula)>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (num, sexpr) = line.split_once('\t').ok_or(ParseError {
            line: i + 1,
            col: 1,
            msg: "expected <var><TAB><sexpr>".into(),
        })?;
        let var: u32 = num.trim().parse().map_err(|_| ParseError {
            line: i + 1,
            col: 1,
            msg: format!("bad variable number '{num}'"),
        })?;
        out.push((var, parse_formula(sexpr)?));
    }
    Ok(out)
}

/// One step per line: `input <k> <lits> 0`, `lem <lits> 0`, or
/// `resolve <left> <right> <pivot> <lits> 0`.
pub fn write_resproof(proof: &ResProof) -> String {
    let mut out = String::new();
    for s in &proof.steps {
        match &s.just {
            ResJust::Input(k) => out.push_str(&format!("input {} {}\n", k, s.clause)),
            ResJust::LemInput => out.push_str(&format!("lem {}\n", s.clause)),
            ResJust::Resolve { left, right, pivot } => out.push_str(&format!(
                "resolve {} {} {} {}\n",
                left,
                right,
                pivot + 1,
                s.clause
            )),
        }
    }
    out
}

pub fn parse_resproof(text: &str) -> Result<ResProof, String> {
    let mut proof = ResProof::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| format!("line {}: {}", lineno + 1, msg);
        let lits_from = |start: usize| -> Result<Clause, String> {
            let mut lits = Vec::new();
            for tok in &toks[start..] {
                let code: i64 = tok.parse().map_err(|_| bad("bad literal"))?;
                if code == 0 {
                    break;
                }
                lits.push(Lit::from_code(code).ok_or_else(|| bad("bad literal"))?);
            }
            Ok(Clause::from_lits(lits))
        };
        let step = match toks.first() {
            Some(&"input") => {
                let k: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("input needs an index"))?;
                ResStep {
                    clause: lits_from(2)?,
                    just: ResJust::Input(k),
                }
            }
            Some(&"lem") => ResStep {
                clause: lits_from(1)?,
                just: ResJust::LemInput,
            },
            Some(&"resolve") => {
                let left: usize = toks
                    .get(1)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("resolve needs step numbers"))?;
                let right: usize = toks
                    .get(2)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| bad("resolve needs step numbers"))?;
                let pivot: u32 = toks
                    .get(3)
                    .and_then(|t| t.parse::<u32>().ok())
                    .filter(|p| *p > 0)
                    .ok_or_else(|| bad("resolve needs a 1-based pivot"))?;
                ResStep {
                    clause: lits_from(4)?,
                    just: ResJust::Resolve {
                        left,
                        right,
                        pivot: pivot - 1,
                    },
                }
            }
            _ => return Err(bad("unknown step kind")),
        };
        proof.steps.push(step);
    }
    Ok(proof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{res_search, ResApparatus, ResOutcome};

    #[test]
    fn cnf_round_trip() {
        let clauses = vec![
            Clause::from_lits([Lit::pos(0), Lit::neg(1)]),
            Clause::from_lits([Lit::pos(1)]),
        ];
        let text = write_cnf(&clauses, 2);
        assert_eq!(parse_cnf(&text).unwrap(), clauses);
    }

    #[test]
    fn resproof_round_trip() {
        let inputs = vec![
            Clause::from_lits([Lit::pos(0)]),
            Clause::from_lits([Lit::neg(0)]),
        ];
        let proof = match res_search(&inputs, ResApparatus::Res, 100) {
            ResOutcome::Found(p) => p,
            ResOutcome::Exhausted => panic!(),
        };
        let text = write_resproof(&proof);
        assert_eq!(parse_resproof(&text).unwrap(), proof);
    }
}
