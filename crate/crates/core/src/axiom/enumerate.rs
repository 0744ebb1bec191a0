//! Code-ordered enumeration of small sentences.
//!
//! Generates every quantifier-free ground sentence whose canonical
//! printing fits within a length cap, then sorts by code. Since codes
//! order first by printed length and then lexicographically, sorting by
//! code yields the true enumeration order of the fragment.

use crate::godel::encode_formula;
use crate::lstar::ast::{Formula, GroundingFn, Term};

/// Ground terms whose printed length is at most `max_len`.
fn terms_up_to(max_len: usize) -> Vec<Term> {
    let mut out = vec![Term::zero(), Term::one()];
    let mut frontier = 0;
    while frontier < out.len() {
        let snapshot_end = out.len();
        for i in frontier..snapshot_end {
            for f in GroundingFn::ALL {
                if f.arity() == 1 {
                    let t = Term::App(f, vec![out[i].clone()]);
                    if t.to_string().len() <= max_len && !out.contains(&t) {
                        out.push(t);
                    }
                } else {
                    for j in 0..snapshot_end {
                        let t = Term::App(f, vec![out[i].clone(), out[j].clone()]);
                        if t.to_string().len() <= max_len && !out.contains(&t) {
                            out.push(t);
                        }
                        let t = Term::App(f, vec![out[j].clone(), out[i].clone()]);
                        if t.to_string().len() <= max_len && !out.contains(&t) {
                            out.push(t);
                        }
                    }
                }
            }
        }
        if out.len() == snapshot_end {
            break;
        }
        frontier = snapshot_end;
    }
    out
}

/// All quantifier-free ground sentences printing within `max_len`
/// characters, in ascending code order, capped at `limit` entries.
pub fn enumerate_sentences(max_len: usize, limit: usize) -> Vec<Formula> {
    let terms = terms_up_to(max_len.saturating_sub(7));
    let mut atoms = Vec::new();
    for a in &terms {
        for b in &terms {
            for atom in [Formula::eq(a.clone(), b.clone()), Formula::leq(a.clone(), b.clone())] {
                if atom.to_string().len() <= max_len {
                    atoms.push(atom);
                }
            }
        }
    }
    let mut formulas = atoms.clone();
    // one layer of negation, then one layer of binary connectives;
    // deeper nesting is out of the fragment's reach at sane caps anyway
    let negated: Vec<Formula> = atoms
        .iter()
        .filter(|a| a.to_string().len() + 6 <= max_len)
        .map(|a| Formula::not(a.clone()))
        .collect();
    formulas.extend(negated.clone());
    let atomic: Vec<(Formula, usize)> = formulas
        .iter()
        .map(|f| (f.clone(), f.to_string().len()))
        .collect();
    for (a, alen) in &atomic {
        for (b, blen) in &atomic {
            for (overhead, build) in [
                (7, Formula::and as fn(Formula, Formula) -> Formula),
                (6, Formula::or as fn(Formula, Formula) -> Formula),
                (11, Formula::implies as fn(Formula, Formula) -> Formula),
            ] {
                if alen + blen + overhead <= max_len {
                    formulas.push(build(a.clone(), b.clone()));
                }
            }
        }
    }
    formulas.sort_by_cached_key(encode_formula);
    formulas.dedup();
    formulas.truncate(limit);
    formulas
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_starts_with_the_shortest_atoms() {
        let all = enumerate_sentences(16, 1000);
        assert!(!all.is_empty());
        // `(= 0 0)` has the least code among sentences
        assert_eq!(all[0].to_string(), "(= 0 0)");
        // codes ascend
        for w in all.windows(2) {
            assert!(encode_formula(&w[0]) < encode_formula(&w[1]));
        }
    }

    #[test]
    fn fragment_members_are_sentences() {
        for f in enumerate_sentences(18, 500) {
            assert!(f.is_sentence());
            assert!(f.to_string().len() <= 18);
        }
    }

    #[test]
    fn limit_caps_the_output() {
        assert_eq!(enumerate_sentences(20, 7).len(), 7);
    }
}
