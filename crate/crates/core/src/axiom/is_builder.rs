//! Builder for the self-verifying basis over a source basis.
//!
//! The output contains: the defining axioms for constants and the growth
//! functions; the finite adequate family for true bounded sentences; one
//! reflection axiom per requested rank-1 sentence of the source basis
//! (materialized on demand through a Hilbert-proof oracle); and the
//! self-referential level-1 consistency sentence. The multiplication
//! variant additionally declares multiplication total, which changes the
//! consistency sentence's own description of its basis.

use super::basis::{AxiomBasis, AxiomTag, BasisError};
use super::group0::group0_axioms;
use super::group1::{group1_axioms, Group1Config};
use super::hilbert::check_hilbert;
use super::selfref::{build_selfref, fingerprint};
use crate::godel::{decode, encode_formula, nat_term, standard_oracles, CodedAst};
use crate::lstar::ast::{Formula, Term};
use crate::lstar::mult::multiplication_totality;
use crate::lstar::rank::{rank, Rank};
use crate::tableau::Apparatus;

#[derive(Debug, Clone, Default)]
pub struct IsOptions {
    pub mult_extended: bool,
    pub group1: Group1Config,
}

/// The pair-of-contradictory-codes predicate: `pair(x, y)` holds when `x`
/// codes a rank `Pi(1)`-or-below sentence and `y` codes its negation.
pub fn pair_semantics(args: &[num_bigint::BigUint]) -> bool {
    let x = match decode(&args[0]) {
        Ok(CodedAst::Formula(f)) if f.is_sentence() => f,
        _ => return false,
    };
    if !(rank(&x).within(Rank::Pi(1))) {
        return false;
    }
    match decode(&args[1]) {
        Ok(CodedAst::Formula(y)) => y == Formula::not(x),
        _ => false,
    }
}

/// Build the self-verifying basis.
pub fn build_is(
    beta: &AxiomBasis,
    apparatus: &Apparatus,
    options: &IsOptions,
) -> Result<AxiomBasis, BasisError> {
    let mut oracles = standard_oracles();
    oracles.register_pred("pair", 2, pair_semantics);

    // reflection oracle over the source basis
    let hilb_sym = format!("hilbprf_{}", fingerprint(beta.axioms(), apparatus));
    let beta_axioms: Vec<Formula> = beta.axioms().to_vec();
    {
        let beta_axioms = beta_axioms.clone();
        oracles.register_pred(hilb_sym.clone(), 2, move |args| {
            let theorem = match decode(&args[0]) {
                Ok(CodedAst::Formula(f)) => f,
                _ => return false,
            };
            let proof = match decode(&args[1]) {
                Ok(CodedAst::Hilbert(p)) => p,
                _ => return false,
            };
            check_hilbert(&proof, &theorem, &beta_axioms).is_ok()
        });
    }

    let mut basis = AxiomBasis::with_oracles(
        format!("is_{}_{}", apparatus.name(), beta.name),
        oracles,
    );
    basis.push_all(group0_axioms(), AxiomTag::Group0)?;
    basis.push_all(group1_axioms(&options.group1), AxiomTag::Group1)?;
    if options.mult_extended {
        basis.push(multiplication_totality(), AxiomTag::Totality)?;
    }
    let consistency = build_selfref(&mut basis, apparatus)
        .map_err(|e| BasisError::Parse(e.to_string()))?;
    basis.push(consistency, AxiomTag::Group3)?;
    basis.set_group2(hilb_sym, beta_axioms);
    Ok(basis)
}

impl AxiomBasis {
    /// Materialize the reflection axiom for one rank-1 sentence:
    /// `forall p (hilbprf(code-of-sentence, p) -> sentence)`.
    pub fn materialize_group2(&mut self, phi: &Formula) -> Result<usize, BasisError> {
        let (sym, _) = self
            .group2
            .clone()
            .ok_or_else(|| BasisError::Parse("basis has no reflection generator".into()))?;
        if !phi.is_sentence() {
            return Err(BasisError::NotASentence(phi.to_string()));
        }
        if !rank(phi).within(Rank::Pi(1)) {
            return Err(BasisError::Parse(format!(
                "reflection is generated for rank-1 universal sentences only, got {:?}",
                rank(phi)
            )));
        }
        let axiom = group2_instance(&sym, phi);
        if let Some(i) = self.axioms().iter().position(|a| *a == axiom) {
            return Ok(i);
        }
        self.push(axiom, AxiomTag::Group2)
    }
}

/// The reflection axiom shape for one sentence.
pub fn group2_instance(hilb_sym: &str, phi: &Formula) -> Formula {
    Formula::forall(
        "p",
        Formula::implies(
            Formula::oracle(
                hilb_sym.to_string(),
                vec![nat_term(&encode_formula(phi)), Term::var("p")],
            ),
            phi.clone(),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::godel::standard_oracles;
    use crate::lstar::parse::parse_formula;

    fn beta() -> AxiomBasis {
        let mut b = AxiomBasis::with_oracles("beta", standard_oracles());
        b.push(parse_formula("(forall x (leq (sub x x) 0))").unwrap(), AxiomTag::User)
            .unwrap();
        b
    }

    #[test]
    fn group3_sentence_is_pi1() {
        let basis = build_is(&beta(), &Apparatus::Tab, &IsOptions::default()).unwrap();
        let group3: Vec<&Formula> = basis
            .axioms()
            .iter()
            .zip(basis.tags())
            .filter(|(_, t)| **t == AxiomTag::Group3)
            .map(|(a, _)| a)
            .collect();
        assert_eq!(group3.len(), 1);
        assert_eq!(rank(group3[0]), Rank::Pi(1));
    }

    #[test]
    fn mult_extension_adds_totality_and_changes_group3() {
        let plain = build_is(&beta(), &Apparatus::Tab, &IsOptions::default()).unwrap();
        let opts = IsOptions {
            mult_extended: true,
            ..IsOptions::default()
        };
        let extended = build_is(&beta(), &Apparatus::Tab, &opts).unwrap();
        assert!(extended.contains(&multiplication_totality()));
        assert!(!plain.contains(&multiplication_totality()));
        let g3 = |b: &AxiomBasis| -> Formula {
            b.axioms()
                .iter()
                .zip(b.tags())
                .find(|(_, t)| **t == AxiomTag::Group3)
                .map(|(a, _)| a.clone())
                .unwrap()
        };
        assert_ne!(g3(&plain), g3(&extended));
    }

    #[test]
    fn reflection_instances_materialize_with_the_implication_shape() {
        let mut basis = build_is(&beta(), &Apparatus::Tab, &IsOptions::default()).unwrap();
        let phi = parse_formula("(forall x (= (sub x x) 0))").unwrap();
        let idx = basis.materialize_group2(&phi).unwrap();
        match &basis.axioms()[idx] {
            Formula::Forall(_, body) => {
                assert!(matches!(&**body, Formula::Implies(_, rhs) if **rhs == phi))
            }
            other => panic!("unexpected shape {other}"),
        }
        // second materialization is idempotent
        assert_eq!(basis.materialize_group2(&phi).unwrap(), idx);
        // non rank-1 sentences are refused
        let deep = parse_formula("(forall x (exists z (= (add x 1) z)))").unwrap();
        assert!(basis.materialize_group2(&deep).is_err());
    }

    #[test]
    fn deterministic_across_builds() {
        let a = build_is(&beta(), &Apparatus::Tab, &IsOptions::default()).unwrap();
        let b = build_is(&beta(), &Apparatus::Tab, &IsOptions::default()).unwrap();
        assert_eq!(a.axioms(), b.axioms());
    }
}
