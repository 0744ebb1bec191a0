//! Multiplication as a three-way relation.
//!
//! The language has no multiplication symbol. `x * y = z` is expressed
//! once here, through division: for nonzero arguments, `z div y = x` and
//! the remainder is zero exactly when `(z - 1) div y` drops below
//! `z div y`. Every other module reuses this single defining formula.

use super::ast::{Formula, Term};

/// The quantifier-free defining formula for `x * y = z`, over the three
/// given argument terms.
pub fn mult_rel(x: &Term, y: &Term, z: &Term) -> Formula {
    let zero = Term::zero;
    let degenerate = Formula::and(
        Formula::or(
            Formula::eq(x.clone(), zero()),
            Formula::eq(y.clone(), zero()),
        ),
        Formula::eq(z.clone(), zero()),
    );
    let quotient_matches = Formula::eq(Term::div(z.clone(), y.clone()), x.clone());
    let remainder_zero = Formula::not(Formula::eq(
        Term::div(Term::sub(z.clone(), Term::one()), y.clone()),
        x.clone(),
    ));
    let positive = Formula::and(
        Formula::and(
            Formula::not(Formula::eq(x.clone(), zero())),
            Formula::not(Formula::eq(y.clone(), zero())),
        ),
        Formula::and(
            Formula::not(Formula::eq(z.clone(), zero())),
            Formula::and(quotient_matches, remainder_zero),
        ),
    );
    Formula::or(degenerate, positive)
}

/// `forall x exists z. x + 1 = z` (successor totality).
pub fn successor_totality() -> Formula {
    Formula::forall(
        "x",
        Formula::exists(
            "z",
            Formula::eq(Term::add(Term::var("x"), Term::one()), Term::var("z")),
        ),
    )
}

/// `forall x forall y exists z. x + y = z` (addition totality).
pub fn addition_totality() -> Formula {
    Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::exists(
                "z",
                Formula::eq(Term::add(Term::var("x"), Term::var("y")), Term::var("z")),
            ),
        ),
    )
}

/// `forall x forall y exists z. Mult(x, y, z)` (multiplication totality,
/// through the relational definition above).
pub fn multiplication_totality() -> Formula {
    Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::exists(
                "z",
                mult_rel(&Term::var("x"), &Term::var("y"), &Term::var("z")),
            ),
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::eval::{eval_sentence, OracleTable, Truth};
    use crate::lstar::rank::{rank, Rank};
    use crate::godel::nat_term;
    use num_bigint::BigUint;

    #[test]
    fn mult_relation_matches_multiplication_exhaustively() {
        let table = OracleTable::new();
        for x in 0u32..12 {
            for y in 0u32..12 {
                for z in 0u32..40 {
                    let f = mult_rel(
                        &nat_term(&BigUint::from(x)),
                        &nat_term(&BigUint::from(y)),
                        &nat_term(&BigUint::from(z)),
                    );
                    let got = eval_sentence(&f, &table, 0).unwrap();
                    let want = if x * y == z { Truth::True } else { Truth::False };
                    assert_eq!(got, want, "mult_rel({x}, {y}, {z})");
                }
            }
        }
    }

    #[test]
    fn mult_relation_is_quantifier_free() {
        let f = mult_rel(&Term::var("x"), &Term::var("y"), &Term::var("z"));
        assert_eq!(
            rank(&Formula::forall(
                "x",
                Formula::forall("y", Formula::forall("z", f))
            )),
            Rank::Pi(1)
        );
    }

    #[test]
    fn totality_sentences_have_expected_ranks() {
        assert_eq!(rank(&successor_totality()), Rank::Pi(2));
        assert_eq!(rank(&addition_totality()), Rank::Pi(2));
        assert_eq!(rank(&multiplication_totality()), Rank::Pi(2));
    }
}
