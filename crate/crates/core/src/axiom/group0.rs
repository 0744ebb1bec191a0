//! Defining axioms for the constants and the two growth functions.

use crate::lstar::ast::{Formula, Term};

fn v(name: &str) -> Term {
    Term::var(name)
}

/// Zero is minimal, one is distinct from zero and covers the first two
/// values, addition satisfies its recursion equations, and doubling is
/// addition with itself.
pub fn group0_axioms() -> Vec<Formula> {
    vec![
        Formula::forall("x", Formula::leq(Term::zero(), v("x"))),
        Formula::not(Formula::eq(Term::zero(), Term::one())),
        Formula::forall(
            "x",
            Formula::implies(
                Formula::leq(v("x"), Term::one()),
                Formula::or(
                    Formula::eq(v("x"), Term::zero()),
                    Formula::eq(v("x"), Term::one()),
                ),
            ),
        ),
        Formula::forall("x", Formula::eq(Term::add(v("x"), Term::zero()), v("x"))),
        Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::eq(
                    Term::add(v("x"), Term::add(v("y"), Term::one())),
                    Term::add(Term::add(v("x"), v("y")), Term::one()),
                ),
            ),
        ),
        Formula::forall(
            "x",
            Formula::eq(Term::double(v("x")), Term::add(v("x"), v("x"))),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::rank::is_rank1;

    #[test]
    fn all_axioms_are_rank1_sentences() {
        for ax in group0_axioms() {
            assert!(ax.is_sentence(), "{ax}");
            assert!(is_rank1(&ax), "{ax}");
        }
    }
}
