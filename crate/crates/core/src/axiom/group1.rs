//! The finite axiom family adequate for true bounded sentences at desk
//! scale.
//!
//! It has three parts: an equality core (reflexivity, symmetry,
//! transitivity, congruence for every function symbol and both
//! relations), case-split axioms `x <= k -> x = 0 or ... or x = k` for
//! each small k, and ground-fact tables giving the value of every
//! function application and every ordering/apartness fact over a finite
//! numeral range. All of it is true in the standard model, and every
//! member is expressible at rank one. The search planner leans on exactly
//! these shapes, so their construction lives here in one place.

use crate::godel::nat_term;
use crate::lstar::apply_grounding;
use crate::lstar::ast::{Formula, GroundingFn, Term};
use num_bigint::BigUint;

/// Sizing knobs for the generated family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Group1Config {
    /// Function tables cover arguments `0..=table_range`; comparison
    /// tables cover values up to `2 * table_range` so that addition
    /// results stay decidable.
    pub table_range: u32,
    /// Case-split axioms exist for bounds `0..=case_split_max`.
    pub case_split_max: u32,
}

impl Default for Group1Config {
    fn default() -> Self {
        Group1Config {
            table_range: 32,
            case_split_max: 32,
        }
    }
}

fn num(n: u32) -> Term {
    nat_term(&BigUint::from(n))
}

fn v(name: &str) -> Term {
    Term::var(name)
}

pub fn reflexivity() -> Formula {
    Formula::forall("x", Formula::eq(v("x"), v("x")))
}

pub fn symmetry() -> Formula {
    Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::implies(Formula::eq(v("x"), v("y")), Formula::eq(v("y"), v("x"))),
        ),
    )
}

pub fn transitivity() -> Formula {
    Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::forall(
                "z",
                Formula::implies(
                    Formula::eq(v("x"), v("y")),
                    Formula::implies(Formula::eq(v("y"), v("z")), Formula::eq(v("x"), v("z"))),
                ),
            ),
        ),
    )
}

/// Congruence of one function symbol:
/// `x = u -> (y = v -> f(x, y) = f(u, v))`, or the unary analogue.
pub fn fn_congruence(f: GroundingFn) -> Formula {
    if f.arity() == 1 {
        Formula::forall(
            "x",
            Formula::forall(
                "u",
                Formula::implies(
                    Formula::eq(v("x"), v("u")),
                    Formula::eq(Term::app(f, vec![v("x")]), Term::app(f, vec![v("u")])),
                ),
            ),
        )
    } else {
        Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::forall(
                    "u",
                    Formula::forall(
                        "w",
                        Formula::implies(
                            Formula::eq(v("x"), v("u")),
                            Formula::implies(
                                Formula::eq(v("y"), v("w")),
                                Formula::eq(
                                    Term::app(f, vec![v("x"), v("y")]),
                                    Term::app(f, vec![v("u"), v("w")]),
                                ),
                            ),
                        ),
                    ),
                ),
            ),
        )
    }
}

/// `x = u -> (y = w -> (x <= y -> u <= w))`
pub fn leq_congruence() -> Formula {
    Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::forall(
                "u",
                Formula::forall(
                    "w",
                    Formula::implies(
                        Formula::eq(v("x"), v("u")),
                        Formula::implies(
                            Formula::eq(v("y"), v("w")),
                            Formula::implies(
                                Formula::leq(v("x"), v("y")),
                                Formula::leq(v("u"), v("w")),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    )
}

/// `x = u -> (y = w -> (x = y -> u = w))`
pub fn eq_congruence() -> Formula {
    Formula::forall(
        "x",
        Formula::forall(
            "y",
            Formula::forall(
                "u",
                Formula::forall(
                    "w",
                    Formula::implies(
                        Formula::eq(v("x"), v("u")),
                        Formula::implies(
                            Formula::eq(v("y"), v("w")),
                            Formula::implies(
                                Formula::eq(v("x"), v("y")),
                                Formula::eq(v("u"), v("w")),
                            ),
                        ),
                    ),
                ),
            ),
        ),
    )
}

/// `x <= k -> (x = 0 or x = 1 or ... or x = k)`, disjunction left-nested.
pub fn case_split(k: u32) -> Formula {
    let mut cases = Formula::eq(v("x"), num(0));
    for j in 1..=k {
        cases = Formula::or(cases, Formula::eq(v("x"), num(j)));
    }
    Formula::forall(
        "x",
        Formula::implies(Formula::leq(v("x"), num(k)), cases),
    )
}

/// Ground value fact `f(a, b) = c` with `c` the actual value.
pub fn fact_fn(f: GroundingFn, args: &[u32]) -> Formula {
    let vals: Vec<BigUint> = args.iter().map(|&a| BigUint::from(a)).collect();
    let result = apply_grounding(f, &vals);
    Formula::eq(
        Term::app(f, args.iter().map(|&a| num(a)).collect()),
        nat_term(&result),
    )
}

pub fn fact_leq(a: u32, b: u32) -> Formula {
    Formula::leq(num(a), num(b))
}

pub fn fact_not_leq(a: u32, b: u32) -> Formula {
    Formula::not(Formula::leq(num(a), num(b)))
}

pub fn fact_not_eq(a: u32, b: u32) -> Formula {
    Formula::not(Formula::eq(num(a), num(b)))
}

/// The equality core and case splits, without the ground tables.
pub fn core_axioms(cfg: &Group1Config) -> Vec<Formula> {
    let mut out = vec![reflexivity(), symmetry(), transitivity()];
    for f in GroundingFn::ALL {
        out.push(fn_congruence(f));
    }
    out.push(leq_congruence());
    out.push(eq_congruence());
    for k in 0..=cfg.case_split_max {
        out.push(case_split(k));
    }
    out
}

/// The complete family.
pub fn group1_axioms(cfg: &Group1Config) -> Vec<Formula> {
    let mut out = core_axioms(cfg);
    let n = cfg.table_range;
    for f in GroundingFn::ALL {
        if f.arity() == 1 {
            for a in 0..=n {
                out.push(fact_fn(f, &[a]));
            }
        } else {
            for a in 0..=n {
                for b in 0..=n {
                    out.push(fact_fn(f, &[a, b]));
                }
            }
        }
    }
    let m = 2 * n;
    for a in 0..=m {
        for b in 0..=m {
            if a <= b {
                out.push(fact_leq(a, b));
            } else {
                out.push(fact_not_leq(a, b));
            }
            if a != b {
                out.push(fact_not_eq(a, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::eval::{eval_sentence, OracleTable, Truth};
    use crate::lstar::rank::is_rank1;

    #[test]
    fn every_axiom_is_a_rank1_sentence() {
        let cfg = Group1Config {
            table_range: 4,
            case_split_max: 4,
        };
        for ax in group1_axioms(&cfg) {
            assert!(ax.is_sentence(), "{ax}");
            assert!(is_rank1(&ax), "{ax}");
        }
    }

    #[test]
    fn ground_facts_hold_in_the_standard_model() {
        let cfg = Group1Config {
            table_range: 6,
            case_split_max: 3,
        };
        let table = OracleTable::new();
        for ax in group1_axioms(&cfg) {
            // universally quantified members are true by construction;
            // check the decidable ones mechanically
            if crate::lstar::rank::rank(&ax) == crate::lstar::rank::Rank::Delta0 {
                assert_eq!(eval_sentence(&ax, &table, 0).unwrap(), Truth::True, "{ax}");
            }
        }
    }

    #[test]
    fn case_split_shape() {
        let cs = case_split(2);
        let txt = cs.to_string();
        assert_eq!(
            txt,
            "(forall x (implies (leq x (double 1)) \
             (or (or (= x 0) (= x 1)) (= x (double 1)))))"
        );
    }
}
