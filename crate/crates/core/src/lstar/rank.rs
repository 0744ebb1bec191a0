//! Quantifier-rank classification.
//!
//! A formula whose quantifiers are all bounded is rank zero. A block of
//! leading unbounded universals over a body of rank at most `Sigma(n-1)`
//! yields `Pi(n)`, and dually for existentials. Leading bounded quantifiers
//! merge into a block of the same polarity, since they abbreviate their
//! unbounded readings. Anything else (an unbounded quantifier under a
//! connective) is unranked. The language carries no multiplication symbol,
//! so the no-multiplication proviso holds by construction.

use super::ast::Formula;

/// Least syntactic rank class of a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rank {
    Delta0,
    Pi(u32),
    Sigma(u32),
    Unranked,
}

impl Rank {
    /// Class inclusion: `Delta0` sits below everything, `Pi(m)`/`Sigma(m)`
    /// embed into both classes at every higher level, and `Unranked`
    /// compares only with itself.
    pub fn within(self, other: Rank) -> bool {
        match (self, other) {
            (Rank::Unranked, Rank::Unranked) => true,
            (Rank::Unranked, _) | (_, Rank::Unranked) => false,
            (Rank::Delta0, _) => true,
            (_, Rank::Delta0) => false,
            (Rank::Pi(m), Rank::Pi(n)) | (Rank::Sigma(m), Rank::Sigma(n)) => m <= n,
            (Rank::Pi(m), Rank::Sigma(n)) | (Rank::Sigma(m), Rank::Pi(n)) => m < n,
        }
    }
}

fn all_quantifiers_bounded(f: &Formula) -> bool {
    match f {
        Formula::Atom(..) => true,
        Formula::Not(g) => all_quantifiers_bounded(g),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            all_quantifiers_bounded(a) && all_quantifiers_bounded(b)
        }
        Formula::Forall(..) | Formula::Exists(..) => false,
        Formula::BForall(_, _, g) | Formula::BExists(_, _, g) => all_quantifiers_bounded(g),
    }
}

/// Compute the least rank class.
pub fn rank(f: &Formula) -> Rank {
    if all_quantifiers_bounded(f) {
        return Rank::Delta0;
    }
    match f {
        Formula::Forall(..) | Formula::BForall(..) => {
            let mut body = f;
            loop {
                match body {
                    Formula::Forall(_, g) | Formula::BForall(_, _, g) => body = g,
                    _ => break,
                }
            }
            match rank(body) {
                Rank::Delta0 => Rank::Pi(1),
                Rank::Sigma(n) => Rank::Pi(n + 1),
                // a maximal universal block cannot be followed by another one
                Rank::Pi(_) | Rank::Unranked => Rank::Unranked,
            }
        }
        Formula::Exists(..) | Formula::BExists(..) => {
            let mut body = f;
            loop {
                match body {
                    Formula::Exists(_, g) | Formula::BExists(_, _, g) => body = g,
                    _ => break,
                }
            }
            match rank(body) {
                Rank::Delta0 => Rank::Sigma(1),
                Rank::Pi(n) => Rank::Sigma(n + 1),
                Rank::Sigma(_) | Rank::Unranked => Rank::Unranked,
            }
        }
        _ => Rank::Unranked,
    }
}

/// Rank-1 means expressible at the first level: `Delta0`, `Pi(1)` or
/// `Sigma(1)`.
pub fn is_rank1(f: &Formula) -> bool {
    let r = rank(f);
    r.within(Rank::Pi(1)) || r.within(Rank::Sigma(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::parse::parse_formula;

    fn rk(src: &str) -> Rank {
        rank(&parse_formula(src).unwrap())
    }

    #[test]
    fn quantifier_free_atoms_are_delta0() {
        assert_eq!(rk("(= 0 1)"), Rank::Delta0);
        assert_eq!(rk("(and (leq 0 1) (not (= 0 0)))"), Rank::Delta0);
    }

    #[test]
    fn bounded_only_is_delta0() {
        assert_eq!(rk("(bforall v 5 (bexists w v (= w v)))"), Rank::Delta0);
    }

    #[test]
    fn successor_totality_is_pi2() {
        assert_eq!(rk("(forall x (exists z (= (add x 1) z)))"), Rank::Pi(2));
    }

    #[test]
    fn universal_block_over_delta0_is_pi1() {
        assert_eq!(
            rk("(forall x (forall y (forall p (forall q (not (= x y))))))"),
            Rank::Pi(1)
        );
    }

    #[test]
    fn bounded_quantifiers_merge_into_blocks() {
        assert_eq!(rk("(forall x (bforall v 3 (= v x)))"), Rank::Pi(1));
        assert_eq!(rk("(exists x (bexists v 3 (= v x)))"), Rank::Sigma(1));
    }

    #[test]
    fn alternation_counts_levels() {
        assert_eq!(rk("(exists x (forall y (leq y x)))"), Rank::Sigma(2));
        assert_eq!(
            rk("(forall x (exists y (forall z (= x (max y z)))))"),
            Rank::Pi(3)
        );
    }

    #[test]
    fn connective_over_unbounded_is_unranked() {
        assert_eq!(rk("(not (forall x (= x x)))"), Rank::Unranked);
        assert_eq!(rk("(and (forall x (= x x)) (= 0 0))"), Rank::Unranked);
    }

    #[test]
    fn rank1_predicate() {
        assert!(is_rank1(&parse_formula("(= 0 0)").unwrap()));
        assert!(is_rank1(&parse_formula("(forall x (= x x))").unwrap()));
        assert!(is_rank1(&parse_formula("(exists x (= x 0))").unwrap()));
        assert!(!is_rank1(
            &parse_formula("(forall x (exists z (= (add x 1) z)))").unwrap()
        ));
    }

    #[test]
    fn inclusion_order() {
        assert!(Rank::Delta0.within(Rank::Pi(1)));
        assert!(Rank::Delta0.within(Rank::Sigma(1)));
        assert!(Rank::Pi(1).within(Rank::Sigma(2)));
        assert!(!Rank::Pi(1).within(Rank::Sigma(1)));
        assert!(!Rank::Pi(2).within(Rank::Pi(1)));
    }
}
