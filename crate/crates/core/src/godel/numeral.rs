//! Compact numerals over `{0, 1, add, double}`.
//!
//! The binary-expansion construction writes `2k` as `double(k-term)` and
//! `2k + 1` as `add(double(k-term), 1)`. Counting one symbol per occurrence
//! of `0`, `1`, `add` and `double` (parentheses free), the term for any
//! `n >= 2` stays strictly below `3 * ceil(log2 n)` symbols.

use crate::lstar::ast::{GroundingFn, Term};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// The compact term denoting `n`.
pub fn nat_term(n: &BigUint) -> Term {
    if n.is_zero() {
        return Term::zero();
    }
    if n.is_one() {
        return Term::one();
    }
    let half = nat_term(&(n >> 1u8));
    let doubled = Term::double(half);
    if n.bit(0) {
        Term::add(doubled, Term::one())
    } else {
        doubled
    }
}

/// A numeral term together with its target value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumeralTerm {
    pub target: BigUint,
    pub term: Term,
}

impl NumeralTerm {
    /// Symbols under the documented convention. Numeral terms contain
    /// only constants and `add`/`double` applications, so this coincides
    /// with the AST token count.
    pub fn symbol_count(&self) -> usize {
        self.term.token_count()
    }
}

pub fn numeral(n: &BigUint) -> NumeralTerm {
    NumeralTerm {
        target: n.clone(),
        term: nat_term(n),
    }
}

/// Recognize terms produced by [`nat_term`] and return their value.
pub fn numeral_value(t: &Term) -> Option<BigUint> {
    match t {
        Term::Const(c) => Some(BigUint::from(*c)),
        Term::App(GroundingFn::Double, args) => {
            let inner = numeral_value(&args[0])?;
            if inner.is_zero() {
                return None; // nat_term never doubles zero
            }
            Some(&inner + &inner)
        }
        Term::App(GroundingFn::Add, args) => {
            if args[1] != Term::one() {
                return None;
            }
            match &args[0] {
                Term::App(GroundingFn::Double, _) => {
                    let inner = numeral_value(&args[0])?;
                    Some(inner + BigUint::one())
                }
                _ => None,
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::eval::{eval_term, OracleTable};

    #[test]
    fn base_cases() {
        assert_eq!(nat_term(&BigUint::zero()), Term::zero());
        assert_eq!(nat_term(&BigUint::one()), Term::one());
        let two = numeral(&BigUint::from(2u8));
        assert_eq!(two.term, Term::double(Term::one()));
        assert_eq!(two.symbol_count(), 2);
    }

    #[test]
    fn six_is_double_of_three() {
        let six = numeral(&BigUint::from(6u8));
        assert_eq!(
            six.term,
            Term::double(Term::add(Term::double(Term::one()), Term::one()))
        );
        let table = OracleTable::new();
        assert_eq!(eval_term(&six.term, &table).unwrap(), BigUint::from(6u8));
    }

    #[test]
    fn numeral_value_inverts_nat_term() {
        for n in 0u64..600 {
            let n = BigUint::from(n);
            assert_eq!(numeral_value(&nat_term(&n)), Some(n));
        }
        assert_eq!(numeral_value(&Term::var("x")), None);
        assert_eq!(numeral_value(&Term::double(Term::zero())), None);
    }
}
