//! The doubling and squaring value sequences and their defining sentences.
//!
//! Both sequences start at 2. Repeated addition reaches `2^(n+1)` in `n`
//! steps; repeated squaring reaches `2^(2^n)`. The binary codeword for the
//! squared value is exponentially longer than the one for the doubled
//! value, which is the whole point of comparing them.

use super::nat_term;
use crate::lstar::ast::{Formula, Term};
use crate::lstar::mult::mult_rel;
use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GrowthKind {
    Doubling,
    Squaring,
}

impl GrowthKind {
    pub fn name(self) -> &'static str {
        match self {
            GrowthKind::Doubling => "doubling",
            GrowthKind::Squaring => "squaring",
        }
    }
}

/// Default cap on squaring indices; `2^(2^16)` already spans 64 KiB.
pub const DEFAULT_SQUARING_CAP: u32 = 16;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("squaring index {0} exceeds the configured cap {1}")]
pub struct GrowthCapExceeded(pub u32, pub u32);

/// One element of a growth sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSeq {
    pub kind: GrowthKind,
    pub index: u32,
    pub value: BigUint,
}

impl GrowthSeq {
    /// Length of the value's binary codeword, measured as the exact
    /// base-2 logarithm (all sequence values are powers of two):
    /// `n + 1` for doubling, `2^n` for squaring.
    pub fn code_length(&self) -> u64 {
        self.value.bits() - 1
    }
}

pub fn growth(kind: GrowthKind, n: u32) -> Result<GrowthSeq, GrowthCapExceeded> {
    growth_capped(kind, n, DEFAULT_SQUARING_CAP)
}

pub fn growth_capped(kind: GrowthKind, n: u32, cap: u32) -> Result<GrowthSeq, GrowthCapExceeded> {
    let value = match kind {
        GrowthKind::Doubling => BigUint::from(2u8) << n,
        GrowthKind::Squaring => {
            // 26 is a hard ceiling: past it the value alone needs megabytes
            let cap = cap.min(26);
            if n > cap {
                return Err(GrowthCapExceeded(n, cap));
            }
            BigUint::from(2u8) << ((1u64 << n) - 1)
        }
    };
    Ok(GrowthSeq { kind, index: n, value })
}

/// The i-th defining sentence of a sequence, with values as numerals.
/// Step 0 pins the start value; step i relates element i to element i-1,
/// by addition or by the three-way multiplication relation.
pub fn growth_sentence(kind: GrowthKind, i: u32) -> Result<Formula, GrowthCapExceeded> {
    if i == 0 {
        return Ok(Formula::eq(
            nat_term(&BigUint::from(2u8)),
            Term::add(Term::one(), Term::one()),
        ));
    }
    let prev = nat_term(&growth_capped(kind, i - 1, u32::MAX)?.value);
    let cur = nat_term(&growth(kind, i)?.value);
    Ok(match kind {
        GrowthKind::Doubling => Formula::eq(Term::add(prev.clone(), prev), cur),
        GrowthKind::Squaring => mult_rel(&prev, &prev, &cur),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::eval::{eval_sentence, OracleTable, Truth};

    #[test]
    fn doubling_values() {
        for n in 0u32..=10 {
            let g = growth(GrowthKind::Doubling, n).unwrap();
            assert_eq!(g.value, BigUint::from(2u8).pow(n + 1));
        }
        assert_eq!(growth(GrowthKind::Doubling, 3).unwrap().value, BigUint::from(16u8));
    }

    #[test]
    fn squaring_values() {
        for n in 0u32..=6 {
            let g = growth(GrowthKind::Squaring, n).unwrap();
            assert_eq!(g.value, BigUint::from(2u8).pow(1 << n));
        }
        assert_eq!(growth(GrowthKind::Squaring, 3).unwrap().value, BigUint::from(256u16));
    }

    #[test]
    fn code_length_gap() {
        for n in 1u32..=16 {
            let d = growth(GrowthKind::Doubling, n).unwrap().code_length();
            let s = growth(GrowthKind::Squaring, n).unwrap().code_length();
            assert_eq!(d, u64::from(n) + 1);
            assert_eq!(s, 1u64 << n);
            // the lengths coincide at n = 1 and diverge from then on
            if n >= 2 {
                assert!(s > d);
            }
        }
    }

    #[test]
    fn squaring_cap_enforced() {
        assert!(growth(GrowthKind::Squaring, 17).is_err());
        assert!(growth_capped(GrowthKind::Squaring, 17, 18).is_ok());
    }

    #[test]
    fn sentences_hold_in_the_standard_model() {
        let table = OracleTable::new();
        for kind in [GrowthKind::Doubling, GrowthKind::Squaring] {
            for i in 0..=5 {
                let s = growth_sentence(kind, i).unwrap();
                assert!(s.is_sentence());
                assert_eq!(eval_sentence(&s, &table, 0).unwrap(), Truth::True, "{kind:?} {i}");
            }
        }
    }
}
