//! Seeded random generation of small bounded sentences.
//!
//! Values stay small (constants up to 8, function nesting up to depth 2,
//! quantifier bounds up to 8) so that every atom the proof planner meets
//! falls inside the shipped fact tables. The generator is used by the
//! benchmark families and by the test corpus builders.

use crate::godel::nat_term;
use crate::lstar::ast::{Formula, GroundingFn, Term};
use crate::lstar::eval::{eval_sentence, OracleTable, Truth};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    /// Largest numeral constant.
    pub max_value: u32,
    /// Function nesting depth inside terms.
    pub max_term_depth: u32,
    /// Connective nesting depth.
    pub max_formula_depth: u32,
    /// Largest bounded-quantifier bound.
    pub max_bound: u32,
    /// At most this many quantifiers per sentence.
    pub max_quantifiers: u32,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_value: 8,
            max_term_depth: 2,
            max_formula_depth: 3,
            max_bound: 8,
            max_quantifiers: 2,
        }
    }
}

pub struct SentenceGen {
    rng: StdRng,
    cfg: GenConfig,
    var_counter: u32,
}

impl SentenceGen {
    pub fn new(seed: u64, cfg: GenConfig) -> SentenceGen {
        SentenceGen {
            rng: StdRng::seed_from_u64(seed),
            cfg,
            var_counter: 0,
        }
    }

    pub fn from_seed(seed: u64) -> SentenceGen {
        SentenceGen::new(seed, GenConfig::default())
    }

    fn numeral(&mut self) -> Term {
        let v = self.rng.gen_range(0..=self.cfg.max_value);
        nat_term(&BigUint::from(v))
    }

    pub fn term(&mut self, depth: u32, scope: &[String]) -> Term {
        let leaf = depth == 0 || self.rng.gen_bool(0.45);
        if leaf {
            if !scope.is_empty() && self.rng.gen_bool(0.5) {
                let i = self.rng.gen_range(0..scope.len());
                return Term::var(scope[i].clone());
            }
            return self.numeral();
        }
        let f = GroundingFn::ALL[self.rng.gen_range(0..GroundingFn::ALL.len())];
        let args = (0..f.arity())
            .map(|_| self.term(depth - 1, scope))
            .collect();
        Term::App(f, args)
    }

    fn atom(&mut self, scope: &[String]) -> Formula {
        let a = self.term(self.cfg.max_term_depth, scope);
        let b = self.term(self.cfg.max_term_depth, scope);
        if self.rng.gen_bool(0.5) {
            Formula::eq(a, b)
        } else {
            Formula::leq(a, b)
        }
    }

    fn formula(&mut self, depth: u32, quantifiers_left: u32, scope: &mut Vec<String>) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.30) {
            return self.atom(scope);
        }
        let allow_quant = quantifiers_left > 0;
        let choice = self.rng.gen_range(0..if allow_quant { 6 } else { 4 });
        match choice {
            0 => Formula::not(self.formula(depth - 1, quantifiers_left, scope)),
            1 => Formula::and(
                self.formula(depth - 1, quantifiers_left, scope),
                self.formula(depth - 1, quantifiers_left, scope),
            ),
            2 => Formula::or(
                self.formula(depth - 1, quantifiers_left, scope),
                self.formula(depth - 1, quantifiers_left, scope),
            ),
            3 => Formula::implies(
                self.formula(depth - 1, quantifiers_left, scope),
                self.formula(depth - 1, quantifiers_left, scope),
            ),
            _ => {
                self.var_counter += 1;
                let v = format!("v{}", self.var_counter);
                let bound = nat_term(&BigUint::from(self.rng.gen_range(0..=self.cfg.max_bound)));
                scope.push(v.clone());
                let body = self.formula(depth - 1, quantifiers_left - 1, scope);
                scope.pop();
                if choice == 4 {
                    Formula::bforall(v, bound, body)
                } else {
                    Formula::bexists(v, bound, body)
                }
            }
        }
    }

    /// One bounded sentence.
    pub fn delta0_sentence(&mut self) -> Formula {
        let mut scope = Vec::new();
        self.formula(
            self.cfg.max_formula_depth,
            self.cfg.max_quantifiers,
            &mut scope,
        )
    }

    /// Rejection-sample a sentence with the requested truth value.
    pub fn delta0_with_truth(&mut self, want: bool, oracles: &OracleTable) -> Formula {
        loop {
            let s = self.delta0_sentence();
            if let Ok(t) = eval_sentence(&s, oracles, 0) {
                if (t == Truth::True) == want && t != Truth::Undetermined {
                    return s;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_sentences_are_bounded_and_closed() {
        let mut g = SentenceGen::from_seed(7);
        let table = OracleTable::new();
        for _ in 0..50 {
            let s = g.delta0_sentence();
            assert!(s.is_sentence(), "{s}");
            assert_eq!(crate::lstar::rank::rank(&s), crate::lstar::rank::Rank::Delta0);
            // decidable without budget
            assert_ne!(eval_sentence(&s, &table, 0).unwrap(), Truth::Undetermined);
        }
    }

    #[test]
    fn truth_targeting_works() {
        let mut g = SentenceGen::from_seed(11);
        let table = OracleTable::new();
        for _ in 0..10 {
            let t = g.delta0_with_truth(true, &table);
            assert_eq!(eval_sentence(&t, &table, 0).unwrap(), Truth::True);
            let f = g.delta0_with_truth(false, &table);
            assert_eq!(eval_sentence(&f, &table, 0).unwrap(), Truth::False);
        }
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let a: Vec<String> = {
            let mut g = SentenceGen::from_seed(3);
            (0..5).map(|_| g.delta0_sentence().to_string()).collect()
        };
        let b: Vec<String> = {
            let mut g = SentenceGen::from_seed(3);
            (0..5).map(|_| g.delta0_sentence().to_string()).collect()
        };
        assert_eq!(a, b);
    }
}
