//! Evaluation of ground terms and sentences over the natural numbers.
//!
//! Naturals are unbounded. The six non-growth functions follow the stated
//! conventions: `sub` truncates at zero, `div` by zero returns the dividend,
//! `logsp x` is the binary length of `x`, `root x 0 = x`, and `count x j`
//! counts one-bits among the `j` rightmost bits. Sentence evaluation is
//! exact on bounded quantifiers and enumerates unbounded ones up to a
//! witness budget, reporting `Undetermined` when inconclusive.

use super::ast::{Formula, GroundingFn, Rel, Term};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("term is not ground: variable '{0}'")]
    FreeVariable(String),
    #[error("term is not ground: parameter '{0}'")]
    Parameter(String),
    #[error("oracle symbol '{0}' is not registered")]
    UnknownOracle(String),
    #[error("oracle symbol '{0}' expects {1} argument(s), got {2}")]
    OracleArity(String, usize, usize),
}

type OracleFnImpl = Arc<dyn Fn(&[BigUint]) -> BigUint + Send + Sync>;
type OraclePredImpl = Arc<dyn Fn(&[BigUint]) -> bool + Send + Sync>;

/// Registry of executable oracle symbols. Filled once at startup and
/// read-only afterwards; cloning shares the underlying routines.
#[derive(Clone, Default)]
pub struct OracleTable {
    fns: HashMap<String, (usize, OracleFnImpl)>,
    preds: HashMap<String, (usize, OraclePredImpl)>,
}

impl OracleTable {
    pub fn new() -> OracleTable {
        OracleTable::default()
    }

    pub fn register_fn<F>(&mut self, name: impl Into<String>, arity: usize, f: F)
    where
        F: Fn(&[BigUint]) -> BigUint + Send + Sync + 'static,
    {
        self.fns.insert(name.into(), (arity, Arc::new(f)));
    }

    pub fn register_pred<F>(&mut self, name: impl Into<String>, arity: usize, f: F)
    where
        F: Fn(&[BigUint]) -> bool + Send + Sync + 'static,
    {
        self.preds.insert(name.into(), (arity, Arc::new(f)));
    }

    pub fn has_fn(&self, name: &str) -> bool {
        self.fns.contains_key(name)
    }

    pub fn has_pred(&self, name: &str) -> bool {
        self.preds.contains_key(name)
    }

    /// Evaluate a registered oracle function directly on values.
    pub fn eval_fn(&self, name: &str, args: &[BigUint]) -> Result<BigUint, EvalError> {
        self.call_fn(name, args)
    }

    /// Evaluate a registered oracle predicate directly on values.
    pub fn eval_pred(&self, name: &str, args: &[BigUint]) -> Result<bool, EvalError> {
        self.call_pred(name, args)
    }

    fn call_fn(&self, name: &str, args: &[BigUint]) -> Result<BigUint, EvalError> {
        let (arity, f) = self
            .fns
            .get(name)
            .ok_or_else(|| EvalError::UnknownOracle(name.to_string()))?;
        if *arity != args.len() {
            return Err(EvalError::OracleArity(name.to_string(), *arity, args.len()));
        }
        Ok(f(args))
    }

    fn call_pred(&self, name: &str, args: &[BigUint]) -> Result<bool, EvalError> {
        let (arity, f) = self
            .preds
            .get(name)
            .ok_or_else(|| EvalError::UnknownOracle(name.to_string()))?;
        if *arity != args.len() {
            return Err(EvalError::OracleArity(name.to_string(), *arity, args.len()));
        }
        Ok(f(args))
    }
}

impl std::fmt::Debug for OracleTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OracleTable")
            .field("fns", &self.fns.keys().collect::<Vec<_>>())
            .field("preds", &self.preds.keys().collect::<Vec<_>>())
            .finish()
    }
}

/// Apply one grounding function to already-evaluated arguments.
pub fn apply_grounding(f: GroundingFn, args: &[BigUint]) -> BigUint {
    match f {
        GroundingFn::Add => &args[0] + &args[1],
        GroundingFn::Double => &args[0] + &args[0],
        GroundingFn::Sub => {
            if args[0] <= args[1] {
                BigUint::zero()
            } else {
                &args[0] - &args[1]
            }
        }
        GroundingFn::Div => {
            if args[1].is_zero() {
                args[0].clone()
            } else {
                args[0].div_floor(&args[1])
            }
        }
        GroundingFn::Max => args[0].clone().max(args[1].clone()),
        GroundingFn::LogSp => BigUint::from(args[0].bits()),
        GroundingFn::Root => ceil_root(&args[0], &args[1]),
        GroundingFn::Count => count_low_bits(&args[0], &args[1]),
    }
}

/// Ceiling of the y-th root of x; the y = 0 case is defined to return x,
/// mirroring the division-by-zero convention and preserving non-growth.
fn ceil_root(x: &BigUint, y: &BigUint) -> BigUint {
    if y.is_zero() {
        return x.clone();
    }
    if x.is_zero() || x.is_one() {
        return x.clone();
    }
    match y.to_u32() {
        Some(exp) if u64::from(exp) < x.bits() => {
            let floor = x.nth_root(exp);
            if floor.pow(exp) == *x {
                floor
            } else {
                floor + BigUint::one()
            }
        }
        // y >= bit length of x, so 1 < x^(1/y) <= 2
        _ => BigUint::from(2u8),
    }
}

fn count_low_bits(x: &BigUint, j: &BigUint) -> BigUint {
    let width = match j.to_u64() {
        Some(w) => w.min(x.bits()),
        None => x.bits(),
    };
    let mut count: u64 = 0;
    for i in 0..width {
        if x.bit(i) {
            count += 1;
        }
    }
    BigUint::from(count)
}

/// Evaluate a ground term. Errors on variables, parameters and
/// unregistered oracle symbols.
pub fn eval_term(t: &Term, oracles: &OracleTable) -> Result<BigUint, EvalError> {
    eval_term_env(t, oracles, &HashMap::new())
}

fn eval_term_env(
    t: &Term,
    oracles: &OracleTable,
    env: &HashMap<String, BigUint>,
) -> Result<BigUint, EvalError> {
    match t {
        Term::Const(c) => Ok(BigUint::from(*c)),
        Term::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| EvalError::FreeVariable(v.clone())),
        Term::Param(p) => Err(EvalError::Parameter(p.clone())),
        Term::App(f, args) => {
            let vals = args
                .iter()
                .map(|a| eval_term_env(a, oracles, env))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(apply_grounding(*f, &vals))
        }
        Term::OracleApp(name, args) => {
            let vals = args
                .iter()
                .map(|a| eval_term_env(a, oracles, env))
                .collect::<Result<Vec<_>, _>>()?;
            oracles.call_fn(name, &vals)
        }
    }
}

/// Three-valued evaluation outcome for sentences with unbounded quantifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    /// The witness budget ran out before the quantifier was decided.
    Undetermined,
}

impl Truth {
    fn negate(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Undetermined => Truth::Undetermined,
        }
    }

    fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Undetermined,
        }
    }

    fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::False, Truth::False) => Truth::False,
            _ => Truth::Undetermined,
        }
    }

    pub fn is_true(self) -> bool {
        self == Truth::True
    }

    pub fn is_false(self) -> bool {
        self == Truth::False
    }
}

/// Evaluate a sentence. Bounded quantifiers are enumerated exactly, so any
/// sentence whose quantifiers are all bounded gets a definite answer.
/// Unbounded quantifiers try witnesses `0..budget`.
pub fn eval_sentence(s: &Formula, oracles: &OracleTable, budget: u64) -> Result<Truth, EvalError> {
    eval_formula(s, oracles, &HashMap::new(), budget)
}

fn eval_formula(
    f: &Formula,
    oracles: &OracleTable,
    env: &HashMap<String, BigUint>,
    budget: u64,
) -> Result<Truth, EvalError> {
    match f {
        Formula::Atom(rel, args) => {
            let vals = args
                .iter()
                .map(|t| eval_term_env(t, oracles, env))
                .collect::<Result<Vec<_>, _>>()?;
            let holds = match rel {
                Rel::Eq => vals[0] == vals[1],
                Rel::Leq => vals[0] <= vals[1],
                Rel::Oracle(name) => oracles.call_pred(name, &vals)?,
            };
            Ok(if holds { Truth::True } else { Truth::False })
        }
        Formula::Not(g) => Ok(eval_formula(g, oracles, env, budget)?.negate()),
        Formula::And(a, b) => Ok(eval_formula(a, oracles, env, budget)?
            .and(eval_formula(b, oracles, env, budget)?)),
        Formula::Or(a, b) => Ok(eval_formula(a, oracles, env, budget)?
            .or(eval_formula(b, oracles, env, budget)?)),
        Formula::Implies(a, b) => Ok(eval_formula(a, oracles, env, budget)?
            .negate()
            .or(eval_formula(b, oracles, env, budget)?)),
        Formula::BForall(v, bound, g) => {
            let limit = eval_term_env(bound, oracles, env)?;
            let mut acc = Truth::True;
            let mut val = BigUint::zero();
            while val <= limit {
                let mut env2 = env.clone();
                env2.insert(v.clone(), val.clone());
                acc = acc.and(eval_formula(g, oracles, &env2, budget)?);
                if acc == Truth::False {
                    return Ok(Truth::False);
                }
                val += BigUint::one();
            }
            Ok(acc)
        }
        Formula::BExists(v, bound, g) => {
            let limit = eval_term_env(bound, oracles, env)?;
            let mut acc = Truth::False;
            let mut val = BigUint::zero();
            while val <= limit {
                let mut env2 = env.clone();
                env2.insert(v.clone(), val.clone());
                acc = acc.or(eval_formula(g, oracles, &env2, budget)?);
                if acc == Truth::True {
                    return Ok(Truth::True);
                }
                val += BigUint::one();
            }
            Ok(acc)
        }
        Formula::Forall(v, g) => {
            // only refutable by enumeration; never confirms
            for i in 0..budget {
                let mut env2 = env.clone();
                env2.insert(v.clone(), BigUint::from(i));
                if eval_formula(g, oracles, &env2, budget)? == Truth::False {
                    return Ok(Truth::False);
                }
            }
            Ok(Truth::Undetermined)
        }
        Formula::Exists(v, g) => {
            for i in 0..budget {
                let mut env2 = env.clone();
                env2.insert(v.clone(), BigUint::from(i));
                if eval_formula(g, oracles, &env2, budget)? == Truth::True {
                    return Ok(Truth::True);
                }
            }
            Ok(Truth::Undetermined)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::parse::{parse_formula, parse_term};

    fn ev(src: &str) -> BigUint {
        eval_term(&parse_term(src).unwrap(), &OracleTable::new()).unwrap()
    }

    #[test]
    fn subtraction_truncates() {
        assert_eq!(ev("(sub 3 5)"), BigUint::zero());
        assert_eq!(ev("(sub 5 3)"), BigUint::from(2u8));
    }

    #[test]
    fn division_by_zero_returns_dividend() {
        assert_eq!(ev("(div 7 0)"), BigUint::from(7u8));
        assert_eq!(ev("(div 7 2)"), BigUint::from(3u8));
    }

    #[test]
    fn stated_closed_forms() {
        assert_eq!(ev("(logsp 7)"), BigUint::from(3u8));
        assert_eq!(ev("(logsp 8)"), BigUint::from(4u8));
        assert_eq!(ev("(logsp 0)"), BigUint::zero());
        assert_eq!(ev("(root 27 3)"), BigUint::from(3u8));
        assert_eq!(ev("(root 28 3)"), BigUint::from(4u8));
        assert_eq!(ev("(root 9 0)"), BigUint::from(9u8));
        assert_eq!(ev("(count 11 2)"), BigUint::from(2u8));
        assert_eq!(ev("(count 11 100)"), BigUint::from(3u8));
    }

    #[test]
    fn bounded_quantifiers_are_exact() {
        let table = OracleTable::new();
        let t = parse_formula("(bforall v 10 (= (double v) (add v v)))").unwrap();
        assert_eq!(eval_sentence(&t, &table, 0).unwrap(), Truth::True);
        let w = parse_formula("(bexists v 3 (= v (add 1 1)))").unwrap();
        assert_eq!(eval_sentence(&w, &table, 0).unwrap(), Truth::True);
    }

    #[test]
    fn unbounded_quantifiers_respect_budget() {
        let table = OracleTable::new();
        let s = parse_formula("(exists v (= v 100))").unwrap();
        assert_eq!(eval_sentence(&s, &table, 10).unwrap(), Truth::Undetermined);
        assert_eq!(eval_sentence(&s, &table, 200).unwrap(), Truth::True);
        let u = parse_formula("(forall v (leq v 5))").unwrap();
        assert_eq!(eval_sentence(&u, &table, 100).unwrap(), Truth::False);
    }

    #[test]
    fn unregistered_oracle_errors() {
        let t = parse_term("(oterm mystery 0)").unwrap();
        assert!(matches!(
            eval_term(&t, &OracleTable::new()),
            Err(EvalError::UnknownOracle(_))
        ));
    }
}
