//! Term and formula syntax for the base arithmetic language.
//!
//! Terms are built from the constants 0 and 1, variables, proof parameters,
//! the eight grounding functions, and registered oracle function symbols.
//! Formulas use `=`, `<=`, oracle predicates, the propositional connectives
//! and both bounded and unbounded quantifiers. All values are immutable;
//! nothing here ever normalizes a term behind the caller's back, because
//! proof checking depends on exact syntactic identity.

use std::collections::BTreeSet;
use std::fmt;

/// The eight function symbols of the language. Six of them are non-growth
/// (result never exceeds the largest argument); `Add` and `Double` grow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroundingFn {
    Add,
    Double,
    Sub,
    Div,
    Max,
    LogSp,
    Root,
    Count,
}

impl GroundingFn {
    pub const ALL: [GroundingFn; 8] = [
        GroundingFn::Add,
        GroundingFn::Double,
        GroundingFn::Sub,
        GroundingFn::Div,
        GroundingFn::Max,
        GroundingFn::LogSp,
        GroundingFn::Root,
        GroundingFn::Count,
    ];

    pub fn arity(self) -> usize {
        match self {
            GroundingFn::Double | GroundingFn::LogSp => 1,
            _ => 2,
        }
    }

    /// Non-growth means `f(a, b) <= max(a, b)` (unary: `f(a) <= a`).
    pub fn is_non_growth(self) -> bool {
        !matches!(self, GroundingFn::Add | GroundingFn::Double)
    }

    pub fn name(self) -> &'static str {
        match self {
            GroundingFn::Add => "add",
            GroundingFn::Double => "double",
            GroundingFn::Sub => "sub",
            GroundingFn::Div => "div",
            GroundingFn::Max => "max",
            GroundingFn::LogSp => "logsp",
            GroundingFn::Root => "root",
            GroundingFn::Count => "count",
        }
    }

    pub fn from_name(name: &str) -> Option<GroundingFn> {
        GroundingFn::ALL.iter().copied().find(|f| f.name() == name)
    }
}

/// A term of the language.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// One of the two constants; the payload is 0 or 1.
    Const(u8),
    /// A bound or free variable.
    Var(String),
    /// A parameter introduced by existential elimination inside a proof.
    /// Parameters never occur in axioms or goals.
    Param(String),
    /// Application of a grounding function, arity checked at construction.
    App(GroundingFn, Vec<Term>),
    /// Application of a registered oracle function symbol.
    OracleApp(String, Vec<Term>),
}

impl Term {
    pub fn zero() -> Term {
        Term::Const(0)
    }

    pub fn one() -> Term {
        Term::Const(1)
    }

    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn param(name: impl Into<String>) -> Term {
        Term::Param(name.into())
    }

    pub fn app(f: GroundingFn, args: Vec<Term>) -> Term {
        assert_eq!(f.arity(), args.len(), "arity mismatch for {}", f.name());
        Term::App(f, args)
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::App(GroundingFn::Add, vec![a, b])
    }

    pub fn double(a: Term) -> Term {
        Term::App(GroundingFn::Double, vec![a])
    }

    pub fn sub(a: Term, b: Term) -> Term {
        Term::App(GroundingFn::Sub, vec![a, b])
    }

    pub fn div(a: Term, b: Term) -> Term {
        Term::App(GroundingFn::Div, vec![a, b])
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Const(_) | Term::Param(_) => true,
            Term::Var(_) => false,
            Term::App(_, args) | Term::OracleApp(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(_) | Term::Param(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) | Term::OracleApp(_, args) => {
                for a in args {
                    a.free_vars(out);
                }
            }
        }
    }

    pub fn params(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(_) | Term::Var(_) => {}
            Term::Param(p) => {
                out.insert(p.clone());
            }
            Term::App(_, args) | Term::OracleApp(_, args) => {
                for a in args {
                    a.params(out);
                }
            }
        }
    }

    /// Substitute `replacement` for every occurrence of the variable `var`.
    pub fn subst_var(&self, var: &str, replacement: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => replacement.clone(),
            Term::Const(_) | Term::Var(_) | Term::Param(_) => self.clone(),
            Term::App(f, args) => Term::App(
                *f,
                args.iter().map(|a| a.subst_var(var, replacement)).collect(),
            ),
            Term::OracleApp(name, args) => Term::OracleApp(
                name.clone(),
                args.iter().map(|a| a.subst_var(var, replacement)).collect(),
            ),
        }
    }

    /// Number of AST tokens: constants, variables, parameters and symbol
    /// occurrences each count one; parentheses are free.
    pub fn token_count(&self) -> usize {
        match self {
            Term::Const(_) | Term::Var(_) | Term::Param(_) => 1,
            Term::App(_, args) | Term::OracleApp(_, args) => {
                1 + args.iter().map(Term::token_count).sum::<usize>()
            }
        }
    }

    /// All subterms including the term itself, outermost first.
    pub fn subterms(&self, out: &mut Vec<Term>) {
        out.push(self.clone());
        match self {
            Term::App(_, args) | Term::OracleApp(_, args) => {
                for a in args {
                    a.subterms(out);
                }
            }
            _ => {}
        }
    }
}

/// Relation symbol of an atomic formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Eq,
    Leq,
    Oracle(String),
}

/// A formula of the language. Bounded quantifiers are first-class nodes;
/// [`Formula::expand_bounded`] rewrites them into their unbounded readings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Rel, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    BForall(String, Term, Box<Formula>),
    BExists(String, Term, Box<Formula>),
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom(Rel::Eq, vec![a, b])
    }

    pub fn leq(a: Term, b: Term) -> Formula {
        Formula::Atom(Rel::Leq, vec![a, b])
    }

    pub fn oracle(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(Rel::Oracle(name.into()), args)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(f))
    }

    pub fn exists(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    pub fn bforall(v: impl Into<String>, bound: Term, f: Formula) -> Formula {
        Formula::BForall(v.into(), bound, Box::new(f))
    }

    pub fn bexists(v: impl Into<String>, bound: Term, f: Formula) -> Formula {
        Formula::BExists(v.into(), bound, Box::new(f))
    }

    /// Free variables, respecting quantifier binding.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    fn free_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => {
                for t in args {
                    t.free_vars(out);
                }
            }
            Formula::Not(f) => f.free_vars_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                let mut inner = BTreeSet::new();
                f.free_vars_into(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
            Formula::BForall(v, bound, f) | Formula::BExists(v, bound, f) => {
                bound.free_vars(out);
                let mut inner = BTreeSet::new();
                f.free_vars_into(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    /// A sentence has no free variables (parameters are allowed; they only
    /// ever appear inside proof trees).
    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.params_into(&mut out);
        out
    }

    fn params_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => {
                for t in args {
                    t.params(out);
                }
            }
            Formula::Not(f) => f.params_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.params_into(out);
                b.params_into(out);
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => f.params_into(out),
            Formula::BForall(_, bound, f) | Formula::BExists(_, bound, f) => {
                bound.params(out);
                f.params_into(out);
            }
        }
    }

    /// Substitute `replacement` for free occurrences of `var`.
    ///
    /// Callers substitute either ground terms or terms whose only variable
    /// is `var` itself, so quantifier capture cannot occur.
    pub fn subst_var(&self, var: &str, replacement: &Term) -> Formula {
        match self {
            Formula::Atom(rel, args) => Formula::Atom(
                rel.clone(),
                args.iter().map(|t| t.subst_var(var, replacement)).collect(),
            ),
            Formula::Not(f) => Formula::not(f.subst_var(var, replacement)),
            Formula::And(a, b) => {
                Formula::and(a.subst_var(var, replacement), b.subst_var(var, replacement))
            }
            Formula::Or(a, b) => {
                Formula::or(a.subst_var(var, replacement), b.subst_var(var, replacement))
            }
            Formula::Implies(a, b) => {
                Formula::implies(a.subst_var(var, replacement), b.subst_var(var, replacement))
            }
            Formula::Forall(v, f) => {
                if v == var {
                    self.clone()
                } else {
                    Formula::forall(v.clone(), f.subst_var(var, replacement))
                }
            }
            Formula::Exists(v, f) => {
                if v == var {
                    self.clone()
                } else {
                    Formula::exists(v.clone(), f.subst_var(var, replacement))
                }
            }
            Formula::BForall(v, bound, f) => {
                let new_bound = bound.subst_var(var, replacement);
                if v == var {
                    Formula::bforall(v.clone(), new_bound, (**f).clone())
                } else {
                    Formula::bforall(v.clone(), new_bound, f.subst_var(var, replacement))
                }
            }
            Formula::BExists(v, bound, f) => {
                let new_bound = bound.subst_var(var, replacement);
                if v == var {
                    Formula::bexists(v.clone(), new_bound, (**f).clone())
                } else {
                    Formula::bexists(v.clone(), new_bound, f.subst_var(var, replacement))
                }
            }
        }
    }

    /// Rewrite every bounded quantifier into its unbounded reading:
    /// `forall v <= s. F` becomes `forall v. (v <= s -> F)` and
    /// `exists v <= s. F` becomes `exists v. (v <= s and F)`.
    /// Identity on formulas that are already expanded.
    pub fn expand_bounded(&self) -> Formula {
        match self {
            Formula::Atom(..) => self.clone(),
            Formula::Not(f) => Formula::not(f.expand_bounded()),
            Formula::And(a, b) => Formula::and(a.expand_bounded(), b.expand_bounded()),
            Formula::Or(a, b) => Formula::or(a.expand_bounded(), b.expand_bounded()),
            Formula::Implies(a, b) => Formula::implies(a.expand_bounded(), b.expand_bounded()),
            Formula::Forall(v, f) => Formula::forall(v.clone(), f.expand_bounded()),
            Formula::Exists(v, f) => Formula::exists(v.clone(), f.expand_bounded()),
            Formula::BForall(v, bound, f) => Formula::forall(
                v.clone(),
                Formula::implies(
                    Formula::leq(Term::var(v.clone()), bound.clone()),
                    f.expand_bounded(),
                ),
            ),
            Formula::BExists(v, bound, f) => Formula::exists(
                v.clone(),
                Formula::and(
                    Formula::leq(Term::var(v.clone()), bound.clone()),
                    f.expand_bounded(),
                ),
            ),
        }
    }

    /// Token count over the whole formula, same convention as terms:
    /// every connective, quantifier, relation and term token counts one.
    pub fn token_count(&self) -> usize {
        match self {
            Formula::Atom(_, args) => 1 + args.iter().map(Term::token_count).sum::<usize>(),
            Formula::Not(f) => 1 + f.token_count(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.token_count() + b.token_count()
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => 2 + f.token_count(),
            Formula::BForall(_, bound, f) | Formula::BExists(_, bound, f) => {
                2 + bound.token_count() + f.token_count()
            }
        }
    }

    /// Every term occurring in the formula, in syntactic order.
    pub fn terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.terms_into(&mut out);
        out
    }

    fn terms_into(&self, out: &mut Vec<Term>) {
        match self {
            Formula::Atom(_, args) => out.extend(args.iter().cloned()),
            Formula::Not(f) => f.terms_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.terms_into(out);
                b.terms_into(out);
            }
            Formula::Forall(_, f) | Formula::Exists(_, f) => f.terms_into(out),
            Formula::BForall(_, bound, f) | Formula::BExists(_, bound, f) => {
                out.push(bound.clone());
                f.terms_into(out);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => write!(f, "{c}"),
            Term::Var(v) => write!(f, "{v}"),
            Term::Param(p) => write!(f, "${p}"),
            Term::App(g, args) => {
                write!(f, "({}", g.name())?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Term::OracleApp(name, args) => {
                write!(f, "(oterm {name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(Rel::Eq, args) => write!(f, "(= {} {})", args[0], args[1]),
            Formula::Atom(Rel::Leq, args) => write!(f, "(leq {} {})", args[0], args[1]),
            Formula::Atom(Rel::Oracle(name), args) => {
                write!(f, "(oracle {name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
            Formula::Forall(v, g) => write!(f, "(forall {v} {g})"),
            Formula::Exists(v, g) => write!(f, "(exists {v} {g})"),
            Formula::BForall(v, bound, g) => write!(f, "(bforall {v} {bound} {g})"),
            Formula::BExists(v, bound, g) => write!(f, "(bexists {v} {bound} {g})"),
        }
    }
}
