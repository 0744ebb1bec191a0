//! S-expression reader for terms and formulas.
//!
//! Grammar: atoms `(= t u)`, `(leq t u)`, `(oracle NAME t...)`; terms `0`,
//! `1`, `(add t u)`, `(double t)`, `(sub t u)`, `(div t u)`, `(max t u)`,
//! `(logsp t)`, `(root t u)`, `(count t u)`, `(oterm NAME t...)`; formulas
//! `(not f)`, `(and f g)`, `(or f g)`, `(implies f g)`, `(forall x f)`,
//! `(exists x f)`, `(bforall x t f)`, `(bexists x t f)`. Parameters are
//! written `$name`. A bare decimal literal `n >= 2` is accepted as sugar
//! for the compact numeral term of `n`; the printer never emits it, so
//! printing is canonical.

use super::ast::{Formula, GroundingFn, Rel, Term};
use crate::godel::nat_term;
use num_bigint::BigUint;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("parse error at {line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub(crate) fn new(pos: Pos, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: pos.line,
            col: pos.col,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pos {
    pub(crate) line: usize,
    pub(crate) col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug)]
pub(crate) enum SExpr {
    Sym(String, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    pub(crate) fn pos(&self) -> Pos {
        match self {
            SExpr::Sym(_, p) | SExpr::List(_, p) => *p,
        }
    }

    pub(crate) fn as_sym(&self) -> Option<&str> {
        match self {
            SExpr::Sym(s, _) => Some(s),
            SExpr::List(..) => None,
        }
    }

    pub(crate) fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items, _) => Some(items),
            SExpr::Sym(..) => None,
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    idx: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            idx: 0,
            line: 1,
            col: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.idx).copied()?;
        self.idx += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.idx).copied()
    }

    fn skip_ws(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'#') => {
                    while let Some(c) = self.peek() {
                        if c == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn read_sexpr(&mut self) -> Result<SExpr, ParseError> {
        self.skip_ws();
        let pos = self.pos();
        match self.peek() {
            None => Err(ParseError::new(pos, "unexpected end of input")),
            Some(b'(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        None => return Err(ParseError::new(self.pos(), "unclosed '('")),
                        Some(b')') => {
                            self.bump();
                            return Ok(SExpr::List(items, pos));
                        }
                        _ => items.push(self.read_sexpr()?),
                    }
                }
            }
            Some(b')') => Err(ParseError::new(pos, "unexpected ')'")),
            Some(_) => {
                let mut sym = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_whitespace() || c == b'(' || c == b')' || c == b'#' {
                        break;
                    }
                    sym.push(c as char);
                    self.bump();
                }
                Ok(SExpr::Sym(sym, pos))
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.idx >= self.src.len()
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

const FORMULA_HEADS: [&str; 11] = [
    "=", "leq", "oracle", "not", "and", "or", "implies", "forall", "exists", "bforall", "bexists",
];

fn sym_to_term(sym: &str, pos: Pos) -> Result<Term, ParseError> {
    if sym == "0" {
        return Ok(Term::zero());
    }
    if sym == "1" {
        return Ok(Term::one());
    }
    if sym.chars().all(|c| c.is_ascii_digit()) {
        // decimal sugar: parses to the compact numeral term
        let n = BigUint::from_str(sym)
            .map_err(|_| ParseError::new(pos, format!("bad numeric literal '{sym}'")))?;
        return Ok(nat_term(&n));
    }
    if let Some(rest) = sym.strip_prefix('$') {
        if is_ident(rest) {
            return Ok(Term::Param(rest.to_string()));
        }
        return Err(ParseError::new(pos, format!("bad parameter name '{sym}'")));
    }
    if is_ident(sym) {
        if GroundingFn::from_name(sym).is_some() || FORMULA_HEADS.contains(&sym) || sym == "oterm" {
            return Err(ParseError::new(
                pos,
                format!("reserved word '{sym}' cannot be a variable"),
            ));
        }
        return Ok(Term::Var(sym.to_string()));
    }
    Err(ParseError::new(pos, format!("bad token '{sym}'")))
}

pub(crate) fn term_from_sexpr(e: &SExpr) -> Result<Term, ParseError> {
    match e {
        SExpr::Sym(s, pos) => sym_to_term(s, *pos),
        SExpr::List(items, pos) => {
            let (head, head_pos) = match items.first() {
                Some(SExpr::Sym(s, p)) => (s.as_str(), *p),
                _ => return Err(ParseError::new(*pos, "expected an operator after '('")),
            };
            if let Some(f) = GroundingFn::from_name(head) {
                let args = &items[1..];
                if args.len() != f.arity() {
                    return Err(ParseError::new(
                        head_pos,
                        format!("{head} expects {} argument(s), got {}", f.arity(), args.len()),
                    ));
                }
                let args = args.iter().map(term_from_sexpr).collect::<Result<_, _>>()?;
                return Ok(Term::App(f, args));
            }
            if head == "oterm" {
                let name = match items.get(1) {
                    Some(SExpr::Sym(s, p)) if is_ident(s) => {
                        let _ = p;
                        s.clone()
                    }
                    _ => return Err(ParseError::new(head_pos, "oterm expects a symbol name")),
                };
                let args = items[2..]
                    .iter()
                    .map(term_from_sexpr)
                    .collect::<Result<_, _>>()?;
                return Ok(Term::OracleApp(name, args));
            }
            Err(ParseError::new(head_pos, format!("unknown term operator '{head}'")))
        }
    }
}

fn require_args<'e>(
    items: &'e [SExpr],
    head: &str,
    pos: Pos,
    n: usize,
) -> Result<&'e [SExpr], ParseError> {
    let args = &items[1..];
    if args.len() != n {
        return Err(ParseError::new(
            pos,
            format!("{head} expects {n} argument(s), got {}", args.len()),
        ));
    }
    Ok(args)
}

fn ident_arg(e: &SExpr) -> Result<String, ParseError> {
    match e {
        SExpr::Sym(s, _) if is_ident(s) && GroundingFn::from_name(s).is_none() => Ok(s.clone()),
        _ => Err(ParseError::new(e.pos(), "expected a variable name")),
    }
}

pub(crate) fn formula_from_sexpr(e: &SExpr) -> Result<Formula, ParseError> {
    let (items, pos) = match e {
        SExpr::List(items, pos) => (items.as_slice(), *pos),
        SExpr::Sym(_, pos) => {
            return Err(ParseError::new(*pos, "expected a formula, found a bare token"))
        }
    };
    let (head, head_pos) = match items.first() {
        Some(SExpr::Sym(s, p)) => (s.as_str(), *p),
        _ => return Err(ParseError::new(pos, "expected an operator after '('")),
    };
    match head {
        "=" => {
            let args = require_args(items, head, head_pos, 2)?;
            Ok(Formula::eq(term_from_sexpr(&args[0])?, term_from_sexpr(&args[1])?))
        }
        "leq" => {
            let args = require_args(items, head, head_pos, 2)?;
            Ok(Formula::leq(term_from_sexpr(&args[0])?, term_from_sexpr(&args[1])?))
        }
        "oracle" => {
            let name = match items.get(1) {
                Some(SExpr::Sym(s, _)) if is_ident(s) => s.clone(),
                _ => return Err(ParseError::new(head_pos, "oracle expects a symbol name")),
            };
            let args = items[2..]
                .iter()
                .map(term_from_sexpr)
                .collect::<Result<_, _>>()?;
            Ok(Formula::Atom(Rel::Oracle(name), args))
        }
        "not" => {
            let args = require_args(items, head, head_pos, 1)?;
            Ok(Formula::not(formula_from_sexpr(&args[0])?))
        }
        "and" | "or" | "implies" => {
            let args = require_args(items, head, head_pos, 2)?;
            let a = formula_from_sexpr(&args[0])?;
            let b = formula_from_sexpr(&args[1])?;
            Ok(match head {
                "and" => Formula::and(a, b),
                "or" => Formula::or(a, b),
                _ => Formula::implies(a, b),
            })
        }
        "forall" | "exists" => {
            let args = require_args(items, head, head_pos, 2)?;
            let v = ident_arg(&args[0])?;
            let f = formula_from_sexpr(&args[1])?;
            Ok(if head == "forall" {
                Formula::forall(v, f)
            } else {
                Formula::exists(v, f)
            })
        }
        "bforall" | "bexists" => {
            let args = require_args(items, head, head_pos, 3)?;
            let v = ident_arg(&args[0])?;
            let bound = term_from_sexpr(&args[1])?;
            let f = formula_from_sexpr(&args[2])?;
            Ok(if head == "bforall" {
                Formula::bforall(v, bound, f)
            } else {
                Formula::bexists(v, bound, f)
            })
        }
        _ => Err(ParseError::new(head_pos, format!("unknown formula operator '{head}'"))),
    }
}

pub(crate) fn read_single(text: &str) -> Result<SExpr, ParseError> {
    let mut lx = Lexer::new(text);
    let e = lx.read_sexpr()?;
    if !lx.at_end() {
        return Err(ParseError::new(lx.pos(), "trailing input after expression"));
    }
    Ok(e)
}

/// Read every expression in the text, bare symbols included.
pub(crate) fn read_all(text: &str) -> Result<Vec<SExpr>, ParseError> {
    let mut lx = Lexer::new(text);
    let mut out = Vec::new();
    while !lx.at_end() {
        out.push(lx.read_sexpr()?);
    }
    Ok(out)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    term_from_sexpr(&read_single(text)?)
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    formula_from_sexpr(&read_single(text)?)
}

/// Parse a formula and require it to be a sentence (no free variables),
/// as demanded of axioms and goals.
pub fn parse_sentence(text: &str) -> Result<Formula, ParseError> {
    let f = parse_formula(text)?;
    let free = f.free_vars();
    if let Some(v) = free.iter().next() {
        return Err(ParseError {
            line: 1,
            col: 1,
            msg: format!("unbound variable '{v}' in sentence"),
        });
    }
    Ok(f)
}

/// Either kind of expression, for callers that accept both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Term(Term),
    Formula(Formula),
}

/// Parse a term or a formula, deciding by the head symbol.
pub fn parse_any(text: &str) -> Result<Parsed, ParseError> {
    let e = read_single(text)?;
    let is_formula = match &e {
        SExpr::Sym(..) => false,
        SExpr::List(items, _) => matches!(
            items.first(),
            Some(SExpr::Sym(s, _)) if FORMULA_HEADS.contains(&s.as_str())
        ),
    };
    if is_formula {
        Ok(Parsed::Formula(formula_from_sexpr(&e)?))
    } else {
        Ok(Parsed::Term(term_from_sexpr(&e)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_atom() {
        assert_eq!(
            parse_formula("(leq 0 0)").unwrap(),
            Formula::leq(Term::zero(), Term::zero())
        );
    }

    #[test]
    fn parses_totality_sentence() {
        let f = parse_formula("(forall x (exists z (= (add x 1) z)))").unwrap();
        let expected = Formula::forall(
            "x",
            Formula::exists(
                "z",
                Formula::eq(Term::add(Term::var("x"), Term::one()), Term::var("z")),
            ),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn reports_position_on_arity_error() {
        let err = parse_formula("(and (= 0 0))").unwrap_err();
        assert_eq!((err.line, err.col), (1, 2));
        assert!(err.msg.contains("and expects 2"));
    }

    #[test]
    fn rejects_unbound_sentence_variable() {
        let err = parse_sentence("(= x 0)").unwrap_err();
        assert!(err.msg.contains("unbound variable 'x'"));
    }

    #[test]
    fn decimal_sugar_parses_to_numeral() {
        let t = parse_term("6").unwrap();
        assert_eq!(t, Term::double(Term::add(Term::double(Term::one()), Term::one())));
    }

    #[test]
    fn parameters_round_trip() {
        let t = parse_term("(add $p 1)").unwrap();
        assert_eq!(t, Term::add(Term::param("p"), Term::one()));
        assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn comments_are_skipped() {
        let f = parse_formula("(= 0 # trailing words\n 0)").unwrap();
        assert_eq!(f, Formula::eq(Term::zero(), Term::zero()));
    }
}
