//! Numbering of terms, formulas and proof objects.
//!
//! The canonical printing of an object is tokenized (parentheses and the
//! fixed keyword vocabulary are single tokens; identifiers, parameters
//! and numbers are escaped as bracketed character runs) and the token
//! stream is read as a bijective base-K numeral, K being the vocabulary
//! size. The map is injective, stable across runs, decodable, and
//! strictly monotone in token-stream length: any longer stream codes to
//! a larger number than any shorter one.

use crate::axiom::hilbert::HilbertProof;
use crate::lstar::ast::{Formula, Term};
use crate::lstar::parse::{parse_any, Parsed};
use crate::tableau::tree::ProofTree;
use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

/// Keyword vocabulary. Order is the coding contract; append only.
const KEYWORDS: &[&str] = &[
    "(", ")", "=", "leq", "oracle", "oterm", "not", "and", "or", "implies", "forall", "exists",
    "bforall", "bexists", "0", "1", "add", "double", "sub", "div", "max", "logsp", "root",
    "count", "proof", "node", "close", "negatedgoal", "axiom", "lem", "rule", "term", "param",
    "hproof", "line", "basisaxiom", "taut", "univinst", "univdist", "vacgen", "mp", "_", "a",
    "b",
];

/// Characters allowed inside escaped words.
const WORD_CHARS: &[u8] = b"abcdefghijklmnopqrstuvwxyz0123456789_$";

const ESC_BEGIN: u32 = KEYWORDS.len() as u32;
const ESC_END: u32 = ESC_BEGIN + 1;
const CHAR_BASE: u32 = ESC_END + 1;
const BASE: u32 = CHAR_BASE + WORD_CHARS.len() as u32;

fn keyword_token(word: &str) -> Option<u32> {
    KEYWORDS.iter().position(|k| *k == word).map(|i| i as u32)
}

fn char_token(c: u8) -> Option<u32> {
    WORD_CHARS
        .iter()
        .position(|&w| w == c)
        .map(|i| CHAR_BASE + i as u32)
}

/// Tokenize a canonical printing. Panics on text no printer in this
/// crate emits.
fn tokenize(text: &str) -> Vec<u32> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                out.push(0);
                i += 1;
            }
            b')' => {
                out.push(1);
                i += 1;
            }
            b' ' => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !matches!(bytes[i], b'(' | b')' | b' ') {
                    i += 1;
                }
                let word = &text[start..i];
                match keyword_token(word) {
                    Some(t) => out.push(t),
                    None => {
                        out.push(ESC_BEGIN);
                        for &c in word.as_bytes() {
                            out.push(char_token(c).unwrap_or_else(|| {
                                panic!("character {:?} outside the code vocabulary", c as char)
                            }));
                        }
                        out.push(ESC_END);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("code 0 denotes the empty token stream")]
    EmptyCode,
    #[error("malformed token stream: {0}")]
    BadTokens(String),
    #[error("decoded text is not a well-formed object: {0}")]
    BadSyntax(String),
}

/// Rebuild the canonical text from tokens.
fn detokenize(tokens: &[u32]) -> Result<String, DecodeError> {
    let mut out = String::new();
    let mut i = 0;
    // a space separates two adjacent atoms or an atom after ')'
    let needs_space = |out: &String| {
        out.ends_with(|c: char| c != '(') && !out.is_empty()
    };
    while i < tokens.len() {
        let t = tokens[i];
        if t == 0 {
            if needs_space(&out) {
                out.push(' ');
            }
            out.push('(');
            i += 1;
        } else if t == 1 {
            out.push(')');
            i += 1;
        } else if t < ESC_BEGIN {
            if needs_space(&out) {
                out.push(' ');
            }
            out.push_str(KEYWORDS[t as usize]);
            i += 1;
        } else if t == ESC_BEGIN {
            if needs_space(&out) {
                out.push(' ');
            }
            i += 1;
            let mut word = String::new();
            loop {
                match tokens.get(i) {
                    Some(&c) if c >= CHAR_BASE => {
                        word.push(WORD_CHARS[(c - CHAR_BASE) as usize] as char);
                        i += 1;
                    }
                    Some(&c) if c == ESC_END => {
                        i += 1;
                        break;
                    }
                    _ => return Err(DecodeError::BadTokens("unterminated escape".into())),
                }
            }
            if word.is_empty() {
                return Err(DecodeError::BadTokens("empty escaped word".into()));
            }
            out.push_str(&word);
        } else {
            return Err(DecodeError::BadTokens(format!("stray token {t}")));
        }
    }
    Ok(out)
}

/// Bijective base-K value of a canonical string's token stream.
pub fn encode_text(text: &str) -> BigUint {
    let mut code = BigUint::zero();
    for t in tokenize(text) {
        code = code * BASE + (t + 1);
    }
    code
}

/// Inverse of [`encode_text`].
pub fn decode_text(code: &BigUint) -> Result<String, DecodeError> {
    if code.is_zero() {
        return Err(DecodeError::EmptyCode);
    }
    let mut n = code.clone();
    let base = BigUint::from(BASE);
    let one = BigUint::from(1u8);
    let mut rev = Vec::new();
    while !n.is_zero() {
        // bijective digits run 1..=BASE
        let d = (&n - &one) % &base;
        let idx: u32 = d.to_u32_digits().first().copied().unwrap_or(0);
        rev.push(idx);
        n = (n - idx - 1u32) / &base;
    }
    rev.reverse();
    detokenize(&rev)
}

/// Any object the numbering covers.
#[derive(Debug, Clone, PartialEq)]
pub enum CodedAst {
    Term(Term),
    Formula(Formula),
    Proof(ProofTree),
    Hilbert(HilbertProof),
}

impl CodedAst {
    pub fn canonical_text(&self) -> String {
        match self {
            CodedAst::Term(t) => t.to_string(),
            CodedAst::Formula(f) => f.to_string(),
            CodedAst::Proof(p) => p.to_canonical_sexpr(),
            CodedAst::Hilbert(h) => h.to_canonical_sexpr(),
        }
    }
}

pub fn encode(ast: &CodedAst) -> BigUint {
    encode_text(&ast.canonical_text())
}

pub fn encode_term(t: &Term) -> BigUint {
    encode_text(&t.to_string())
}

pub fn encode_formula(f: &Formula) -> BigUint {
    encode_text(&f.to_string())
}

pub fn encode_proof(p: &ProofTree) -> BigUint {
    encode_text(&p.to_canonical_sexpr())
}

pub fn encode_hilbert(p: &HilbertProof) -> BigUint {
    encode_text(&p.to_canonical_sexpr())
}

/// Decode a number back into the object it codes.
pub fn decode(code: &BigUint) -> Result<CodedAst, DecodeError> {
    let text = decode_text(code)?;
    if text.starts_with("(proof ") {
        let p = ProofTree::from_canonical_sexpr(&text)
            .map_err(|e| DecodeError::BadSyntax(e.to_string()))?;
        return Ok(CodedAst::Proof(p));
    }
    if text.starts_with("(hproof ") {
        let p = HilbertProof::from_canonical_sexpr(&text)
            .map_err(|e| DecodeError::BadSyntax(e.to_string()))?;
        return Ok(CodedAst::Hilbert(p));
    }
    match parse_any(&text) {
        Ok(Parsed::Term(t)) => Ok(CodedAst::Term(t)),
        Ok(Parsed::Formula(f)) => Ok(CodedAst::Formula(f)),
        Err(e) => Err(DecodeError::BadSyntax(e.to_string())),
    }
}

/// Decode, requiring a formula.
pub fn decode_formula(code: &BigUint) -> Result<Formula, DecodeError> {
    match decode(code)? {
        CodedAst::Formula(f) => Ok(f),
        other => Err(DecodeError::BadSyntax(format!(
            "expected a formula, decoded {}",
            match other {
                CodedAst::Term(_) => "a term",
                CodedAst::Proof(_) | CodedAst::Hilbert(_) => "a proof",
                CodedAst::Formula(_) => unreachable!(),
            }
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lstar::parse::parse_formula;

    #[test]
    fn round_trips_smallest_atom() {
        let f = Formula::eq(Term::zero(), Term::one());
        let code = encode_formula(&f);
        assert_eq!(decode(&code).unwrap(), CodedAst::Formula(f));
    }

    #[test]
    fn text_layer_round_trips() {
        for s in [
            "0",
            "(= 0 1)",
            "(forall x (= x x))",
            "(oterm sub $p1 (add 0 1))",
            "(bexists v99 (double 1) (leq v99 0))",
        ] {
            assert_eq!(decode_text(&encode_text(s)).unwrap(), s);
        }
    }

    #[test]
    fn length_monotone_in_tokens() {
        // the single constant codes below the smallest atom
        let c = encode_term(&Term::zero());
        let f = encode_formula(&Formula::eq(Term::zero(), Term::one()));
        assert!(c < f);
        // 3 tokens beat 2 tokens regardless of which tokens
        assert!(encode_text("(louder)") > encode_text("()"));
    }

    #[test]
    fn rejects_garbage_codes() {
        assert!(decode(&BigUint::zero()).is_err());
        // ")" alone: token 1, digit 2
        assert!(decode(&BigUint::from(2u8)).is_err());
    }

    #[test]
    fn decoding_distinguishes_terms_and_formulas() {
        let t = encode_text("(add 0 1)");
        assert!(matches!(decode(&t).unwrap(), CodedAst::Term(_)));
        let f = encode_text("(leq 0 1)");
        assert!(matches!(decode(&f).unwrap(), CodedAst::Formula(_)));
    }

    #[test]
    fn code_of_parsed_equals_code_of_printed() {
        let f = parse_formula("(bforall v 3 (= (sub v v) 0))").unwrap();
        let code = encode_formula(&f);
        let back = decode_formula(&code).unwrap();
        assert_eq!(back, f);
        assert_eq!(encode_formula(&back), code);
    }
}
