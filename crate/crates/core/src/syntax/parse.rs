//! Recursive-descent parser for the concrete syntax.
//!
//! Accepts the canonical rendering plus a few conveniences: whitespace is
//! optional around parentheses, redundant parentheses are allowed, Unicode
//! connectives are accepted, and `( A v < t )` / `( E v < t )` introduce
//! bounded quantifiers.

use std::fmt;

use super::ast::{Expr, Formula, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Lex {
    Zero,
    S,
    Plus,
    Star,
    Eq,
    Le,
    Lt,
    Not,
    And,
    Or,
    Imp,
    Iff,
    All,
    Ex,
    LParen,
    RParen,
    Var(u32),
}

impl fmt::Display for Lex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Lex::Zero => "0",
            Lex::S => "s",
            Lex::Plus => "+",
            Lex::Star => "*",
            Lex::Eq => "=",
            Lex::Le => "<=",
            Lex::Lt => "<",
            Lex::Not => "~",
            Lex::And => "&",
            Lex::Or => "|",
            Lex::Imp => "->",
            Lex::Iff => "<->",
            Lex::All => "A",
            Lex::Ex => "E",
            Lex::LParen => "(",
            Lex::RParen => ")",
            Lex::Var(i) => return write!(f, "v{i}"),
        };
        f.write_str(s)
    }
}

/// A syntax error. `position` is the 1-based index of the offending token;
/// errors at end of input point at the last token.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at token {position}: expected {}, found {}", expected.join(" or "), found.as_deref().unwrap_or("end of input"))]
pub struct ParseError {
    pub position: usize,
    pub found: Option<String>,
    pub expected: Vec<String>,
}

fn lex(text: &str) -> Result<Vec<Lex>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |out: &Vec<Lex>, c: char| ParseError {
        position: out.len() + 1,
        found: Some(c.to_string()),
        expected: vec!["a symbol".to_string()],
    };
    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0' => Lex::Zero,
            's' => Lex::S,
            '+' => Lex::Plus,
            '*' | '·' => Lex::Star,
            '=' => Lex::Eq,
            '~' | '¬' => Lex::Not,
            '&' | '∧' => Lex::And,
            '|' | '∨' => Lex::Or,
            '→' => Lex::Imp,
            '↔' => Lex::Iff,
            '≤' => Lex::Le,
            'A' | '∀' => Lex::All,
            'E' | '∃' => Lex::Ex,
            '(' => Lex::LParen,
            ')' => Lex::RParen,
            '-' if next == Some('>') => {
                i += 1;
                Lex::Imp
            }
            '<' => {
                if next == Some('=') {
                    i += 1;
                    Lex::Le
                } else if next == Some('-') && chars.get(i + 2) == Some(&'>') {
                    i += 2;
                    Lex::Iff
                } else {
                    Lex::Lt
                }
            }
            'v' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(err(&out, c));
                }
                let digits: String = chars[start..j].iter().collect();
                let idx = digits.parse::<u32>().map_err(|_| err(&out, c))?;
                i = j;
                out.push(Lex::Var(idx));
                continue;
            }
            other => return Err(err(&out, other)),
        };
        out.push(tok);
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lex>,
    pos: usize,
    best: Option<ParseError>,
}

type PResult<T> = Result<T, ()>;

impl Parser {
    fn peek(&self) -> Option<Lex> {
        self.toks.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<Lex> {
        self.toks.get(self.pos + k).copied()
    }

    fn fail<T>(&mut self, expected: &[&str]) -> PResult<T> {
        let (position, found) = match self.peek() {
            Some(t) => (self.pos + 1, Some(t.to_string())),
            None => (self.toks.len().max(1), None),
        };
        // `key` orders failures by how far they got; end of input is furthest
        let key = |e: &ParseError| if e.found.is_none() { usize::MAX } else { e.position };
        let candidate = ParseError { position, found, expected: expected.iter().map(|s| s.to_string()).collect() };
        match &mut self.best {
            Some(b) if key(b) > key(&candidate) => {}
            Some(b) if key(b) == key(&candidate) => {
                for e in candidate.expected {
                    if !b.expected.contains(&e) {
                        b.expected.push(e);
                    }
                }
            }
            _ => self.best = Some(candidate),
        }
        Err(())
    }

    fn expect(&mut self, t: Lex, name: &str) -> PResult<()> {
        if self.peek() == Some(t) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&[name])
        }
    }

    fn var(&mut self) -> PResult<Var> {
        match self.peek() {
            Some(Lex::Var(i)) => {
                self.pos += 1;
                Ok(Var(i))
            }
            _ => self.fail(&["variable"]),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let l = self.uterm()?;
        match self.peek() {
            Some(Lex::Plus) => {
                self.pos += 1;
                let r = self.uterm()?;
                Ok(Term::add(l, r))
            }
            Some(Lex::Star) => {
                self.pos += 1;
                let r = self.uterm()?;
                Ok(Term::mul(l, r))
            }
            _ => Ok(l),
        }
    }

    fn uterm(&mut self) -> PResult<Term> {
        let mut succs = 0u64;
        while self.peek() == Some(Lex::S) {
            self.pos += 1;
            succs += 1;
        }
        let core = match self.peek() {
            Some(Lex::Zero) => {
                self.pos += 1;
                Term::Zero
            }
            Some(Lex::Var(i)) => {
                self.pos += 1;
                Term::var(i)
            }
            Some(Lex::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Lex::RParen, ")")?;
                t
            }
            _ => return self.fail(&["0", "s", "variable", "("]),
        };
        Ok(Term::succ_n(succs, core))
    }

    fn atom(&mut self) -> PResult<Formula> {
        let l = self.term()?;
        match self.peek() {
            Some(Lex::Eq) => {
                self.pos += 1;
                Ok(Formula::eq(l, self.term()?))
            }
            Some(Lex::Le) => {
                self.pos += 1;
                Ok(Formula::le(l, self.term()?))
            }
            Some(Lex::Lt) => {
                self.pos += 1;
                Ok(Formula::lt(l, self.term()?))
            }
            _ => self.fail(&["=", "<=", "+", "*"]),
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let l = self.unary()?;
        let mk = match self.peek() {
            Some(Lex::And) => Formula::and,
            Some(Lex::Or) => Formula::or,
            Some(Lex::Imp) => Formula::imp,
            Some(Lex::Iff) => Formula::iff,
            _ => return Ok(l),
        };
        self.pos += 1;
        let r = self.unary()?;
        Ok(mk(l, r))
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek() {
            Some(Lex::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Lex::LParen) if matches!(self.peek_at(1), Some(Lex::All | Lex::Ex)) => {
                let universal = self.peek_at(1) == Some(Lex::All);
                self.pos += 2;
                let v = self.var()?;
                let bound = if self.peek() == Some(Lex::Lt) {
                    self.pos += 1;
                    Some(self.term()?)
                } else {
                    None
                };
                self.expect(Lex::RParen, ")")?;
                let body = self.unary()?;
                Ok(match (universal, bound) {
                    (true, None) => Formula::forall(v, body),
                    (false, None) => Formula::exists(v, body),
                    (true, Some(b)) => Formula::bforall(v, b, body),
                    (false, Some(b)) => Formula::bexists(v, b, body),
                })
            }
            Some(Lex::LParen) => {
                let save = self.pos;
                self.pos += 1;
                if let Ok(f) = self.formula() {
                    if self.peek() == Some(Lex::RParen) {
                        self.pos += 1;
                        return Ok(f);
                    }
                    let _ = self.fail::<()>(&[")"]);
                }
                self.pos = save;
                self.atom()
            }
            _ => self.atom(),
        }
    }

    fn at_end(&mut self) -> PResult<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }
}

fn run<T>(text: &str, f: impl Fn(&mut Parser) -> PResult<T>) -> Result<T, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, best: None };
    match f(&mut p).and_then(|v| p.at_end().map(|_| v)) {
        Ok(v) => Ok(v),
        Err(()) => Err(p.best.expect("failure without diagnostic")),
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    run(text, |p| p.term())
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    run(text, |p| p.formula())
}

/// Parses either a formula or a term.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, best: None };
    if let Ok(f) = p.formula() {
        if p.at_end().is_ok() {
            return Ok(Expr::Formula(f));
        }
    }
    p.pos = 0;
    if let Ok(t) = p.term() {
        if p.at_end().is_ok() {
            return Ok(Expr::Term(t));
        }
    }
    Err(p.best.expect("failure without diagnostic"))
}
