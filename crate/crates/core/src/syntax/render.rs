//! Canonical concrete syntax and the length measure.
//!
//! Rendering rules: a binary term (`+`, `*`) gets one pair of parentheses
//! when it is the operand of another function symbol, and none when it is
//! the side of an atomic formula. Every proper subformula is parenthesized;
//! the outermost formula is not. Quantifiers render as `( A v ) ( body )`.
//! Bounded quantifiers are expanded before rendering, so the length of a
//! formula is always the length of its expansion.

use std::fmt;

use super::ast::{Expr, Formula, Term, Var};
use super::classify::expand_bounded_shallow;

/// One symbol of the canonical syntax.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Zero,
    S,
    Plus,
    Star,
    Eq,
    Le,
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

impl Token {
    pub fn text(self) -> String {
        match self {
            Token::Var(i) => format!("v{i}"),
            other => other.symbol().to_string(),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Token::Zero => "0",
            Token::S => "s",
            Token::Plus => "+",
            Token::Star => "*",
            Token::Eq => "=",
            Token::Le => "<=",
            Token::Not => "~",
            Token::And => "&",
            Token::Or => "|",
            Token::Imp => "->",
            Token::Iff => "<->",
            Token::All => "A",
            Token::Ex => "E",
            Token::LParen => "(",
            Token::RParen => ")",
            Token::Var(_) => "v",
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Var(i) => write!(f, "v{i}"),
            other => f.write_str(other.symbol()),
        }
    }
}

fn term_tokens(t: &Term, operand: bool, out: &mut Vec<Token>) {
    match t {
        Term::Zero => out.push(Token::Zero),
        Term::Var(Var(i)) => out.push(Token::Var(*i)),
        Term::Succ(a) => {
            out.push(Token::S);
            term_tokens(a, true, out);
        }
        Term::Add(l, r) | Term::Mul(l, r) => {
            let op = if matches!(t, Term::Add(..)) { Token::Plus } else { Token::Star };
            if operand {
                out.push(Token::LParen);
            }
            term_tokens(l, true, out);
            out.push(op);
            term_tokens(r, true, out);
            if operand {
                out.push(Token::RParen);
            }
        }
    }
}

fn formula_tokens(f: &Formula, top: bool, out: &mut Vec<Token>) {
    if let Some(expanded) = expand_bounded_shallow(f) {
        return formula_tokens(&expanded, top, out);
    }
    if !top {
        out.push(Token::LParen);
    }
    match f {
        Formula::Eq(l, r) | Formula::Le(l, r) => {
            term_tokens(l, false, out);
            out.push(if matches!(f, Formula::Eq(..)) { Token::Eq } else { Token::Le });
            term_tokens(r, false, out);
        }
        Formula::Not(a) => {
            out.push(Token::Not);
            formula_tokens(a, false, out);
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            formula_tokens(a, false, out);
            out.push(match f {
                Formula::And(..) => Token::And,
                Formula::Or(..) => Token::Or,
                Formula::Imp(..) => Token::Imp,
                _ => Token::Iff,
            });
            formula_tokens(b, false, out);
        }
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            out.push(Token::LParen);
            out.push(if matches!(f, Formula::Forall(..)) { Token::All } else { Token::Ex });
            out.push(Token::Var(v.0));
            out.push(Token::RParen);
            formula_tokens(body, false, out);
        }
        Formula::BoundedForall(..) | Formula::BoundedExists(..) => unreachable!("expanded above"),
    }
    if !top {
        out.push(Token::RParen);
    }
}

/// Canonical token sequence of a term.
pub fn term_token_seq(t: &Term) -> Vec<Token> {
    let mut out = Vec::new();
    term_tokens(t, false, &mut out);
    out
}

/// Canonical token sequence of a formula (bounded quantifiers expanded).
pub fn formula_token_seq(f: &Formula) -> Vec<Token> {
    let mut out = Vec::new();
    formula_tokens(f, true, &mut out);
    out
}

pub fn token_seq(e: &Expr) -> Vec<Token> {
    match e {
        Expr::Term(t) => term_token_seq(t),
        Expr::Formula(f) => formula_token_seq(f),
    }
}

fn join(tokens: &[Token]) -> String {
    let mut s = String::new();
    for (i, t) in tokens.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&t.text());
    }
    s
}

pub fn render_term(t: &Term) -> String {
    join(&term_token_seq(t))
}

pub fn render_formula(f: &Formula) -> String {
    join(&formula_token_seq(f))
}

pub fn render(e: &Expr) -> String {
    join(&token_seq(e))
}

fn term_len(t: &Term, operand: bool) -> u64 {
    match t {
        Term::Zero | Term::Var(_) => 1,
        Term::Succ(a) => {
            // numerals are common and can be long; avoid deep recursion
            let (n, core) = t.peel_succ();
            if n > 1 {
                n + term_len(core, true)
            } else {
                1 + term_len(a, true)
            }
        }
        Term::Add(l, r) | Term::Mul(l, r) => term_len(l, true) + 1 + term_len(r, true) + if operand { 2 } else { 0 },
    }
}

fn formula_len(f: &Formula, top: bool) -> u64 {
    let wrap = if top { 0 } else { 2 };
    wrap + match f {
        Formula::Eq(l, r) | Formula::Le(l, r) => term_len(l, false) + 1 + term_len(r, false),
        Formula::Not(a) => 1 + formula_len(a, false),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            formula_len(a, false) + 1 + formula_len(b, false)
        }
        Formula::Forall(_, body) | Formula::Exists(_, body) => 4 + formula_len(body, false),
        // ( A v ) ( ( s v <= bound ) -> ( body ) )
        Formula::BoundedForall(_, bound, body) | Formula::BoundedExists(_, bound, body) => {
            4 + 2 + (2 + 3 + term_len(bound, false)) + 1 + formula_len(body, false)
        }
    }
}

/// Number of symbols in the canonical rendering of a term.
pub fn term_length(t: &Term) -> u64 {
    term_len(t, false)
}

/// Number of symbols in the canonical rendering of a formula.
pub fn formula_length(f: &Formula) -> u64 {
    formula_len(f, true)
}

pub fn length(e: &Expr) -> u64 {
    match e {
        Expr::Term(t) => term_length(t),
        Expr::Formula(f) => formula_length(f),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// `10 * (k * k)` as a term built from numerals.
pub fn t_term(k: u64) -> Term {
    Term::mul(Term::numeral(10), Term::mul(Term::numeral(k), Term::numeral(k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_terms() {
        assert_eq!(render_term(&Term::numeral(1)), "s 0");
        assert_eq!(render_term(&t_term(2)), "s s s s s s s s s s 0 * ( s s 0 * s s 0 )");
        assert_eq!(render_term(&Term::succ(Term::add(Term::Zero, Term::var(3)))), "s ( 0 + v3 )");
    }

    #[test]
    fn renders_formulas() {
        assert_eq!(render_formula(&Formula::eq(Term::var(0), Term::Zero)), "v0 = 0");
        let f = Formula::forall(
            Var(0),
            Formula::iff(Formula::eq(Term::var(0), Term::Zero), Formula::eq(Term::var(0), Term::Zero)),
        );
        assert_eq!(render_formula(&f), "( A v0 ) ( ( v0 = 0 ) <-> ( v0 = 0 ) )");
        let n = Formula::not(Formula::eq(Term::Zero, Term::numeral(1)));
        assert_eq!(render_formula(&n), "~ ( 0 = s 0 )");
    }

    #[test]
    fn bounded_renders_expanded() {
        let f = Formula::bforall(Var(2), Term::var(0), Formula::eq(Term::var(2), Term::var(1)));
        assert_eq!(render_formula(&f), "( A v2 ) ( ( s v2 <= v0 ) -> ( v2 = v1 ) )");
        assert_eq!(formula_length(&f), formula_token_seq(&f).len() as u64);
    }

    #[test]
    fn lengths() {
        assert_eq!(term_length(&Term::numeral(10)), 11);
        assert_eq!(term_length(&t_term(4)), 25);
        assert_eq!(term_length(&Term::var(0)), 1);
        assert_eq!(formula_length(&Formula::eq(Term::Zero, Term::Zero)), 3);
        for k in 0..50 {
            assert_eq!(term_length(&t_term(k)), 17 + 2 * k);
        }
    }
}
