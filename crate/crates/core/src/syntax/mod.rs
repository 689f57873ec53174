//! The language of arithmetic: abstract syntax, canonical concrete syntax,
//! length, substitution and renaming.

mod ast;
pub mod classify;
pub mod json;
pub mod parse;
pub mod render;
pub mod subst;

pub use ast::{Expr, Formula, Term, Var};
pub use classify::{
    bounded_view, classify, expand_bounded, has_bounded_sugar, is_delta0, is_sigma, BoundedView, Quantifier,
    SyntacticClass,
};
pub use parse::{parse, parse_formula, parse_term, ParseError};
pub use render::{formula_length, length, render, render_formula, render_term, t_term, term_length, token_seq, Token};
pub use subst::{alpha_eq, alpha_normalize, fresh_var, rename_to_first, RenameError};
