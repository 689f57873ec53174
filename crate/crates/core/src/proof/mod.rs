//! Hilbert-style derivations for Robinson arithmetic and its extensions:
//! the checker, a builder with the deduction theorem, and proof generators.

pub mod arith;
mod builder;
pub mod check;
pub mod derivation;
pub mod lemmas;
pub mod schemas;
pub mod search;
pub mod sigma;
pub mod tactics;
pub mod taut;
pub mod theory;

use thiserror::Error;

pub use arith::MAX_NUMERAL;
pub use builder::ProofBuilder;
pub use check::{check, check_proves, InvalidStep};
pub use derivation::{Derivation, ProofFileError, Rule, Step};
pub use lemmas::{
    least_unique_formula, order_totality_formula, prove_least_unique, prove_ne_numerals, prove_order_totality,
};
pub use search::{names_provable, search_proof, Budget, Found, ProvableNaming, Strategy};
pub use sigma::{decide_delta0, prove_sigma};
pub use taut::is_tautology;
pub use theory::{q_axiom, q_axioms, Oracle, Theory, TheoryError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("sentence is false: {0}")]
    False(String),
    #[error("witness budget {budget} exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("not a Σ formula: {0}")]
    NotSigma(String),
    #[error("not a sentence: {0}")]
    NotSentence(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no strategy applies: {0}")]
    Unsupported(String),
    #[error("internal proof construction error: {0}")]
    Internal(String),
}
