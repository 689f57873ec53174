//! Executable metamathematics for first-order arithmetic: syntax and
//! length, prime-power Gödel coding, evaluation in the standard model, a
//! Hilbert-style proof kernel for Robinson arithmetic with proof
//! generators, the naming relations on codes, and Berry-number machinery.

pub mod berry;
pub mod coding;
pub mod demo;
pub mod meta;
pub mod num;
pub mod proof;
pub mod semantics;
pub mod syntax;

pub use num::Natural;

/// Machine value type used by the evaluator; overflow is reported as `Unknown`.
pub type Nat = u128;
/// Arbitrary-precision value type, used for Gödel codes.
pub type BigNat = num_bigint::BigUint;
/// Variable assignment over [`Nat`].
pub type Env = semantics::Env<Nat>;
/// Variable assignment over [`BigNat`].
pub type BigEnv = semantics::Env<BigNat>;

pub use syntax::{Formula, Term, Var};
