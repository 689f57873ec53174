//! The relations on Gödel numbers, executed at the meta level: `Fm`, `Lh`,
//! `Nm`, the Berry relation `B`, `Snt`, `Neg` and refutability `Prc`.

use num_bigint::BigUint;
use serde_json::{json, Value};
use thiserror::Error;

use crate::berry::{enumerate_formulas, EnumerationError};
use crate::coding::{decode, decode_formula};
use crate::proof::{names_provable, search_proof, Budget, Derivation, Oracle, Theory};
use crate::semantics::{eval_delta0_sentence, NamingVerdict, TruthVerdict};
use crate::syntax::{formula_length, is_delta0, render_formula, Expr, Formula, Var};

/// Supporting evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Formula(Formula),
    Derivation(Derivation),
    /// A number at which the relation was refuted.
    Counterexample(u64),
}

impl Evidence {
    pub fn to_json(&self) -> Value {
        match self {
            Evidence::Formula(f) => json!({ "formula": render_formula(f) }),
            Evidence::Derivation(d) => json!({ "derivation": d.to_jsonl().lines().collect::<Vec<_>>() }),
            Evidence::Counterexample(j) => json!({ "counterexample": j }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVerdict {
    pub holds: TruthVerdict,
    pub evidence: Vec<Evidence>,
}

impl RelationVerdict {
    fn yes(evidence: Vec<Evidence>) -> Self {
        RelationVerdict { holds: TruthVerdict::True, evidence }
    }

    fn no(evidence: Vec<Evidence>) -> Self {
        RelationVerdict { holds: TruthVerdict::False, evidence }
    }

    fn unknown(budget: u64) -> Self {
        RelationVerdict { holds: TruthVerdict::Unknown { budget }, evidence: Vec::new() }
    }

    pub fn holds(&self) -> bool {
        self.holds == TruthVerdict::True
    }

    pub fn to_json(&self) -> Value {
        let holds = match &self.holds {
            TruthVerdict::True => json!(true),
            TruthVerdict::False => json!(false),
            TruthVerdict::Unknown { budget } => json!({ "unknown": { "budget": budget } }),
        };
        json!({ "holds": holds, "evidence": self.evidence.iter().map(Evidence::to_json).collect::<Vec<_>>() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MetaError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

fn formula_of(i: &BigUint) -> Option<Formula> {
    decode_formula(i).ok()
}

/// `i` codes a formula whose only free variable (if any) is `v0`.
pub fn fm(i: &BigUint) -> bool {
    formula_of(i).is_some_and(|f| f.free_vars().iter().all(|v| *v == Var(0)))
}

/// `i` codes a formula of length less than `j`.
pub fn lh(i: &BigUint, j: u64) -> bool {
    formula_of(i).is_some_and(|f| formula_length(&f) < j)
}

/// `i` codes a sentence.
pub fn snt(i: &BigUint) -> bool {
    formula_of(i).is_some_and(|f| f.is_sentence())
}

/// `i` codes a sentence and `j` codes its negation.
pub fn neg(i: &BigUint, j: &BigUint) -> bool {
    match (formula_of(i), decode(j)) {
        (Some(f), Ok(Expr::Formula(g))) => f.is_sentence() && g == Formula::not(f),
        _ => false,
    }
}

fn naming_verdict(mu: &Formula, i: u64, theory: &Theory, budget: Budget) -> RelationVerdict {
    match names_provable(mu, i, theory, budget) {
        Ok(r) => match r.verdict {
            NamingVerdict::Names { .. } => {
                RelationVerdict::yes(r.derivation.map(Evidence::Derivation).into_iter().collect())
            }
            NamingVerdict::RefutedAt { j } => RelationVerdict::no(vec![Evidence::Counterexample(j)]),
            NamingVerdict::Unknown { budget } => RelationVerdict::unknown(budget),
        },
        Err(_) => RelationVerdict::no(Vec::new()),
    }
}

/// `j` codes a formula of `Fm` that names `i` in `theory`: the naming
/// sentence has a derivation found within `budget`.
pub fn nm(i: u64, j: &BigUint, theory: &Theory, budget: Budget) -> RelationVerdict {
    if !fm(j) {
        return RelationVerdict::no(Vec::new());
    }
    let mu = formula_of(j).expect("fm checked the code");
    naming_verdict(&mu, i, theory, budget)
}

/// Some formula of length less than `j` names `i` in `theory`. The search
/// runs over formulas in renaming normal form, which covers every code
/// below `g(j)` up to renaming of variables; `cap` bounds `j`.
pub fn b_rel(i: u64, j: u64, theory: &Theory, budget: Budget, cap: u64) -> Result<RelationVerdict, MetaError> {
    let mut unknown = false;
    for mu in enumerate_formulas(j, cap)? {
        let v = naming_verdict(&mu, i, theory, budget);
        match v.holds {
            TruthVerdict::True => {
                let mut evidence = vec![Evidence::Formula(mu)];
                evidence.extend(v.evidence);
                return Ok(RelationVerdict::yes(evidence));
            }
            TruthVerdict::Unknown { .. } => unknown = true,
            TruthVerdict::False => {}
        }
    }
    Ok(if unknown { RelationVerdict::unknown(budget.witness) } else { RelationVerdict::no(Vec::new()) })
}

/// Whether the sentence coded by `i` is provable in `theory` within
/// `budget`. Only a theory that decides the sentence (the Δ0-truth oracle
/// on a Δ0 sentence) yields a definite `False`.
pub fn provable(i: &BigUint, theory: &Theory, budget: Budget) -> RelationVerdict {
    let Some(f) = formula_of(i).filter(Formula::is_sentence) else {
        return RelationVerdict::no(Vec::new());
    };
    provable_formula(&f, theory, budget)
}

fn decides(theory: &Theory, f: &Formula) -> bool {
    theory.oracles().contains(&Oracle::Delta0Truth) && is_delta0(f)
}

fn provable_formula(f: &Formula, theory: &Theory, budget: Budget) -> RelationVerdict {
    if let Some(found) = search_proof(f, theory, budget) {
        return RelationVerdict::yes(vec![Evidence::Derivation(found.derivation)]);
    }
    if decides(theory, f) && theory.sound && eval_delta0_sentence(f) == Ok(false) {
        return RelationVerdict::no(Vec::new());
    }
    RelationVerdict::unknown(budget.witness)
}

/// `i` is not a sentence, or `theory` proves the negation of the sentence
/// it codes.
pub fn prc(i: &BigUint, theory: &Theory, budget: Budget) -> RelationVerdict {
    match formula_of(i).filter(Formula::is_sentence) {
        None => RelationVerdict::yes(Vec::new()),
        Some(f) => provable_formula(&Formula::not(f), theory, budget),
    }
}
