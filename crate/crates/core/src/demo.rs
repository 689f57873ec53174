//! Desk-scale walkthroughs of the five limitative theorems that follow from
//! the Berry construction. Each report lists its claims in order; a claim is
//! either `Checked`, with evidence that [`replay`] re-validates, or
//! `Asserted`, for meta-level steps that cannot be executed (they concern
//! the real φ and the astronomically large `t`).
//!
//! The executable analogue uses the Berry table for a small length bound `L`:
//! `φ_L(v0)` is the disjunction of `v0 = m` over the numbers `m` named by a
//! formula shorter than `L`, and `ψ_L(v0) = ~φ_L(v0) & (A v2 < v0) φ_L(v2)`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::berry::{
    berry_number, certify_bounds, enumerate_formulas, refute_witnesses, verify_report, Backend, BerryError, PhiProvider,
};
use crate::coding::encode_formula;
use crate::meta::{b_rel, prc, provable};
use crate::proof::{check_proves, prove_sigma, Budget, Derivation, ProofError, Theory};
use crate::semantics::{eval_delta0_sentence, TruthVerdict};
use crate::syntax::{is_sigma, parse_formula, render_formula, Formula, Term, Var};

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("unknown demo {0}; choose 1 to 5")]
    UnknownDemo(u8),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Berry(#[from] BerryError),
    #[error(transparent)]
    Proof(#[from] ProofError),
    #[error("malformed report: {0}")]
    Malformed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemoParams {
    /// Length bound `L` for the Berry table.
    pub max_len: u64,
    /// Evaluation and witness budget.
    pub budget: u64,
    pub cap: u64,
    /// Mock φ used for the length-bound certificate.
    pub mock_len: u64,
    pub mock_occ: u64,
    /// Witness refutations run for `j = 0..=witnesses`.
    pub witnesses: u64,
    /// Sentences shorter than this are enumerated for the toy-theory checks.
    pub toy_len: u64,
}

impl Default for DemoParams {
    fn default() -> Self {
        DemoParams {
            max_len: 6,
            budget: 32,
            cap: crate::berry::DEFAULT_CAP,
            mock_len: 50,
            mock_occ: 2,
            witnesses: 10,
            toy_len: 7,
        }
    }
}

/// Which theory a derivation or relation check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoryId {
    Q,
    /// Q plus every true Δ0 sentence: complete and decidable on Δ0 sentences.
    Delta0Truth,
}

impl TheoryId {
    pub fn theory(self) -> Theory {
        match self {
            TheoryId::Q => Theory::q(),
            TheoryId::Delta0Truth => Theory::delta0_truth().with_q(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// A derivation of `goal`, as proof-file lines.
    Derivation { theory: TheoryId, goal: String, proof: String },
    /// A Δ0 sentence and its truth value.
    Evaluation { sentence: String, value: bool },
    /// A Berry-number computation and its result.
    Berry { max_len: u64, backend: Backend, budget: u64, cap: u64, n: u64 },
    /// The length-bound certificate for a mock φ holds.
    Bounds { mock_len: u64, mock_occ: u64 },
    /// Whether `B(i, j)` holds in the given theory, decided without `Unknown`.
    BerryRelation { theory: TheoryId, i: u64, j: u64, value: bool },
    /// For every sentence shorter than `max_len`, provability in the toy
    /// theory coincides with truth.
    TruthCoincidence { max_len: u64, sentences: usize },
    /// For every sentence shorter than `max_len`, refutability in the toy
    /// theory is the complement of provability.
    PrcComplement { max_len: u64, sentences: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Checked {
        evidence: Vec<Evidence>,
    },
    /// Not executable; `basis` says why it holds.
    Asserted {
        basis: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub statement: String,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemoReport {
    pub v: u32,
    pub id: u8,
    pub title: String,
    pub params: DemoParams,
    pub claims: Vec<Claim>,
    pub summary: String,
}

impl DemoReport {
    pub fn checked(&self) -> usize {
        self.claims.iter().filter(|c| matches!(c.status, Status::Checked { .. })).count()
    }

    pub fn asserted(&self) -> usize {
        self.claims.len() - self.checked()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<DemoReport, DemoError> {
        serde_json::from_str(text).map_err(|e| DemoError::Malformed(e.to_string()))
    }
}

pub const TITLES: [&str; 5] = [
    "semantic incompleteness: a sound theory is incomplete",
    "undefinability of arithmetical truth",
    "syntactic incompleteness for consistent and omega-consistent theories",
    "undecidability of consistent extensions of Q",
    "Rosser incompleteness: consistent recursively axiomatized extensions of Q are incomplete",
];

fn checked(statement: impl Into<String>, evidence: Vec<Evidence>) -> Claim {
    Claim { statement: statement.into(), status: Status::Checked { evidence } }
}

fn asserted(statement: impl Into<String>, basis: impl Into<String>) -> Claim {
    Claim { statement: statement.into(), status: Status::Asserted { basis: basis.into() } }
}

fn derivation(theory: TheoryId, goal: &Formula, d: &Derivation) -> Evidence {
    Evidence::Derivation { theory, goal: render_formula(goal), proof: d.to_jsonl() }
}

fn evaluation(f: &Formula) -> Result<Evidence, DemoError> {
    let value = eval_delta0_sentence(f).map_err(|e| DemoError::Infeasible(e.to_string()))?;
    Ok(Evidence::Evaluation { sentence: render_formula(f), value })
}

const V0: Var = Var(0);
const V2: Var = Var(2);
const V3: Var = Var(3);

/// The desk-scale stand-ins derived from one Berry table.
struct Analogue {
    n: u64,
    named: Vec<u64>,
}

impl Analogue {
    fn phi(&self, x: Term) -> Formula {
        if self.named.is_empty() {
            return Formula::not(Formula::eq(x.clone(), x));
        }
        Formula::disjunction(self.named.iter().map(|&m| Formula::eq(x.clone(), Term::numeral(m))).collect())
    }

    fn psi(&self, x: Term) -> Formula {
        Formula::and(Formula::not(self.phi(x.clone())), Formula::bforall(V2, x, self.phi(Term::Var(V2))))
    }
}

fn semantic_berry(p: &DemoParams) -> Result<(Analogue, Evidence), DemoError> {
    let r = berry_number(p.max_len, Backend::Semantic, p.budget, p.cap)?;
    let named = r.table.keys().copied().collect();
    let ev = Evidence::Berry { max_len: p.max_len, backend: Backend::Semantic, budget: p.budget, cap: p.cap, n: r.n };
    Ok((Analogue { n: r.n, named }, ev))
}

fn sentences(max_len: u64, cap: u64) -> Result<Vec<Formula>, DemoError> {
    Ok(enumerate_formulas(max_len, cap).map_err(BerryError::from)?.into_iter().filter(Formula::is_sentence).collect())
}

fn check_params(p: &DemoParams) -> Result<(), DemoError> {
    if p.max_len > p.cap || p.toy_len > p.cap {
        return Err(DemoError::Infeasible(format!(
            "length bounds {} and {} must not exceed the cap {}; full enumeration beyond it is refused, lower --max-len",
            p.max_len, p.toy_len, p.cap
        )));
    }
    if p.witnesses > 1000 {
        return Err(DemoError::Infeasible("at most 1000 witness refutations; lower the count".into()));
    }
    Ok(())
}

/// Builds the report for theorem `id` (1 to 5).
pub fn demo(id: u8, p: &DemoParams) -> Result<DemoReport, DemoError> {
    check_params(p)?;
    let (an, berry_ev) = semantic_berry(p)?;
    let (n, l) = (an.n, p.max_len);
    let n_t = Term::numeral(n);
    let berry_claim = || {
        checked(
            format!(
                "{n} is the least number named by no formula of length < {l} (standard model, values up to {})",
                p.budget
            ),
            vec![berry_ev.clone()],
        )
    };
    let claims = match id {
        1 => {
            let prover = berry_number(l, Backend::Prover, p.budget, p.cap)?;
            vec![
                berry_claim(),
                checked(
                    format!("bounded search finds no Q-proof that a formula of length < {l} names {}", prover.n),
                    vec![Evidence::Berry { max_len: l, backend: Backend::Prover, budget: p.budget, cap: p.cap, n: prover.n }],
                ),
                checked(
                    format!("psi_L({n}) is true and phi_L({n}) is false"),
                    vec![evaluation(&an.psi(n_t.clone()))?, evaluation(&an.phi(n_t.clone()))?],
                ),
                checked(
                    format!("|psi(v0,t)| < t for a mock phi of length {} with {} occurrences of v1", p.mock_len, p.mock_occ),
                    vec![Evidence::Bounds { mock_len: p.mock_len, mock_occ: p.mock_occ }],
                ),
                asserted(
                    "for a sound T and the real phi, Q + T does not prove psi(n,t), and ~psi(n,t) is false, so T decides neither",
                    "meta-level: the real n lies beyond any feasible enumeration at length bound t = 10k^2",
                ),
            ]
        }
        2 => {
            let s = sentences(p.toy_len, p.cap)?;
            vec![
                berry_claim(),
                checked(
                    format!("on the {} sentences of length < {}, provability in the true-Δ0 theory coincides with truth", s.len(), p.toy_len),
                    vec![Evidence::TruthCoincidence { max_len: p.toy_len, sentences: s.len() }],
                ),
                asserted(
                    "if the set of codes of true sentences were definable, the theory of all true sentences would satisfy the hypotheses, and its true psi(n,t) would be unprovable in it",
                    "meta-level: a definable truth set cannot be exhibited or refuted by computation",
                ),
            ]
        }
        3 => {
            let below = Formula::bforall(V2, n_t.clone(), an.phi(Term::Var(V2)));
            if !is_sigma(&below) {
                return Err(DemoError::Malformed("bounded analogue is not Σ".into()));
            }
            let d = prove_sigma(&below, p.budget)?;
            let mu = Formula::and(Formula::eq(Term::Var(V3), Term::Var(V0)), an.phi(Term::Var(V3)));
            let t = Term::numeral(l);
            let refs = refute_witnesses(&mu, n, &t, p.witnesses)?;
            let mut ev = Vec::with_capacity(refs.len());
            for (j, r) in refs.iter().enumerate() {
                let inst = mu.substitute(V0, &n_t).substitute(Var(1), &t).substitute(V3, &Term::numeral(j as u64));
                ev.push(derivation(TheoryId::Q, &Formula::not(inst), r));
            }
            vec![
                berry_claim(),
                checked(
                    format!("(A v2 < {n}) phi_L(v2) is a true Σ sentence and Q proves it"),
                    vec![derivation(TheoryId::Q, &below, &d)],
                ),
                checked(
                    format!(
                        "with phi_L = (E v3) mu and mu = {}, Q refutes mu({n}, t, j) for j = 0..={}",
                        render_formula(&mu),
                        p.witnesses
                    ),
                    ev,
                ),
                asserted(
                    "(i) a consistent recursively axiomatized extension of Q does not prove ~phi(n,t); (ii) if it is omega-consistent it does not prove phi(n,t)",
                    "meta-level: follows from the unprovability of psi(n,t) for the real phi",
                ),
            ]
        }
        4 => {
            let toy = TheoryId::Delta0Truth;
            let th = toy.theory();
            let budget = Budget::with_witness(p.budget);
            let mut ev = Vec::new();
            for i in 0..=n {
                let v = b_rel(i, l, &th, budget, p.cap).map_err(|e| DemoError::Infeasible(e.to_string()))?;
                let value = match v.holds {
                    TruthVerdict::True => true,
                    TruthVerdict::False => false,
                    TruthVerdict::Unknown { .. } => {
                        return Err(DemoError::Infeasible(format!("B({i}, {l}) undecided; raise the budget")))
                    }
                };
                ev.push(Evidence::BerryRelation { theory: toy, i, j: l, value });
            }
            let neg_phi = Formula::not(an.phi(n_t.clone()));
            let d = prove_sigma(&neg_phi, p.budget)?;
            vec![
                berry_claim(),
                checked(
                    format!("with a decidable toy theory, B(i, {l}) is decided for every i <= {n}"),
                    ev,
                ),
                checked(
                    format!("~phi_L({n}) is a true Σ sentence and Q proves it"),
                    vec![derivation(TheoryId::Q, &neg_phi, &d)],
                ),
                asserted(
                    "if a consistent extension of Q were decidable, phi could be taken Δ and ~phi(n,t) would be both provable and unprovable",
                    "meta-level: combines the preceding incompleteness result with Σ-completeness for the real phi",
                ),
            ]
        }
        5 => {
            let s = sentences(p.toy_len, p.cap)?;
            vec![
                berry_claim(),
                checked(
                    format!("on the {} sentences of length < {}, Prc in the true-Δ0 theory is the complement of provability", s.len(), p.toy_len),
                    vec![Evidence::PrcComplement { max_len: p.toy_len, sentences: s.len() }],
                ),
                asserted(
                    "a complete consistent recursively axiomatized extension of Q would make provability and its complement both Σ, hence recursive, contradicting undecidability",
                    "meta-level: closure properties of recursive relations",
                ),
            ]
        }
        other => return Err(DemoError::UnknownDemo(other)),
    };
    let checked_n = claims.iter().filter(|c| matches!(c.status, Status::Checked { .. })).count();
    Ok(DemoReport {
        v: 1,
        id,
        title: TITLES[usize::from(id) - 1].to_string(),
        params: *p,
        summary: format!("{checked_n} checked, {} asserted; n_{l} = {n}", claims.len() - checked_n),
        claims,
    })
}

fn replay_evidence(e: &Evidence) -> Result<(), String> {
    let budget_of = |b: u64| Budget::with_witness(b);
    match e {
        Evidence::Derivation { theory, goal, proof } => {
            let goal = parse_formula(goal).map_err(|e| e.to_string())?;
            let d = Derivation::from_jsonl(proof).map_err(|e| e.to_string())?;
            check_proves(&d, &theory.theory(), &goal).map_err(|e| e.to_string())
        }
        Evidence::Evaluation { sentence, value } => {
            let f = parse_formula(sentence).map_err(|e| e.to_string())?;
            let got = eval_delta0_sentence(&f).map_err(|e| e.to_string())?;
            (got == *value).then_some(()).ok_or_else(|| format!("{sentence} evaluates to {got}"))
        }
        Evidence::Berry { max_len, backend, budget, cap, n } => {
            let r = berry_number(*max_len, *backend, *budget, *cap).map_err(|e| e.to_string())?;
            if r.n != *n {
                return Err(format!("berry number is {}, report says {n}", r.n));
            }
            verify_report(&r, *cap)
        }
        Evidence::Bounds { mock_len, mock_occ } => {
            let c = certify_bounds(&PhiProvider::Mock { length: *mock_len, occurrences: *mock_occ })
                .map_err(|e| e.to_string())?;
            c.holds().then_some(()).ok_or_else(|| "bound certificate fails".to_string())
        }
        Evidence::BerryRelation { theory, i, j, value } => {
            let v = b_rel(*i, *j, &theory.theory(), budget_of(64), *j).map_err(|e| e.to_string())?;
            let expected = if *value { TruthVerdict::True } else { TruthVerdict::False };
            (v.holds == expected).then_some(()).ok_or_else(|| format!("B({i}, {j}) is {:?}", v.holds))
        }
        Evidence::TruthCoincidence { max_len, sentences: count } => {
            let th = TheoryId::Delta0Truth.theory();
            let ss = sentences(*max_len, *max_len).map_err(|e| e.to_string())?;
            if ss.len() != *count {
                return Err(format!("{} sentences, report says {count}", ss.len()));
            }
            for f in &ss {
                let truth = eval_delta0_sentence(f).map_err(|e| e.to_string())?;
                let pv = provable(&encode_formula(f), &th, budget_of(8));
                let expected = if truth { TruthVerdict::True } else { TruthVerdict::False };
                if pv.holds != expected {
                    return Err(format!("{}: true = {truth}, provable = {:?}", render_formula(f), pv.holds));
                }
            }
            Ok(())
        }
        Evidence::PrcComplement { max_len, sentences: count } => {
            let th = TheoryId::Delta0Truth.theory();
            let ss = sentences(*max_len, *max_len).map_err(|e| e.to_string())?;
            if ss.len() != *count {
                return Err(format!("{} sentences, report says {count}", ss.len()));
            }
            for f in &ss {
                let code = encode_formula(f);
                let (pv, pc) = (provable(&code, &th, budget_of(8)), prc(&code, &th, budget_of(8)));
                let definite = |v: &TruthVerdict| !matches!(v, TruthVerdict::Unknown { .. });
                if !definite(&pv.holds) || !definite(&pc.holds) || pv.holds() == pc.holds() {
                    return Err(format!("{}: provable {:?}, prc {:?}", render_formula(f), pv.holds, pc.holds));
                }
            }
            Ok(())
        }
    }
}

/// Outcome of replaying a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplaySummary {
    pub checked: usize,
    pub evidence: usize,
    pub asserted: usize,
    /// `(claim index, reason)` for every claim whose evidence failed.
    pub failures: Vec<(usize, String)>,
}

impl ReplaySummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-validates the evidence of every `Checked` claim.
pub fn replay(report: &DemoReport) -> ReplaySummary {
    let mut s = ReplaySummary { checked: 0, evidence: 0, asserted: 0, failures: Vec::new() };
    for (i, c) in report.claims.iter().enumerate() {
        match &c.status {
            Status::Asserted { .. } => s.asserted += 1,
            Status::Checked { evidence } => {
                s.checked += 1;
                if evidence.is_empty() {
                    s.failures.push((i, "checked claim without evidence".into()));
                }
                for e in evidence {
                    s.evidence += 1;
                    if let Err(reason) = replay_evidence(e) {
                        s.failures.push((i, reason));
                    }
                }
            }
        }
    }
    s
}
