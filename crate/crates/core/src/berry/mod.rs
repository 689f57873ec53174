//! Desk-scale Berry numbers: enumerate every short formula, tabulate which
//! numbers each one names, and report the least number named by none of
//! them. Also the ψ construction and its length bounds.

mod enumerate;
mod psi;

use std::collections::BTreeMap;
use std::thread;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

pub use enumerate::{counts_by_length, enumerate_formulas, EnumerationError, DEFAULT_CAP};
pub use psi::{
    arithmetic_leg, boolos_sentence, build_psi, certify_bounds, psi_formula, refute_witnesses, BoolosSentence,
    BoundCertificate, BoundCheck, PhiProvider, PsiConstants, NUMERAL_MARKER, PSI_OVERHEAD,
};

use crate::coding::naming_sentence;
use crate::proof::{check_proves, names_provable, Budget, Derivation, ProofError, Theory};
use crate::semantics::{eval_at_v0, EvalError, TruthVerdict};
use crate::syntax::{render_formula, Formula};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BerryError {
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("budget {budget} too small: no formula certified as a namer, {unknown} undecided")]
    UnknownDominated { budget: u64, unknown: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("invalid φ provider: {0}")]
    Provider(String),
    #[error("instance at j = {j} is true, so no refutation exists")]
    Refused { j: u64 },
    #[error(transparent)]
    Proof(#[from] ProofError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    /// Truth in the standard model, checked on `0 ..= budget`.
    Semantic,
    /// Provability in Q of the naming sentence, found by proof search.
    Prover,
}

impl Backend {
    pub fn id(self) -> &'static str {
        match self {
            Backend::Semantic => "semantic",
            Backend::Prover => "prover",
        }
    }
}

/// What a single formula does on `0 ..= budget`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Profile {
    Names(u64),
    Nothing,
    /// Not fully decided: the values where it is true and where it is unknown.
    Open {
        true_at: Vec<u64>,
        unknown_at: Vec<u64>,
    },
}

impl Profile {
    /// Whether the formula might still name `n`.
    fn may_name(&self, n: u64) -> bool {
        match self {
            Profile::Names(m) => *m == n,
            Profile::Nothing => false,
            Profile::Open { true_at, unknown_at } => {
                true_at.iter().all(|&j| j == n) && (true_at.contains(&n) || unknown_at.contains(&n))
            }
        }
    }
}

fn profile(mu: &Formula, budget: u64) -> Result<Profile, EvalError> {
    let mut true_at = Vec::new();
    let mut unknown_at = Vec::new();
    for j in 0..=budget {
        match eval_at_v0(mu, j, budget)?.verdict {
            TruthVerdict::True => {
                true_at.push(j);
                if true_at.len() > 1 {
                    return Ok(Profile::Nothing);
                }
            }
            TruthVerdict::Unknown { .. } => unknown_at.push(j),
            TruthVerdict::False => {}
        }
    }
    Ok(match (true_at.as_slice(), unknown_at.is_empty()) {
        ([m], true) => Profile::Names(*m),
        ([], true) => Profile::Nothing,
        _ => Profile::Open { true_at, unknown_at },
    })
}

/// Profiles of all formulas, computed on worker threads and returned in input order.
fn profiles(formulas: &[Formula], budget: u64) -> Result<Vec<Profile>, EvalError> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = formulas.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = formulas
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|f| profile(f, budget)).collect::<Result<Vec<_>, _>>()))
            .collect();
        let mut out = Vec::with_capacity(formulas.len());
        for h in handles {
            out.extend(h.join().expect("profile worker panicked")?);
        }
        Ok(out)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub number: u64,
    pub witness: Formula,
    /// Derivation of the naming sentence, for the prover backend.
    pub derivation: Option<Derivation>,
}

/// Why no enumerated formula names `number`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exhaustion {
    pub number: u64,
    /// Formulas shown not to name `number`.
    pub refuted: usize,
    /// Formulas the backend could not settle within its budget.
    pub unknown: usize,
    pub unknown_formulas: Vec<Formula>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BerryReport {
    pub max_len: u64,
    pub backend: Backend,
    pub budget: u64,
    pub formula_count: usize,
    /// Number → the formulas certified to name it, in canonical order.
    pub table: BTreeMap<u64, Vec<Formula>>,
    pub n: u64,
    /// One certificate for each `m < n`.
    pub certificates: Vec<Certificate>,
    pub exhaustion: Exhaustion,
}

impl BerryReport {
    pub fn to_json(&self) -> Value {
        let table: serde_json::Map<String, Value> = self
            .table
            .iter()
            .map(|(m, ws)| (m.to_string(), json!(ws.iter().map(render_formula).collect::<Vec<_>>())))
            .collect();
        let certs: Vec<Value> = self
            .certificates
            .iter()
            .map(|c| {
                json!({
                    "number": c.number,
                    "witness": render_formula(&c.witness),
                    "derivation_steps": c.derivation.as_ref().map(Derivation::len),
                })
            })
            .collect();
        json!({
            "v": 1,
            "max_len": self.max_len,
            "backend": self.backend.id(),
            "budget": self.budget,
            "formula_count": self.formula_count,
            "table": table,
            "n": self.n,
            "certificates": certs,
            "exhaustion": {
                "number": self.exhaustion.number,
                "refuted": self.exhaustion.refuted,
                "unknown": self.exhaustion.unknown,
                "unknown_formulas": self.exhaustion.unknown_formulas.iter().map(render_formula).collect::<Vec<_>>(),
            },
        })
    }
}

/// The least number named by no formula of length less than `max_len`
/// under `backend`, with witnesses for every smaller number.
pub fn berry_number(max_len: u64, backend: Backend, budget: u64, cap: u64) -> Result<BerryReport, BerryError> {
    let formulas = enumerate_formulas(max_len, cap)?;
    let profiles = profiles(&formulas, budget)?;
    let q = Theory::q();
    let mut table: BTreeMap<u64, Vec<Formula>> = BTreeMap::new();
    let mut derivations: BTreeMap<u64, Derivation> = BTreeMap::new();
    for (f, p) in formulas.iter().zip(&profiles) {
        let Profile::Names(m) = *p else { continue };
        if backend == Backend::Prover {
            let r = names_provable(f, m, &q, Budget::with_witness(budget))?;
            let Some(d) = r.derivation else { continue };
            derivations.entry(m).or_insert(d);
        }
        table.entry(m).or_default().push(f.clone());
    }
    let undecided = profiles.iter().filter(|p| matches!(p, Profile::Open { .. })).count();
    if table.is_empty() && undecided > 0 {
        return Err(BerryError::UnknownDominated { budget, unknown: undecided });
    }
    let n = (0..).find(|m| !table.contains_key(m)).expect("table is finite");
    let certificates = (0..n)
        .map(|m| Certificate { number: m, witness: table[&m][0].clone(), derivation: derivations.remove(&m) })
        .collect();
    let unknown_formulas: Vec<Formula> = formulas
        .iter()
        .zip(&profiles)
        .filter(|(_, p)| matches!(p, Profile::Open { .. }) && p.may_name(n))
        .map(|(f, _)| f.clone())
        .collect();
    let exhaustion = Exhaustion {
        number: n,
        refuted: formulas.len() - unknown_formulas.len(),
        unknown: unknown_formulas.len(),
        unknown_formulas,
    };
    Ok(BerryReport { max_len, backend, budget, formula_count: formulas.len(), table, n, certificates, exhaustion })
}

/// Re-checks a report: every certificate through the naming backend, and the
/// absence of a namer for `n` by a second exhaustive pass.
pub fn verify_report(report: &BerryReport, cap: u64) -> Result<(), String> {
    let q = Theory::q();
    if report.certificates.len() as u64 != report.n {
        return Err(format!("{} certificates for n = {}", report.certificates.len(), report.n));
    }
    for (m, c) in report.certificates.iter().enumerate() {
        if c.number != m as u64 {
            return Err(format!("certificate {m} is for {}", c.number));
        }
        let p = profile(&c.witness, report.budget).map_err(|e| e.to_string())?;
        if p != Profile::Names(c.number) {
            return Err(format!("{} does not name {}", render_formula(&c.witness), c.number));
        }
        if report.backend == Backend::Prover {
            let d = c.derivation.as_ref().ok_or_else(|| format!("no derivation for {}", c.number))?;
            check_proves(d, &q, &naming_sentence(&c.witness, c.number)).map_err(|e| e.to_string())?;
        }
    }
    let formulas = enumerate_formulas(report.max_len, cap).map_err(|e| e.to_string())?;
    if formulas.len() != report.formula_count {
        return Err(format!("enumeration has {} formulas, report says {}", formulas.len(), report.formula_count));
    }
    let n = report.n;
    for f in &formulas {
        let named = match report.backend {
            Backend::Semantic => profile(f, report.budget).map_err(|e| e.to_string())? == Profile::Names(n),
            Backend::Prover => names_provable(f, n, &q, Budget::with_witness(report.budget))
                .map_err(|e| e.to_string())?
                .verdict
                .is_names(),
        };
        if named {
            return Err(format!("{} names {n}", render_formula(f)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn tiny_lengths() {
        let r = berry_number(2, Backend::Semantic, 8, DEFAULT_CAP).unwrap();
        assert_eq!(r.n, 0);
        assert!(r.certificates.is_empty());
        assert_eq!(r.formula_count, 0);
        let r = berry_number(4, Backend::Semantic, 8, DEFAULT_CAP).unwrap();
        assert_eq!(r.n, 1);
        assert_eq!(render_formula(&r.certificates[0].witness), "0 = v0");
        verify_report(&r, DEFAULT_CAP).unwrap();
    }

    #[test]
    fn profiles_classify() {
        let p = |s: &str| profile(&parse_formula(s).unwrap(), 8).unwrap();
        assert_eq!(p("v0 = s 0"), Profile::Names(1));
        assert_eq!(p("v0 <= s 0"), Profile::Nothing);
        assert_eq!(p("0 = s 0"), Profile::Nothing);
        let open = p("(A v1)(v1 = v1 + v0)");
        assert_eq!(open, Profile::Open { true_at: vec![], unknown_at: vec![0] });
        assert!(open.may_name(0));
        assert!(!open.may_name(1));
    }

    #[test]
    fn prover_backend_small() {
        let r = berry_number(5, Backend::Prover, 16, DEFAULT_CAP).unwrap();
        let s = berry_number(5, Backend::Semantic, 16, DEFAULT_CAP).unwrap();
        assert!(r.n <= s.n);
        assert!(r.certificates.iter().all(|c| c.derivation.is_some()));
        verify_report(&r, DEFAULT_CAP).unwrap();
        assert!(berry_number(99, Backend::Semantic, 8, DEFAULT_CAP).is_err());
    }
}
