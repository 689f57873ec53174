//! Truth in the standard model.
//!
//! Δ0 formulas are decided outright. Unbounded quantifiers are searched up
//! to a budget and only sound verdicts are returned: an existential is
//! `True` once a witness turns up, a universal `False` once a
//! counterexample does, and everything else is `Unknown`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::num::Natural;
use crate::syntax::{bounded_view, Formula, Quantifier, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is unbound")]
    Unbound(Var),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("formula is not Δ0: unbounded quantifier over {0}")]
    NotDelta0(Var),
    #[error("free variables other than v0: {0:?}")]
    FreeVariables(Vec<Var>),
}

/// Variable assignment; later bindings shadow earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env<N> {
    bindings: Vec<(Var, N)>,
}

impl<N: Natural> Env<N> {
    pub fn new() -> Self {
        Env { bindings: Vec::new() }
    }

    pub fn with(v: Var, n: N) -> Self {
        Env { bindings: vec![(v, n)] }
    }

    pub fn push(&mut self, v: Var, n: N) {
        self.bindings.push((v, n));
    }

    pub fn pop(&mut self) {
        self.bindings.pop();
    }

    pub fn get(&self, v: Var) -> Option<&N> {
        self.bindings.iter().rev().find(|(w, _)| *w == v).map(|(_, n)| n)
    }

    fn set_top(&mut self, n: N) {
        self.bindings.last_mut().expect("binding pushed").1 = n;
    }
}

impl<N: Natural> FromIterator<(Var, N)> for Env<N> {
    fn from_iter<I: IntoIterator<Item = (Var, N)>>(iter: I) -> Self {
        Env { bindings: iter.into_iter().collect() }
    }
}

pub fn eval_term<N: Natural>(t: &Term, env: &Env<N>) -> Result<N, EvalError> {
    match t {
        Term::Zero => Ok(N::zero()),
        Term::Var(v) => env.get(*v).cloned().ok_or(EvalError::Unbound(*v)),
        Term::Succ(a) => eval_term(a, env)?.succ().ok_or(EvalError::Overflow),
        Term::Add(l, r) => eval_term(l, env)?.checked_add(&eval_term(r, env)?).ok_or(EvalError::Overflow),
        Term::Mul(l, r) => eval_term(l, env)?.checked_mul(&eval_term(r, env)?).ok_or(EvalError::Overflow),
    }
}

/// Value of a closed term.
pub fn eval_closed<N: Natural>(t: &Term) -> Result<N, EvalError> {
    eval_term(t, &Env::new())
}

/// Runs `f` for each value of a bounded quantifier's range, stopping at the
/// first `Some`.
fn for_range<N: Natural, R>(
    env: &mut Env<N>,
    var: Var,
    bound: &N,
    strict: bool,
    mut f: impl FnMut(&mut Env<N>) -> Result<Option<R>, EvalError>,
) -> Result<Option<R>, EvalError> {
    let mut x = N::zero();
    env.push(var, x.clone());
    let res = loop {
        let in_range = if strict { x < *bound } else { x <= *bound };
        if !in_range {
            break Ok(None);
        }
        env.set_top(x.clone());
        match f(env) {
            Ok(None) => {}
            other => break other,
        }
        x = match x.succ() {
            Some(y) => y,
            None => break Err(EvalError::Overflow),
        };
    };
    env.pop();
    res
}

/// Decides a Δ0 formula under `env`. Bounded quantifiers, whether written
/// with `<` or in expanded form, range over `0 .. bound`.
pub fn eval_delta0<N: Natural>(f: &Formula, env: &mut Env<N>) -> Result<bool, EvalError> {
    if let Some(bv) = bounded_view(f) {
        let b = eval_term(bv.bound, env)?;
        let want = bv.quantifier == Quantifier::Exists;
        let hit = for_range(env, bv.var, &b, bv.strict, |env| Ok((eval_delta0(bv.body, env)? == want).then_some(())))?;
        return Ok(if want { hit.is_some() } else { hit.is_none() });
    }
    Ok(match f {
        Formula::Eq(l, r) => eval_term(l, env)? == eval_term(r, env)?,
        Formula::Le(l, r) => eval_term(l, env)? <= eval_term(r, env)?,
        Formula::Not(a) => !eval_delta0(a, env)?,
        Formula::And(a, b) => eval_delta0(a, env)? && eval_delta0(b, env)?,
        Formula::Or(a, b) => eval_delta0(a, env)? || eval_delta0(b, env)?,
        Formula::Imp(a, b) => !eval_delta0(a, env)? || eval_delta0(b, env)?,
        Formula::Iff(a, b) => eval_delta0(a, env)? == eval_delta0(b, env)?,
        Formula::Forall(v, _) | Formula::Exists(v, _) => return Err(EvalError::NotDelta0(*v)),
        Formula::BoundedForall(..) | Formula::BoundedExists(..) => unreachable!("handled by bounded_view"),
    })
}

/// Decides a Δ0 sentence.
pub fn eval_delta0_sentence(f: &Formula) -> Result<bool, EvalError> {
    eval_delta0::<u64>(f, &mut Env::new())
}

/// Three-valued truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Truth {
    True,
    False,
    Unknown,
}

#[allow(clippy::should_implement_trait)]
impl Truth {
    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        self.not().and(other.not()).not()
    }

    pub fn imp(self, other: Truth) -> Truth {
        self.not().or(other)
    }

    pub fn iff(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::Unknown, _) | (_, Truth::Unknown) => Truth::Unknown,
            (a, b) => Truth::from_bool(a == b),
        }
    }

    pub fn is_known(self) -> bool {
        self != Truth::Unknown
    }
}

/// Result of budgeted evaluation of a sentence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruthVerdict {
    True,
    False,
    Unknown { budget: u64 },
}

impl TruthVerdict {
    pub fn truth(&self) -> Truth {
        match self {
            TruthVerdict::True => Truth::True,
            TruthVerdict::False => Truth::False,
            TruthVerdict::Unknown { .. } => Truth::Unknown,
        }
    }
}

/// Verdict plus, for a top-level unbounded quantifier, the witness or
/// counterexample that settled it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evaluation {
    pub verdict: TruthVerdict,
    pub witness: Option<u64>,
}

fn eval3<N: Natural>(f: &Formula, env: &mut Env<N>, budget: u64, top: &mut Option<u64>) -> Result<Truth, EvalError> {
    if let Some(bv) = bounded_view(f) {
        let b = eval_term(bv.bound, env)?;
        let exists = bv.quantifier == Quantifier::Exists;
        let mut acc = Truth::from_bool(!exists);
        for_range(env, bv.var, &b, bv.strict, |env| {
            let v = eval3(bv.body, env, budget, &mut None)?;
            acc = if exists { acc.or(v) } else { acc.and(v) };
            Ok((acc == Truth::from_bool(exists)).then_some(()))
        })?;
        return Ok(acc);
    }
    Ok(match f {
        Formula::Eq(l, r) => Truth::from_bool(eval_term(l, env)? == eval_term(r, env)?),
        Formula::Le(l, r) => Truth::from_bool(eval_term(l, env)? <= eval_term(r, env)?),
        Formula::Not(a) => eval3(a, env, budget, &mut None)?.not(),
        Formula::And(a, b) => {
            let x = eval3(a, env, budget, &mut None)?;
            if x == Truth::False {
                return Ok(x);
            }
            x.and(eval3(b, env, budget, &mut None)?)
        }
        Formula::Or(a, b) => {
            let x = eval3(a, env, budget, &mut None)?;
            if x == Truth::True {
                return Ok(x);
            }
            x.or(eval3(b, env, budget, &mut None)?)
        }
        Formula::Imp(a, b) => {
            let x = eval3(a, env, budget, &mut None)?;
            if x == Truth::False {
                return Ok(Truth::True);
            }
            x.imp(eval3(b, env, budget, &mut None)?)
        }
        Formula::Iff(a, b) => eval3(a, env, budget, &mut None)?.iff(eval3(b, env, budget, &mut None)?),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            let exists = matches!(f, Formula::Exists(..));
            let decisive = Truth::from_bool(exists);
            if !body.has_free(*v) {
                return eval3(body, env, budget, &mut None);
            }
            let bound = <N as Natural>::from_u64(budget);
            let hit = for_range(env, *v, &bound, false, |env| {
                let x = eval3(body, env, budget, &mut None)?;
                Ok((x == decisive).then(|| env.get(*v).and_then(|n| n.to_u64())))
            })?;
            match hit {
                Some(w) => {
                    *top = w;
                    decisive
                }
                None => Truth::Unknown,
            }
        }
        Formula::BoundedForall(..) | Formula::BoundedExists(..) => unreachable!("handled by bounded_view"),
    })
}

/// Budgeted three-valued truth of `f` under `env`.
pub fn eval_budgeted_in<N: Natural>(f: &Formula, env: &mut Env<N>, budget: u64) -> Result<Evaluation, EvalError> {
    let mut witness = None;
    let t = eval3(f, env, budget, &mut witness)?;
    Ok(Evaluation {
        verdict: match t {
            Truth::True => TruthVerdict::True,
            Truth::False => TruthVerdict::False,
            Truth::Unknown => TruthVerdict::Unknown { budget },
        },
        witness,
    })
}

/// Budgeted truth of a sentence. Arithmetic runs in `u128`; a sentence
/// whose evaluation overflows is reported `Unknown`.
pub fn eval_budgeted(f: &Formula, budget: u64) -> Result<Evaluation, EvalError> {
    eval_at(f, None, budget)
}

/// Budgeted truth of `f(n)`, where `v0` is the only free variable.
pub fn eval_at_v0(f: &Formula, n: u64, budget: u64) -> Result<Evaluation, EvalError> {
    check_only_v0(f)?;
    eval_at(f, Some(n), budget)
}

fn eval_at(f: &Formula, v0: Option<u64>, budget: u64) -> Result<Evaluation, EvalError> {
    let mut env: Env<u128> = Env::new();
    if let Some(n) = v0 {
        env.push(Var(0), u128::from(n));
    }
    match eval_budgeted_in(f, &mut env, budget) {
        Err(EvalError::Overflow) => Ok(Evaluation { verdict: TruthVerdict::Unknown { budget }, witness: None }),
        other => other,
    }
}

/// Outcome of asking whether a formula names a number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamingVerdict {
    /// The formula names `number`; for the semantic backend this is relative
    /// to the values `0 ..= budget`.
    Names {
        number: u64,
        budget: u64,
    },
    /// `μ(j)` disagrees with `v0 = i` at `j`.
    RefutedAt {
        j: u64,
    },
    Unknown {
        budget: u64,
    },
}

impl NamingVerdict {
    pub fn is_names(&self) -> bool {
        matches!(self, NamingVerdict::Names { .. })
    }
}

pub(crate) fn check_only_v0(f: &Formula) -> Result<(), EvalError> {
    let extra: Vec<Var> = f.free_vars().into_iter().filter(|v| *v != Var(0)).collect();
    if extra.is_empty() {
        Ok(())
    } else {
        Err(EvalError::FreeVariables(extra))
    }
}

/// Whether `μ` names `i` in the standard model: `μ(i)` holds and `μ(j)`
/// fails for every other `j <= budget`.
pub fn names_semantic(mu: &Formula, i: u64, budget: u64) -> Result<NamingVerdict, EvalError> {
    check_only_v0(mu)?;
    match eval_at(mu, Some(i), budget)?.verdict {
        TruthVerdict::False => return Ok(NamingVerdict::RefutedAt { j: i }),
        TruthVerdict::Unknown { .. } => return Ok(NamingVerdict::Unknown { budget }),
        TruthVerdict::True => {}
    }
    let mut unknown = false;
    for j in (0..=budget).filter(|&j| j != i) {
        match eval_at(mu, Some(j), budget)?.verdict {
            TruthVerdict::True => return Ok(NamingVerdict::RefutedAt { j }),
            TruthVerdict::Unknown { .. } => unknown = true,
            TruthVerdict::False => {}
        }
    }
    Ok(if unknown { NamingVerdict::Unknown { budget } } else { NamingVerdict::Names { number: i, budget } })
}

/// The unique candidate `μ` could name within `0 ..= budget`: the only `j`
/// with `μ(j)` true, provided every other value is decided false.
pub fn named_number(mu: &Formula, budget: u64) -> Result<Option<u64>, EvalError> {
    check_only_v0(mu)?;
    let mut found = None;
    for j in 0..=budget {
        match eval_at(mu, Some(j), budget)?.verdict {
            TruthVerdict::True if found.is_some() => return Ok(None),
            TruthVerdict::True => found = Some(j),
            TruthVerdict::Unknown { .. } => return Ok(None),
            TruthVerdict::False => {}
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, t_term};
    use num_bigint::BigUint;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn terms() {
        assert_eq!(eval_closed::<u64>(&Term::numeral(7)), Ok(7));
        let t = Term::add(Term::numeral(2), Term::mul(Term::numeral(3), Term::numeral(4)));
        assert_eq!(eval_closed::<u64>(&t), Ok(14));
        assert_eq!(eval_closed::<u64>(&t_term(4)), Ok(160));
        assert_eq!(eval_closed::<BigUint>(&t_term(4)), Ok(BigUint::from(160u32)));
        assert_eq!(eval_closed::<u64>(&Term::var(3)), Err(EvalError::Unbound(Var(3))));
    }

    #[test]
    fn overflow_is_reported() {
        let big = Term::mul(Term::var(0), Term::var(0));
        let env = Env::with(Var(0), u32::MAX);
        assert_eq!(eval_term(&big, &env), Err(EvalError::Overflow));
    }

    #[test]
    fn delta0() {
        assert!(eval_delta0_sentence(&p("(A v2 < s s 0)(v2 <= s 0)")).unwrap());
        assert!(!eval_delta0_sentence(&p("s 0 + s 0 = s s s 0")).unwrap());
        assert!(eval_delta0_sentence(&p("(E v1 < s s s 0)(v1 + v1 = s s 0)")).unwrap());
        assert!(!eval_delta0_sentence(&p("(E v1 < 0)(0 = 0)")).unwrap());
        assert!(matches!(eval_delta0_sentence(&p("(E v1)(v1 = 0)")), Err(EvalError::NotDelta0(_))));
    }

    #[test]
    fn budgeted() {
        let e = eval_budgeted(&p("(E v1)(v1 = s s 0)"), 5).unwrap();
        assert_eq!(e.verdict, TruthVerdict::True);
        assert_eq!(e.witness, Some(2));
        let e = eval_budgeted(&p("(A v1)(v1 = 0)"), 5).unwrap();
        assert_eq!(e.verdict, TruthVerdict::False);
        assert_eq!(e.witness, Some(1));
        let e = eval_budgeted(&p("(A v1)(0 <= v1)"), 5).unwrap();
        assert_eq!(e.verdict, TruthVerdict::Unknown { budget: 5 });
        // vacuous quantifier is decided by its matrix
        assert_eq!(eval_budgeted(&p("(A v1)(0 = 0)"), 0).unwrap().verdict, TruthVerdict::True);
    }

    #[test]
    fn naming() {
        assert_eq!(names_semantic(&p("v0 = s s 0"), 2, 32).unwrap(), NamingVerdict::Names { number: 2, budget: 32 });
        assert!(names_semantic(&p("v0 <= 0"), 0, 32).unwrap().is_names());
        assert_eq!(names_semantic(&p("v0 <= s 0"), 0, 32).unwrap(), NamingVerdict::RefutedAt { j: 1 });
        assert_eq!(names_semantic(&p("v0 = s 0"), 0, 32).unwrap(), NamingVerdict::RefutedAt { j: 0 });
        assert!(names_semantic(&p("v1 = 0"), 0, 4).is_err());
        assert_eq!(named_number(&p("v0 + v0 = s s 0"), 16).unwrap(), Some(1));
        assert_eq!(named_number(&p("v0 = v0"), 16).unwrap(), None);
    }
}
