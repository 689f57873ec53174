//! Bounded proof search: a fixed portfolio of strategies, each of which
//! emits a derivation that is checked before it is returned.

use serde::{Deserialize, Serialize};

use super::arith::closed_value;
use super::builder::ProofBuilder;
use super::check::{check_proves, check_step};
use super::derivation::{Derivation, Rule, Step};
use super::lemmas::{least_unique_formula, order_totality_formula};
use super::sigma::finish_checked;
use super::theory::Theory;
use super::ProofError;
use crate::coding::naming_sentence;
use crate::semantics::{names_semantic, NamingVerdict, Truth};
use crate::syntax::{
    bounded_view, expand_bounded, is_delta0, is_sigma, render_formula, BoundedView, Formula, Quantifier, Term, Var,
};

const V0: Var = Var(0);

/// Search limits: witnesses are tried in `0..=witness`, and symbolic
/// refutations split on variables at most `depth` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub witness: u64,
    pub depth: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { witness: 64, depth: 6 }
    }
}

impl Budget {
    pub fn with_witness(witness: u64) -> Self {
        Budget { witness, ..Budget::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Axiom,
    SigmaCompleteness,
    Naming,
    OrderTotality,
    LeastUnique,
    Tautological,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found {
    pub derivation: Derivation,
    pub strategy: Strategy,
}

/// Outcome of [`names_provable`]; `derivation` proves the naming sentence
/// whenever the verdict is `Names`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvableNaming {
    pub verdict: NamingVerdict,
    pub derivation: Option<Derivation>,
}

fn internal(msg: impl Into<String>) -> ProofError {
    ProofError::Internal(msg.into())
}

impl ProofBuilder {
    /// Proves or refutes an atom from normal forms, if possible.
    fn atom_fact(&mut self, a: &Formula) -> Result<Option<(bool, usize)>, ProofError> {
        let (l, r) = match a {
            Formula::Eq(l, r) | Formula::Le(l, r) => (l, r),
            _ => return Ok(None),
        };
        let is_eq = matches!(a, Formula::Eq(..));
        let yes = if is_eq { self.prove_eq(l, r)? } else { self.prove_le(l, r)? };
        if let Some(p) = yes {
            return Ok(Some((true, p)));
        }
        let no = if is_eq { self.refute_eq(l, r)? } else { self.refute_le(l, r)? };
        Ok(no.map(|p| (false, p)))
    }

    /// Three-valued evaluation of `f` from the atoms and closed Δ0
    /// subformulas that can be settled; settled facts are pushed to `facts`.
    fn settle(&mut self, f: &Formula, facts: &mut Vec<usize>) -> Result<Truth, ProofError> {
        if f.is_sentence() && is_delta0(f) {
            return match self.decide(f) {
                Ok((v, p)) => {
                    facts.push(p);
                    Ok(Truth::from_bool(v))
                }
                Err(ProofError::Unsupported(_)) => Ok(Truth::Unknown),
                Err(e) => Err(e),
            };
        }
        if let Some(bv) = bounded_view(f) {
            return self.settle_bounded(f, &bv, facts);
        }
        Ok(match f {
            Formula::Eq(..) | Formula::Le(..) => match self.atom_fact(f) {
                Ok(Some((v, p))) => {
                    facts.push(p);
                    Truth::from_bool(v)
                }
                Ok(None) | Err(ProofError::Unsupported(_)) => Truth::Unknown,
                Err(e) => return Err(e),
            },
            Formula::Not(a) => self.settle(a, facts)?.not(),
            Formula::And(a, b) => self.settle(a, facts)?.and(self.settle(b, facts)?),
            Formula::Or(a, b) => self.settle(a, facts)?.or(self.settle(b, facts)?),
            Formula::Imp(a, b) => self.settle(a, facts)?.imp(self.settle(b, facts)?),
            Formula::Iff(a, b) => self.settle(a, facts)?.iff(self.settle(b, facts)?),
            _ => Truth::Unknown,
        })
    }

    /// Bounded quantifiers with a closed bound are settled instance by
    /// instance.
    fn settle_bounded(
        &mut self,
        f: &Formula,
        bv: &BoundedView<'_>,
        facts: &mut Vec<usize>,
    ) -> Result<Truth, ProofError> {
        if !bv.bound.is_closed() || matches!(f, Formula::BoundedForall(..) | Formula::BoundedExists(..)) {
            return Ok(Truth::Unknown);
        }
        let n = match closed_value(bv.bound) {
            Ok(n) => n,
            Err(ProofError::Unsupported(_)) => return Ok(Truth::Unknown),
            Err(e) => return Err(e),
        };
        let ks: Vec<u64> = if bv.strict { (0..n).collect() } else { (0..=n).collect() };
        let x = Term::Var(bv.var);
        let lhs = if bv.strict { Term::succ(x.clone()) } else { x.clone() };
        let guard = Formula::le(lhs, bv.bound.clone());
        let mut settled = Vec::with_capacity(ks.len());
        for &k in &ks {
            let inst = bv.body.substitute(bv.var, &Term::numeral(k));
            let mut fs = Vec::new();
            let t = self.settle(&inst, &mut fs)?;
            let proof = match t {
                Truth::True => Some(self.chain(&fs, inst)?),
                Truth::False => Some(self.chain(&fs, Formula::not(inst))?),
                Truth::Unknown => None,
            };
            settled.push((t, proof));
        }
        let exists = bv.quantifier == Quantifier::Exists;
        let decisive = Truth::from_bool(exists);
        if let Some(pos) = settled.iter().position(|(t, _)| *t == decisive) {
            let k = Term::numeral(ks[pos]);
            let pk = settled[pos].1.expect("settled instance has a proof");
            let (_, pg) = self.decide_atom(&guard.substitute(bv.var, &k))?;
            let p = if exists {
                let inner = Formula::and(guard.clone(), bv.body.clone());
                let conj = self.chain(&[pg, pk], inner.substitute(bv.var, &k))?;
                self.ex_intro(bv.var, &inner, &k, conj)?
            } else {
                let ae = self.all_elim(f, &k)?;
                self.chain(&[ae, pg, pk], Formula::not(f.clone()))?
            };
            facts.push(p);
            return Ok(decisive);
        }
        if settled.iter().any(|(t, _)| *t == Truth::Unknown) {
            return Ok(Truth::Unknown);
        }
        let (_, cases) = self.bound_cases(bv.var, bv.bound, bv.strict)?;
        let body = if exists { Formula::not(bv.body.clone()) } else { bv.body.clone() };
        let mut premises = vec![cases];
        for (&k, (_, pk)) in ks.iter().zip(&settled) {
            let pk = pk.expect("settled instance has a proof");
            premises.push(self.from_instance(&x, &Term::numeral(k), &body, pk)?);
        }
        let p = if exists {
            let inner = Formula::and(guard, bv.body.clone());
            let neg = self.chain(&premises, Formula::not(inner.clone()))?;
            let g = self.gen(neg, bv.var)?;
            let ed = self.ex_def(bv.var, &inner);
            self.chain(&[g, ed], Formula::not(f.clone()))?
        } else {
            let imp = self.chain(&premises, Formula::imp(guard, bv.body.clone()))?;
            self.gen(imp, bv.var)?
        };
        facts.push(p);
        Ok(decisive.not())
    }

    /// Proves `~f` for a formula without bounded sugar whose free variables
    /// range over all numbers, splitting a variable into `0` and `s u` (by
    /// Q3) at most `depth` times.
    pub fn refute_open(&mut self, f: &Formula, depth: u32) -> Result<Option<usize>, ProofError> {
        self.reserve_vars(f);
        let goal = Formula::not(f.clone());
        let mut facts = Vec::new();
        if self.settle(f, &mut facts)? == Truth::False {
            return Ok(Some(self.chain(&facts, goal)?));
        }
        if depth == 0 {
            return Ok(None);
        }
        let Some(&y) = f.free_vars().iter().next() else {
            return Ok(None);
        };
        let ty = Term::Var(y);
        let Some(r0) = self.refute_open(&f.substitute(y, &Term::Zero), depth - 1)? else {
            return Ok(None);
        };
        let u = self.fresh();
        let su = Term::succ(Term::Var(u));
        let Some(r1) = self.refute_open(&f.substitute(y, &su), depth - 1)? else {
            return Ok(None);
        };
        let zero_case = self.from_instance(&ty, &Term::Zero, &goal, r0)?;
        let succ_case = self.from_instance(&ty, &su, &goal, r1)?;
        let nz = self.assume(Formula::not(Formula::eq(ty.clone(), Term::Zero)));
        let q3 = self.q_inst("Q3", std::slice::from_ref(&ty))?;
        let ex = self.mp(nz, q3)?;
        let e = self.ex_elim(ex, u, succ_case)?;
        let nonzero_case = self.discharge(e)?;
        Ok(Some(self.chain(&[zero_case, nonzero_case], goal)?))
    }

    /// `(A v0)(mu <-> v0 = i)` for `mu` without bounded sugar.
    pub fn naming(&mut self, mu: &Formula, i: u64, budget: Budget) -> Result<usize, ProofError> {
        self.reserve_vars(mu);
        let x = Term::Var(V0);
        let n = Term::numeral(i);
        let goal_eq = Formula::eq(x.clone(), n.clone());
        let at = |t: &Term| mu.substitute(V0, t);
        let unsupported = |what: &str| ProofError::Unsupported(format!("{what} for {}", render_formula(mu)));

        let mu_i = at(&n);
        if !is_sigma(&mu_i) {
            return Err(unsupported("mu(i) is not Σ"));
        }
        let p_mu_i = self.prove_true_sigma(&mu_i, budget.witness)?;
        let back = self.from_instance(&x, &n, mu, p_mu_i)?;

        let fwd_goal = |k: Formula| Formula::imp(k, Formula::imp(mu.clone(), goal_eq.clone()));
        let y = self.fresh();
        let cases = self.initial_cases(i + 1, V0, y)?;
        let mut premises = vec![cases];
        for k in 0..i {
            let tk = Term::numeral(k);
            let nk = self.refute_open(&at(&tk), budget.depth)?.ok_or_else(|| unsupported("cannot refute mu(k)"))?;
            let es = self.eq_subst(&x, &tk, mu, &at(&tk))?;
            premises.push(self.chain(&[es, nk], fwd_goal(Formula::eq(x.clone(), tk)))?);
        }
        premises.push(self.taut(fwd_goal(goal_eq.clone()))?);

        let e = self.assume(Formula::exists(y, Formula::eq(x.clone(), Term::succ_n(i + 1, Term::Var(y)))));
        let w = self.fresh();
        let big = Term::succ_n(i + 1, Term::Var(w));
        let h = self.assume(Formula::eq(x.clone(), big.clone()));
        let r = self.refute_open(&at(&big), budget.depth)?.ok_or_else(|| unsupported("cannot refute mu above i"))?;
        if self.level(r) > 0 {
            return Err(internal("refutation depends on a hypothesis"));
        }
        let es = self.eq_subst(&x, &big, mu, &at(&big))?;
        let c = self.chain(&[h, es, r], Formula::imp(mu.clone(), goal_eq.clone()))?;
        let imp = self.discharge(c)?;
        let rr = self.ex_elim(e, w, imp)?;
        premises.push(self.discharge(rr)?);

        let fwd = self.chain(&premises, Formula::imp(mu.clone(), goal_eq.clone()))?;
        let iff = self.chain(&[fwd, back], Formula::iff(mu.clone(), goal_eq))?;
        self.gen(iff, V0)
    }
}

fn one_step(phi: &Formula, theory: &Theory) -> Option<Derivation> {
    let f = expand_bounded(phi);
    let rules =
        [Rule::Theory(None), Rule::Taut, Rule::EqRefl, Rule::AllElim, Rule::AllDist, Rule::ExDef, Rule::EqSubst];
    rules.into_iter().find(|r| check_step(&f, r, &[], theory).is_ok()).map(|rule| {
        let rule = match rule {
            Rule::Theory(_) => Rule::Theory(theory.axiom_name(&f).map(str::to_string)),
            r => r,
        };
        Derivation::new(vec![Step { formula: phi.clone(), rule }])
    })
}

fn naming_shape(f: &Formula) -> Option<(&Formula, u64)> {
    let Formula::Forall(v, body) = f else { return None };
    let Formula::Iff(mu, eq) = &**body else { return None };
    let Formula::Eq(Term::Var(x), n) = &**eq else { return None };
    (*v == V0 && *x == V0).then_some(())?;
    Some((mu, n.as_numeral()?))
}

fn totality_shape(f: &Formula) -> Option<u64> {
    let Formula::Forall(_, body) = f else { return None };
    let Formula::Or(a, _) = &**body else { return None };
    let Formula::Le(_, n) = &**a else { return None };
    let i = n.as_numeral()?;
    (order_totality_formula(i) == *f).then_some(i)
}

fn least_unique_shape(f: &Formula) -> Option<(Formula, u64)> {
    let Formula::Imp(_, rest) = f else { return None };
    let Formula::Forall(_, body) = &**rest else { return None };
    let Formula::Imp(least, eq) = &**body else { return None };
    let Formula::And(not_mu, _) = &**least else { return None };
    let Formula::Not(mu) = &**not_mu else { return None };
    let Formula::Eq(_, n) = &**eq else { return None };
    let i = n.as_numeral()?;
    (least_unique_formula(mu, i) == *f).then(|| ((**mu).clone(), i))
}

fn run(
    theory: &Theory,
    goal: &Formula,
    build: impl FnOnce(&mut ProofBuilder) -> Result<usize, ProofError>,
) -> Option<Derivation> {
    let mut b = ProofBuilder::new(theory);
    b.reserve_vars(goal);
    let i = build(&mut b).ok()?;
    finish_checked(&b, i, theory, goal).ok()
}

/// Searches for a derivation of `phi` in `theory`. Sound: whatever is
/// returned passes the checker. Incomplete: `None` only means no strategy
/// succeeded within `budget`.
pub fn search_proof(phi: &Formula, theory: &Theory, budget: Budget) -> Option<Found> {
    let found = |derivation, strategy| Some(Found { derivation, strategy });
    if let Some(d) = one_step(phi, theory) {
        return found(d, Strategy::Axiom);
    }
    let f = expand_bounded(phi);
    if theory.extends_q() {
        if f.is_sentence() && is_sigma(&f) {
            if let Some(d) = run(theory, phi, |b| b.prove_true_sigma(&f, budget.witness)) {
                return found(d, Strategy::SigmaCompleteness);
            }
        }
        if let Some((mu, i)) = naming_shape(&f) {
            if mu.free_vars().iter().all(|v| *v == V0) {
                if let Some(d) = run(theory, phi, |b| b.naming(mu, i, budget)) {
                    return found(d, Strategy::Naming);
                }
            }
        }
        if let Some(i) = totality_shape(&f) {
            if let Some(d) = run(theory, phi, |b| b.order_totality(i)) {
                return found(d, Strategy::OrderTotality);
            }
        }
        if let Some((mu, i)) = least_unique_shape(&f) {
            if let Some(d) = run(theory, phi, |b| b.least_unique(&mu, i)) {
                return found(d, Strategy::LeastUnique);
            }
        }
    }
    if theory.axioms().len() <= 16 {
        let axioms: Vec<Formula> = theory.axioms().iter().map(|(_, a)| a.clone()).collect();
        let d = run(theory, phi, |b| {
            let premises = axioms.iter().map(|a| b.axiom(a)).collect::<Result<Vec<_>, _>>()?;
            b.chain(&premises, f.clone())
        });
        if let Some(d) = d {
            return found(d, Strategy::Tautological);
        }
    }
    None
}

/// Whether `mu` names `i` in `theory`: `Names` exactly when
/// [`search_proof`] finds a derivation of `(A v0)(mu <-> v0 = i)`. For a
/// sound theory a semantic counterexample yields `RefutedAt`.
pub fn names_provable(mu: &Formula, i: u64, theory: &Theory, budget: Budget) -> Result<ProvableNaming, ProofError> {
    if let Some(v) = mu.free_vars().into_iter().find(|v| *v != V0) {
        return Err(ProofError::Precondition(format!("{} has free variable {v}", render_formula(mu))));
    }
    if theory.sound {
        if let Ok(NamingVerdict::RefutedAt { j }) = names_semantic(mu, i, budget.witness) {
            return Ok(ProvableNaming { verdict: NamingVerdict::RefutedAt { j }, derivation: None });
        }
    }
    let sentence = naming_sentence(mu, i);
    match search_proof(&sentence, theory, budget) {
        Some(found) => {
            check_proves(&found.derivation, theory, &sentence).map_err(|e| internal(e.to_string()))?;
            Ok(ProvableNaming {
                verdict: NamingVerdict::Names { number: i, budget: budget.witness },
                derivation: Some(found.derivation),
            })
        }
        None => Ok(ProvableNaming { verdict: NamingVerdict::Unknown { budget: budget.witness }, derivation: None }),
    }
}
