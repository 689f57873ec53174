//! Deciding Δ0 sentences and proving true Σ sentences in Q.

use super::builder::ProofBuilder;
use super::check::check_proves;
use super::derivation::Derivation;
use super::theory::Theory;
use super::ProofError;
use crate::semantics::{eval_budgeted, eval_delta0_sentence, EvalError, TruthVerdict};
use crate::syntax::{
    bounded_view, expand_bounded, is_delta0, is_sigma, render_formula, BoundedView, Formula, Quantifier, Term,
};

fn internal(msg: impl Into<String>) -> ProofError {
    ProofError::Internal(msg.into())
}

fn eval_err(e: EvalError) -> ProofError {
    ProofError::Unsupported(e.to_string())
}

fn instance(bv: &BoundedView<'_>, k: u64) -> Formula {
    bv.body.substitute(bv.var, &Term::numeral(k))
}

fn guard(bv: &BoundedView<'_>) -> Formula {
    let x = Term::Var(bv.var);
    let lhs = if bv.strict { Term::succ(x) } else { x };
    Formula::le(lhs, bv.bound.clone())
}

impl ProofBuilder {
    /// Decides a closed Δ0 formula without bounded sugar, returning its
    /// truth value and a proof of it or of its negation.
    pub fn decide(&mut self, f: &Formula) -> Result<(bool, usize), ProofError> {
        if let Some(bv) = bounded_view(f) {
            return self.decide_bounded(f, &bv);
        }
        match f {
            Formula::Eq(..) | Formula::Le(..) => self.decide_atom(f),
            Formula::Not(a) => {
                let (v, p) = self.decide(a)?;
                if v {
                    Ok((false, self.chain(&[p], Formula::not(f.clone()))?))
                } else {
                    Ok((true, p))
                }
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                let (va, pa) = self.decide(a)?;
                let (vb, pb) = self.decide(b)?;
                let v = match f {
                    Formula::And(..) => va && vb,
                    Formula::Or(..) => va || vb,
                    Formula::Imp(..) => !va || vb,
                    _ => va == vb,
                };
                let goal = if v { f.clone() } else { Formula::not(f.clone()) };
                Ok((v, self.chain(&[pa, pb], goal)?))
            }
            Formula::BoundedForall(..) | Formula::BoundedExists(..) => self.decide(&expand_bounded(f)),
            Formula::Forall(..) | Formula::Exists(..) => {
                Err(ProofError::Unsupported(format!("unbounded quantifier in {}", render_formula(f))))
            }
        }
    }

    fn decide_bounded(&mut self, f: &Formula, bv: &BoundedView<'_>) -> Result<(bool, usize), ProofError> {
        if matches!(f, Formula::BoundedForall(..) | Formula::BoundedExists(..)) {
            return self.decide(&expand_bounded(f));
        }
        let (ks, cases) = self.bound_cases(bv.var, bv.bound, bv.strict)?;
        let x = Term::Var(bv.var);
        let mut truths = Vec::with_capacity(ks.len());
        for &k in &ks {
            truths.push(eval_delta0_sentence(&instance(bv, k)).map_err(eval_err)?);
        }
        match bv.quantifier {
            Quantifier::Forall => match truths.iter().position(|t| !t) {
                None => {
                    let mut premises = vec![cases];
                    for &k in &ks {
                        let (v, pk) = self.decide(&instance(bv, k))?;
                        debug_assert!(v);
                        premises.push(self.from_instance(&x, &Term::numeral(k), bv.body, pk)?);
                    }
                    let body = self.chain(&premises, Formula::imp(guard(bv), bv.body.clone()))?;
                    Ok((true, self.gen(body, bv.var)?))
                }
                Some(pos) => {
                    let k = Term::numeral(ks[pos]);
                    let (_, pm) = self.decide(&instance(bv, ks[pos]))?;
                    let (gv, pg) = self.decide_atom(&guard(bv).substitute(bv.var, &k))?;
                    if !gv {
                        return Err(internal("guard instance is false"));
                    }
                    let ae = self.all_elim(f, &k)?;
                    Ok((false, self.chain(&[ae, pg, pm], Formula::not(f.clone()))?))
                }
            },
            Quantifier::Exists => match truths.iter().position(|t| *t) {
                Some(pos) => {
                    let k = Term::numeral(ks[pos]);
                    let (gv, pg) = self.decide_atom(&guard(bv).substitute(bv.var, &k))?;
                    let (mv, pm) = self.decide(&instance(bv, ks[pos]))?;
                    if !(gv && mv) {
                        return Err(internal("witness instance is false"));
                    }
                    let inner = Formula::and(guard(bv), bv.body.clone());
                    let conj = self.chain(&[pg, pm], inner.substitute(bv.var, &k))?;
                    Ok((true, self.ex_intro(bv.var, &inner, &k, conj)?))
                }
                None => {
                    let neg_body = Formula::not(bv.body.clone());
                    let mut premises = vec![cases];
                    for &k in &ks {
                        let (_, pk) = self.decide(&instance(bv, k))?;
                        premises.push(self.from_instance(&x, &Term::numeral(k), &neg_body, pk)?);
                    }
                    let inner = Formula::and(guard(bv), bv.body.clone());
                    let neg = self.chain(&premises, Formula::not(inner.clone()))?;
                    let g = self.gen(neg, bv.var)?;
                    let ed = self.ex_def(bv.var, &inner);
                    Ok((false, self.chain(&[g, ed], Formula::not(f.clone()))?))
                }
            },
        }
    }

    /// Proves a true Σ sentence without bounded sugar, searching
    /// existential witnesses in `0..=budget`.
    pub fn prove_true_sigma(&mut self, f: &Formula, budget: u64) -> Result<usize, ProofError> {
        if is_delta0(f) {
            let (v, p) = self.decide(f)?;
            if !v {
                return Err(ProofError::False(render_formula(f)));
            }
            return Ok(p);
        }
        if let Some(bv) = bounded_view(f) {
            if bv.quantifier == Quantifier::Forall {
                let (ks, cases) = self.bound_cases(bv.var, bv.bound, bv.strict)?;
                let x = Term::Var(bv.var);
                let mut premises = vec![cases];
                for &k in &ks {
                    let pk = self.prove_true_sigma(&instance(&bv, k), budget)?;
                    premises.push(self.from_instance(&x, &Term::numeral(k), bv.body, pk)?);
                }
                let body = self.chain(&premises, Formula::imp(guard(&bv), bv.body.clone()))?;
                return self.gen(body, bv.var);
            }
        }
        match f {
            Formula::And(a, b) => {
                let pa = self.prove_true_sigma(a, budget)?;
                let pb = self.prove_true_sigma(b, budget)?;
                self.chain(&[pa, pb], f.clone())
            }
            Formula::Or(a, b) => {
                let left = eval_budgeted(a, budget).map_err(eval_err)?.verdict;
                let p = if left == TruthVerdict::True {
                    self.prove_true_sigma(a, budget)?
                } else {
                    self.prove_true_sigma(b, budget)?
                };
                self.chain(&[p], f.clone())
            }
            Formula::Exists(x, body) => {
                for w in 0..=budget {
                    let t = Term::numeral(w);
                    let inst = body.substitute(*x, &t);
                    if eval_budgeted(&inst, budget).map_err(eval_err)?.verdict == TruthVerdict::True {
                        let p = self.prove_true_sigma(&inst, budget)?;
                        return self.ex_intro(*x, body, &t, p);
                    }
                    if !body.has_free(*x) {
                        break;
                    }
                }
                Err(ProofError::BudgetExhausted { budget })
            }
            _ => Err(ProofError::NotSigma(render_formula(f))),
        }
    }
}

pub(crate) fn finish_checked(
    b: &ProofBuilder,
    i: usize,
    theory: &Theory,
    goal: &Formula,
) -> Result<Derivation, ProofError> {
    let d = b.finish(i)?;
    check_proves(&d, theory, goal).map_err(|e| internal(format!("generated proof rejected: {e}")))?;
    Ok(d)
}

/// A Q-derivation of the true Σ sentence `sigma`. Existential witnesses
/// are searched up to `budget`.
pub fn prove_sigma(sigma: &Formula, budget: u64) -> Result<Derivation, ProofError> {
    if !sigma.is_sentence() {
        return Err(ProofError::NotSentence(render_formula(sigma)));
    }
    if !is_sigma(sigma) {
        return Err(ProofError::NotSigma(render_formula(sigma)));
    }
    if eval_budgeted(sigma, budget).map_err(eval_err)?.verdict == TruthVerdict::False {
        return Err(ProofError::False(render_formula(sigma)));
    }
    let q = Theory::q();
    let mut b = ProofBuilder::new(&q);
    let f = expand_bounded(sigma);
    b.reserve_vars(&f);
    let i = b.prove_true_sigma(&f, budget)?;
    finish_checked(&b, i, &q, sigma)
}

/// Decides a Δ0 sentence in Q: the truth value and a derivation of the
/// sentence or of its negation.
pub fn decide_delta0(f: &Formula) -> Result<(bool, Derivation), ProofError> {
    if !f.is_sentence() {
        return Err(ProofError::NotSentence(render_formula(f)));
    }
    if !is_delta0(f) {
        return Err(ProofError::Unsupported(format!("not Δ0: {}", render_formula(f))));
    }
    let q = Theory::q();
    let mut b = ProofBuilder::new(&q);
    let g = expand_bounded(f);
    b.reserve_vars(&g);
    let (v, i) = b.decide(&g)?;
    let goal = if v { f.clone() } else { Formula::not(f.clone()) };
    Ok((v, finish_checked(&b, i, &q, &goal)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn delta0_decisions() {
        for (text, truth) in [
            ("(A v1 < s s s 0)(v1 * v1 <= s s s s 0)", true),
            ("(A v1 < s s s s 0)(v1 * v1 <= s s s s 0)", false),
            ("(E v1 < s s s 0)(v1 + v1 = s s s s 0)", true),
            ("(E v1 < s s s 0)(v1 + v1 = s s s 0)", false),
            ("(A v1 < 0)(0 = s 0)", true),
            ("(E v1 < 0)(0 = 0)", false),
            ("(A v1 < s s 0)((E v2 < s s 0)(v1 + v2 = s 0))", true),
            ("~ ((s 0 = 0) | (0 <= 0))", false),
            ("(A v1)((v1 <= s 0) -> (v1 * v1 = v1))", true),
        ] {
            let (v, d) = decide_delta0(&p(text)).unwrap();
            assert_eq!(v, truth, "{text}");
            assert!(!d.is_empty());
        }
    }

    #[test]
    fn sigma_proofs() {
        let ok = prove_sigma(&p("(E v1)(v1 * v1 = s s s s 0)"), 8).unwrap();
        check_proves(&ok, &Theory::q(), &p("(E v1)(v1 * v1 = s s s s 0)")).unwrap();
        let nested = p("(A v1 < s s 0)((E v2)(v2 = s v1))");
        prove_sigma(&nested, 4).unwrap();
        assert!(matches!(
            prove_sigma(&p("(E v1)(v1 = s s s s s 0)"), 3),
            Err(ProofError::BudgetExhausted { budget: 3 })
        ));
        assert!(matches!(prove_sigma(&p("s 0 = 0"), 3), Err(ProofError::False(_))));
        assert!(matches!(prove_sigma(&p("(A v1)(v1 = v1)"), 3), Err(ProofError::NotSigma(_))));
        assert!(matches!(prove_sigma(&p("(E v1)(v1 = v2)"), 3), Err(ProofError::NotSentence(_))));
    }
}
