//! Derived rules on top of [`ProofBuilder`]: propositional chaining,
//! quantifier introduction and elimination, α-conversion and equality
//! reasoning.

use super::builder::ProofBuilder;
use super::theory::q_axiom;
use super::ProofError;
use crate::syntax::{alpha_eq, render_formula, Formula, Term, Var};

fn internal(msg: impl Into<String>) -> ProofError {
    ProofError::Internal(msg.into())
}

/// Replaces every occurrence of `s` in `t` by `r`.
pub fn replace_term(t: &Term, s: &Term, r: &Term) -> Term {
    if t == s {
        return r.clone();
    }
    match t {
        Term::Zero | Term::Var(_) => t.clone(),
        Term::Succ(a) => Term::succ(replace_term(a, s, r)),
        Term::Add(a, b) => Term::add(replace_term(a, s, r), replace_term(b, s, r)),
        Term::Mul(a, b) => Term::mul(replace_term(a, s, r), replace_term(b, s, r)),
    }
}

impl ProofBuilder {
    /// From steps proving `p1, …, pn`, derives `concl` when
    /// `p1 -> (… -> (pn -> concl))` is a tautology.
    pub fn chain(&mut self, premises: &[usize], concl: Formula) -> Result<usize, ProofError> {
        let mut f = concl;
        for &p in premises.iter().rev() {
            f = Formula::imp(self.formula(p).clone(), f);
        }
        let mut cur = self.taut(f)?;
        for &p in premises {
            cur = self.mp(p, cur)?;
        }
        Ok(cur)
    }

    /// From `(A x) p`, derives `p[x := t]`, renaming bound variables of `p`
    /// first when `t` would be captured.
    pub fn inst(&mut self, i: usize, t: &Term) -> Result<usize, ProofError> {
        let f = self.formula(i).clone();
        let Formula::Forall(x, body) = &f else {
            return Err(internal(format!("instantiating non-universal {}", render_formula(&f))));
        };
        if body.substitute_strict(*x, t).is_some() {
            let ae = self.all_elim(&f, t)?;
            return self.mp(i, ae);
        }
        self.reserve_term(t);
        let floor = self.fresh().0;
        let renamed = Formula::forall(*x, body.rename_bound_fresh(floor));
        self.reserve_vars(&renamed);
        let imp = self.alpha_imp(&f, &renamed)?;
        let j = self.mp(i, imp)?;
        let ae = self.all_elim(&renamed, t)?;
        self.mp(j, ae)
    }

    pub fn inst_all(&mut self, i: usize, ts: &[Term]) -> Result<usize, ProofError> {
        ts.iter().try_fold(i, |acc, t| self.inst(acc, t))
    }

    /// An instance of a Q axiom.
    pub fn q_inst(&mut self, name: &str, ts: &[Term]) -> Result<usize, ProofError> {
        let ax = self.axiom(&q_axiom(name))?;
        self.inst_all(ax, ts)
    }

    /// `a -> b` for α-equivalent `a` and `b`.
    pub fn alpha_imp(&mut self, a: &Formula, b: &Formula) -> Result<usize, ProofError> {
        if a == b {
            return self.taut(Formula::imp(a.clone(), b.clone()));
        }
        if !alpha_eq(a, b) {
            return Err(internal(format!("not α-equivalent: {} / {}", render_formula(a), render_formula(b))));
        }
        self.reserve_vars(a);
        self.reserve_vars(b);
        let target = Formula::imp(a.clone(), b.clone());
        match (a, b) {
            (Formula::Not(x), Formula::Not(y)) => {
                let r = self.alpha_imp(y, x)?;
                self.chain(&[r], target)
            }
            (Formula::And(a1, a2), Formula::And(b1, b2))
            | (Formula::Or(a1, a2), Formula::Or(b1, b2))
            | (Formula::Imp(a1, a2), Formula::Imp(b1, b2))
            | (Formula::Iff(a1, a2), Formula::Iff(b1, b2)) => {
                let r1 = self.alpha_imp(a1, b1)?;
                let r2 = self.alpha_imp(b1, a1)?;
                let r3 = self.alpha_imp(a2, b2)?;
                let r4 = self.alpha_imp(b2, a2)?;
                self.chain(&[r1, r2, r3, r4], target)
            }
            (Formula::Forall(x, p), Formula::Forall(y, q)) => {
                let z = self.fresh();
                let pz = p.substitute_strict(*x, &Term::Var(z)).ok_or_else(|| internal("fresh capture"))?;
                let qz = q.substitute_strict(*y, &Term::Var(z)).ok_or_else(|| internal("fresh capture"))?;
                // (A x) p -> (A z) q[y:=z]
                let e1 = self.all_elim(a, &Term::Var(z))?;
                let inner = self.alpha_imp(&pz, &qz)?;
                let c1 = self.chain(&[e1, inner], Formula::imp(a.clone(), qz.clone()))?;
                let g1 = self.gen(c1, z)?;
                let d1 = self.all_dist(z, a, &qz)?;
                let s1 = self.mp(g1, d1)?;
                // (A z) q[y:=z] -> (A y) q
                let az = Formula::forall(z, qz.clone());
                let e2 = self.all_elim(&az, &Term::Var(*y))?;
                if self.formula(e2) != &Formula::imp(az.clone(), (**q).clone()) {
                    return Err(internal("α-conversion back-substitution mismatch"));
                }
                let g2 = self.gen(e2, *y)?;
                let d2 = self.all_dist(*y, &az, q)?;
                let s2 = self.mp(g2, d2)?;
                self.chain(&[s1, s2], target)
            }
            (Formula::Exists(x, p), Formula::Exists(y, q)) => {
                let na = Formula::forall(*x, Formula::not((**p).clone()));
                let nb = Formula::forall(*y, Formula::not((**q).clone()));
                let r = self.alpha_imp(&nb, &na)?;
                let da = self.ex_def(*x, p);
                let db = self.ex_def(*y, q);
                self.chain(&[r, da, db], target)
            }
            _ => Err(internal("α-conversion of bounded sugar")),
        }
    }

    /// From `p[x := t]` (step `i`), derives `(E x) p`.
    pub fn ex_intro(&mut self, x: Var, body: &Formula, t: &Term, i: usize) -> Result<usize, ProofError> {
        let goal = Formula::exists(x, body.clone());
        let neg = Formula::forall(x, Formula::not(body.clone()));
        match body.substitute_strict(x, t) {
            Some(inst) if inst == *self.formula(i) => {
                let ae = self.all_elim(&neg, t)?;
                let ed = self.ex_def(x, body);
                self.chain(&[i, ae, ed], goal)
            }
            Some(_) => Err(internal(format!(
                "ex-intro: step `{}` is not the instance of `{}`",
                render_formula(self.formula(i)),
                render_formula(body)
            ))),
            None => {
                let floor = self.fresh().0;
                let renamed = body.rename_bound_fresh(floor);
                self.reserve_vars(&renamed);
                let inst = renamed.substitute_strict(x, t).ok_or_else(|| internal("capture after renaming"))?;
                let given = self.formula(i).clone();
                let conv = self.alpha_imp(&given, &inst)?;
                let j = self.mp(i, conv)?;
                let e = self.ex_intro(x, &renamed, t, j)?;
                let back = self.alpha_imp(&Formula::exists(x, renamed), &goal)?;
                self.mp(e, back)
            }
        }
    }

    /// From `(E x) p` (step `ex`) and `p[x := y] -> c` (step `imp`) with `y`
    /// not free in `c`, derives `c`.
    pub fn ex_elim(&mut self, ex: usize, y: Var, imp: usize) -> Result<usize, ProofError> {
        let Formula::Exists(x, p) = self.formula(ex).clone() else {
            return Err(internal("ex-elim on non-existential"));
        };
        let Formula::Imp(py, c) = self.formula(imp).clone() else {
            return Err(internal("ex-elim: premise is not an implication"));
        };
        if p.substitute_strict(x, &Term::Var(y)).as_ref() != Some(&*py) {
            return Err(internal("ex-elim: antecedent is not the instance"));
        }
        if c.has_free(y) {
            return Err(internal(format!("ex-elim: {y} free in conclusion")));
        }
        let not_c = Formula::not((*c).clone());
        let not_py = Formula::not((*py).clone());
        let contra = self.chain(&[imp], Formula::imp(not_c.clone(), not_py.clone()))?;
        let g = self.gen(contra, y)?;
        let d = self.all_dist(y, &not_c, &not_py)?;
        let m = self.mp(g, d)?;
        let all_y = Formula::forall(y, not_py.clone());
        let all_x = Formula::forall(x, Formula::not((*p).clone()));
        let mut premises = vec![ex, m];
        if y != x {
            // (A y) ~p[x:=y] -> (A x) ~p
            let e = self.all_elim(&all_y, &Term::Var(x))?;
            if self.formula(e) != &Formula::imp(all_y.clone(), Formula::not((*p).clone())) {
                return Err(internal("ex-elim: renaming back failed"));
            }
            let g2 = self.gen(e, x)?;
            let d2 = self.all_dist(x, &all_y, &Formula::not((*p).clone()))?;
            premises.push(self.mp(g2, d2)?);
        } else {
            debug_assert_eq!(all_y, all_x);
        }
        premises.push(self.ex_def(x, &p));
        self.chain(&premises, (*c).clone())
    }

    /// Proves `c` from `a | b`, `a -> c` and `b -> c`.
    pub fn cases(&mut self, disj: usize, left: usize, right: usize) -> Result<usize, ProofError> {
        let Formula::Imp(_, c) = self.formula(left).clone() else {
            return Err(internal("cases: branch is not an implication"));
        };
        self.chain(&[disj, left, right], (*c).clone())
    }

    /// `a = b -> b = a` as a theorem.
    pub fn sym_imp(&mut self, a: &Term, b: &Term) -> Result<usize, ProofError> {
        let key = format!("sym:{}|{}", crate::syntax::render_term(a), crate::syntax::render_term(b));
        let (a, b) = (a.clone(), b.clone());
        self.lemma(&key, move |pb| {
            let es = pb.eq_subst(&a, &b, &Formula::eq(a.clone(), a.clone()), &Formula::eq(b.clone(), a.clone()))?;
            let r = pb.eq_refl(&a);
            pb.chain(&[es, r], Formula::imp(Formula::eq(a.clone(), b.clone()), Formula::eq(b.clone(), a.clone())))
        })
    }

    /// From `a = b`, `b = a`.
    pub fn eq_symm(&mut self, i: usize) -> Result<usize, ProofError> {
        let Formula::Eq(a, b) = self.formula(i).clone() else {
            return Err(internal("eq_symm on non-equation"));
        };
        if a == b {
            return Ok(i);
        }
        let s = self.sym_imp(&a, &b)?;
        self.mp(i, s)
    }

    /// From `a = b` and `b = c`, `a = c`.
    pub fn eq_trans(&mut self, i: usize, j: usize) -> Result<usize, ProofError> {
        let (Formula::Eq(a, b), Formula::Eq(b2, c)) = (self.formula(i).clone(), self.formula(j).clone()) else {
            return Err(internal("eq_trans on non-equations"));
        };
        if b != b2 {
            return Err(internal("eq_trans: middle terms differ"));
        }
        if a == b {
            return Ok(j);
        }
        if b == c {
            return Ok(i);
        }
        let es = self.eq_subst(&b, &c, &Formula::eq(a.clone(), b.clone()), &Formula::eq(a.clone(), c.clone()))?;
        let m = self.mp(j, es)?;
        self.mp(i, m)
    }

    /// From `p` (step `i`) and `s = t` (step `eq`), derives `target`, a
    /// replacement instance of `p`.
    pub fn rewrite(&mut self, i: usize, eq: usize, target: Formula) -> Result<usize, ProofError> {
        let Formula::Eq(s, t) = self.formula(eq).clone() else {
            return Err(internal("rewrite with non-equation"));
        };
        if *self.formula(i) == target {
            return Ok(i);
        }
        let p = self.formula(i).clone();
        let es = self.eq_subst(&s, &t, &p, &target)?;
        let m = self.mp(eq, es)?;
        self.mp(i, m)
    }

    /// `a = b` from proofs of `a = c` and `b = c`.
    pub fn eq_join(&mut self, ac: usize, bc: usize) -> Result<usize, ProofError> {
        let cb = self.eq_symm(bc)?;
        self.eq_trans(ac, cb)
    }

    /// `(x = t) -> p(x)` from a proof of `p(t)`, where `p(x)` has `x` at the
    /// positions where `p(t)` has `t`.
    pub fn from_instance(&mut self, x: &Term, t: &Term, p_x: &Formula, p_t: usize) -> Result<usize, ProofError> {
        let pt = self.formula(p_t).clone();
        let es = self.eq_subst(t, x, &pt, p_x)?;
        let sym = self.sym_imp(x, t)?;
        self.chain(&[sym, es, p_t], Formula::imp(Formula::eq(x.clone(), t.clone()), p_x.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check::check_proves;
    use crate::proof::theory::Theory;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn finish_and_check(b: &ProofBuilder, i: usize, goal: &str) {
        let d = b.finish(i).unwrap();
        check_proves(&d, &Theory::q(), &p(goal)).unwrap();
    }

    #[test]
    fn instantiate_with_capture() {
        let q = Theory::q();
        let mut b = ProofBuilder::new(&q);
        // Q3 at v1: the inner binder v1 must be renamed
        let i = b.q_inst("Q3", &[Term::var(1)]).unwrap();
        let f = b.formula(i).clone();
        assert!(alpha_eq(&f, &p("(~ (v1 = 0)) -> ((E v9)(v1 = s v9))")));
        let d = b.finish(i).unwrap();
        crate::proof::check::check(&d, &q).unwrap();
    }

    #[test]
    fn equality_rules() {
        let q = Theory::q();
        let mut b = ProofBuilder::new(&q);
        let h = b.assume(p("v1 = v2"));
        let s = b.eq_symm(h).unwrap();
        let d = b.discharge(s).unwrap();
        finish_and_check(&b, d, "(v1 = v2) -> (v2 = v1)");

        let mut b = ProofBuilder::new(&q);
        let h1 = b.assume(p("v1 = v2"));
        let h2 = b.assume(p("v2 = 0"));
        let t = b.eq_trans(h1, h2).unwrap();
        let d2 = b.discharge(t).unwrap();
        let d1 = b.discharge(d2).unwrap();
        let _ = h2;
        finish_and_check(&b, d1, "(v1 = v2) -> ((v2 = 0) -> (v1 = 0))");
    }

    #[test]
    fn existential_rules() {
        let q = Theory::q();
        let mut b = ProofBuilder::new(&q);
        let r = b.eq_refl(&Term::numeral(2));
        let e = b.ex_intro(Var(1), &p("v1 = s s 0"), &Term::numeral(2), r).unwrap();
        finish_and_check(&b, e, "(E v1)(v1 = s s 0)");

        // (E v1)(v1 = 0) -> (E v2)(v2 = 0) via elimination with a fresh witness
        let mut b = ProofBuilder::new(&q);
        let ex = b.assume(p("(E v1)(v1 = 0)"));
        let y = b.fresh();
        let h = b.assume(Formula::eq(Term::Var(y), Term::Zero));
        let e2 = b.ex_intro(Var(2), &p("v2 = 0"), &Term::Var(y), h).unwrap();
        let imp = b.discharge(e2).unwrap();
        let c = b.ex_elim(ex, y, imp).unwrap();
        let done = b.discharge(c).unwrap();
        finish_and_check(&b, done, "((E v1)(v1 = 0)) -> ((E v2)(v2 = 0))");
    }

    #[test]
    fn alpha_conversion() {
        let q = Theory::q();
        let mut b = ProofBuilder::new(&q);
        let a = p("(A v1)((E v2)(v1 + v2 = v3))");
        let c = p("(A v4)((E v5)(v4 + v5 = v3))");
        let i = b.alpha_imp(&a, &c).unwrap();
        finish_and_check(&b, i, "((A v1)((E v2)(v1 + v2 = v3))) -> ((A v4)((E v5)(v4 + v5 = v3)))");
    }
}
