//! Arithmetic in Q: normal forms of terms, atomic facts, numeral
//! disequalities and case-split lemmas for bounded variables.

use super::builder::ProofBuilder;
use super::ProofError;
use crate::syntax::{render_term, Formula, Term, Var};

/// Largest numeral value a generated proof will mention.
pub const MAX_NUMERAL: u64 = 4096;

fn internal(msg: impl Into<String>) -> ProofError {
    ProofError::Internal(msg.into())
}

fn eq_sides(f: &Formula) -> Result<(Term, Term), ProofError> {
    match f {
        Formula::Eq(a, b) => Ok((a.clone(), b.clone())),
        _ => Err(internal("expected an equation")),
    }
}

/// The value of a closed term, refusing values a proof could not mention.
pub fn closed_value(t: &Term) -> Result<u64, ProofError> {
    fn go(t: &Term) -> Option<u64> {
        let v = match t {
            Term::Zero => 0,
            Term::Var(_) => return None,
            Term::Succ(a) => go(a)?.checked_add(1)?,
            Term::Add(a, b) => go(a)?.checked_add(go(b)?)?,
            Term::Mul(a, b) => go(a)?.checked_mul(go(b)?)?,
        };
        (v <= MAX_NUMERAL).then_some(v)
    }
    if !t.is_closed() {
        return Err(internal(format!("term {} is not closed", render_term(t))));
    }
    go(t).ok_or_else(|| ProofError::Unsupported(format!("value of {} exceeds {MAX_NUMERAL}", render_term(t))))
}

/// Disjunction of `x = k` over `ks`.
pub fn value_cases(x: &Term, ks: impl IntoIterator<Item = u64>) -> Formula {
    Formula::disjunction(ks.into_iter().map(|k| Formula::eq(x.clone(), Term::numeral(k))).collect())
}

impl ProofBuilder {
    /// Proves `t = t'` with `t'` the normal form of `t`: sums and products
    /// are unfolded with Q4–Q7 as far as their right argument is a numeral
    /// or successor. Closed terms normalize to numerals.
    pub fn normalize(&mut self, t: &Term) -> Result<(Term, usize), ProofError> {
        let key = format!("norm:{}", render_term(t));
        let t2 = t.clone();
        let i = self.lemma(&key, move |pb| pb.normalize_uncached(&t2))?;
        Ok((eq_sides(self.formula(i))?.1, i))
    }

    fn normalize_uncached(&mut self, t: &Term) -> Result<usize, ProofError> {
        match t {
            Term::Zero | Term::Var(_) => Ok(self.eq_refl(t)),
            Term::Succ(a) => {
                let (a2, pa) = self.normalize(a)?;
                let r = self.eq_refl(t);
                self.rewrite(r, pa, Formula::eq(t.clone(), Term::succ(a2)))
            }
            Term::Add(a, b) | Term::Mul(a, b) => {
                let is_add = matches!(t, Term::Add(..));
                let op = |x: Term, y: Term| if is_add { Term::add(x, y) } else { Term::mul(x, y) };
                let (a2, pa) = self.normalize(a)?;
                let (b2, pb) = self.normalize(b)?;
                let r = self.eq_refl(t);
                let s1 = self.rewrite(r, pa, Formula::eq(t.clone(), op(a2.clone(), (**b).clone())))?;
                let s2 = self.rewrite(s1, pb, Formula::eq(t.clone(), op(a2.clone(), b2.clone())))?;
                let (_, p) = if is_add { self.add_nf(&a2, &b2)? } else { self.mul_nf(&a2, &b2)? };
                self.eq_trans(s2, p)
            }
        }
    }

    /// `a + b = r` for normal `a`, `b`.
    fn add_nf(&mut self, a: &Term, b: &Term) -> Result<(Term, usize), ProofError> {
        match b {
            Term::Zero => Ok((a.clone(), self.q_inst("Q4", std::slice::from_ref(a))?)),
            Term::Succ(b1) => {
                let q5 = self.q_inst("Q5", &[a.clone(), (**b1).clone()])?;
                let (r1, p1) = self.add_nf(a, b1)?;
                let inner = Term::succ(Term::add(a.clone(), (**b1).clone()));
                let r = self.eq_refl(&inner);
                let s1 = self.rewrite(r, p1, Formula::eq(inner, Term::succ(r1.clone())))?;
                Ok((Term::succ(r1), self.eq_trans(q5, s1)?))
            }
            _ => {
                let t = Term::add(a.clone(), b.clone());
                Ok((t.clone(), self.eq_refl(&t)))
            }
        }
    }

    /// `a * b = r` for normal `a`, `b`.
    fn mul_nf(&mut self, a: &Term, b: &Term) -> Result<(Term, usize), ProofError> {
        match b {
            Term::Zero => Ok((Term::Zero, self.q_inst("Q6", std::slice::from_ref(a))?)),
            Term::Succ(b1) => {
                let q7 = self.q_inst("Q7", &[a.clone(), (**b1).clone()])?;
                let (r1, p1) = self.mul_nf(a, b1)?;
                let sum = Term::add(Term::mul(a.clone(), (**b1).clone()), a.clone());
                let r = self.eq_refl(&sum);
                let s1 = self.rewrite(r, p1, Formula::eq(sum, Term::add(r1.clone(), a.clone())))?;
                let (r2, p2) = self.add_nf(&r1, a)?;
                let t1 = self.eq_trans(q7, s1)?;
                Ok((r2, self.eq_trans(t1, p2)?))
            }
            _ => {
                let t = Term::mul(a.clone(), b.clone());
                Ok((t.clone(), self.eq_refl(&t)))
            }
        }
    }

    /// From `s x = s y`, `x = y`.
    pub fn strip_succ(&mut self, i: usize) -> Result<usize, ProofError> {
        let (l, r) = eq_sides(self.formula(i))?;
        let (Term::Succ(x), Term::Succ(y)) = (l, r) else {
            return Err(internal("strip_succ: sides are not successors"));
        };
        let q1 = self.q_inst("Q1", &[*x, *y])?;
        self.mp(i, q1)
    }

    /// `~(s t = 0)`.
    pub fn succ_ne_zero(&mut self, t: &Term) -> Result<usize, ProofError> {
        self.q_inst("Q2", std::slice::from_ref(t))
    }

    /// Proves `a = b` when both sides have the same normal form.
    pub fn prove_eq(&mut self, a: &Term, b: &Term) -> Result<Option<usize>, ProofError> {
        let (na, pa) = self.normalize(a)?;
        let (nb, pb) = self.normalize(b)?;
        if na != nb {
            return Ok(None);
        }
        Ok(Some(self.eq_join(pa, pb)?))
    }

    /// Proves `~(a = b)` when the normal forms are `s^p(A)` and `s^q(B)` with
    /// `p != q` and the side with fewer successors ending in `0`.
    pub fn refute_eq(&mut self, a: &Term, b: &Term) -> Result<Option<usize>, ProofError> {
        let (na, pa) = self.normalize(a)?;
        let (nb, pb) = self.normalize(b)?;
        let (p, core_a) = na.peel_succ();
        let (q, core_b) = nb.peel_succ();
        let refutable = (p > q && *core_b == Term::Zero) || (q > p && *core_a == Term::Zero);
        if !refutable {
            return Ok(None);
        }
        let goal = Formula::not(Formula::eq(a.clone(), b.clone()));
        let h = self.assume(Formula::eq(a.clone(), b.clone()));
        let sa = self.eq_symm(pa)?;
        let t1 = self.eq_trans(sa, h)?;
        let mut cur = self.eq_trans(t1, pb)?;
        for _ in 0..p.min(q) {
            cur = self.strip_succ(cur)?;
        }
        if q > p {
            cur = self.eq_symm(cur)?;
        }
        let (l, _) = eq_sides(self.formula(cur))?;
        let Term::Succ(inner) = l else {
            return Err(internal("refute_eq: expected a successor"));
        };
        let q2 = self.succ_ne_zero(&inner)?;
        let c = self.chain(&[cur, q2], goal.clone())?;
        let d = self.discharge(c)?;
        Ok(Some(self.chain(&[d], goal)?))
    }

    /// Proves `a <= b` when `a` normalizes to a numeral `p` and `b` to
    /// `s^q(B)` with `q >= p`, using the witness `s^(q-p)(B)`.
    pub fn prove_le(&mut self, a: &Term, b: &Term) -> Result<Option<usize>, ProofError> {
        let (na, _) = self.normalize(a)?;
        let (nb, _) = self.normalize(b)?;
        let (Some(p), (q, core_b)) = (na.as_numeral(), nb.peel_succ()) else {
            return Ok(None);
        };
        if q < p {
            return Ok(None);
        }
        let witness = Term::succ_n(q - p, core_b.clone());
        let q8 = self.q_inst("Q8", &[a.clone(), b.clone()])?;
        let Formula::Iff(_, ex) = self.formula(q8).clone() else {
            return Err(internal("Q8 instance shape"));
        };
        let Formula::Exists(w, body) = *ex else {
            return Err(internal("Q8 instance shape"));
        };
        let Some(eq) = self.prove_eq(&Term::add(witness.clone(), a.clone()), b)? else {
            return Ok(None);
        };
        let e = self.ex_intro(w, &body, &witness, eq)?;
        Ok(Some(self.chain(&[e, q8], Formula::le(a.clone(), b.clone()))?))
    }

    /// Proves `~(a <= b)` by refuting `w + a = b` for a fresh `w`.
    pub fn refute_le(&mut self, a: &Term, b: &Term) -> Result<Option<usize>, ProofError> {
        let q8 = self.q_inst("Q8", &[a.clone(), b.clone()])?;
        let Formula::Iff(_, ex) = self.formula(q8).clone() else {
            return Err(internal("Q8 instance shape"));
        };
        let Formula::Exists(w, body) = *ex else {
            return Err(internal("Q8 instance shape"));
        };
        let Some(ne) = self.refute_eq(&Term::add(Term::Var(w), a.clone()), b)? else {
            return Ok(None);
        };
        if self.level(ne) > 0 {
            return Err(internal("refute_le: refutation depends on a hypothesis"));
        }
        let g = self.gen(ne, w)?;
        let ed = self.ex_def(w, &body);
        Ok(Some(self.chain(&[g, ed, q8], Formula::not(Formula::le(a.clone(), b.clone())))?))
    }

    /// Decides a closed atom, returning its truth value and a proof of the
    /// atom or of its negation.
    pub fn decide_atom(&mut self, f: &Formula) -> Result<(bool, usize), ProofError> {
        let stuck = || internal("closed atom left undecided");
        match f {
            Formula::Eq(a, b) => {
                let (va, vb) = (closed_value(a)?, closed_value(b)?);
                if va == vb {
                    Ok((true, self.prove_eq(a, b)?.ok_or_else(stuck)?))
                } else {
                    Ok((false, self.refute_eq(a, b)?.ok_or_else(stuck)?))
                }
            }
            Formula::Le(a, b) => {
                let (va, vb) = (closed_value(a)?, closed_value(b)?);
                if va <= vb {
                    Ok((true, self.prove_le(a, b)?.ok_or_else(stuck)?))
                } else {
                    Ok((false, self.refute_le(a, b)?.ok_or_else(stuck)?))
                }
            }
            _ => Err(internal("decide_atom on a non-atom")),
        }
    }

    /// `~(i = j)` for distinct numerals, from Q2 and `j - i` (or `i - j`)
    /// applications of Q1.
    pub fn ne_numerals(&mut self, i: u64, j: u64) -> Result<usize, ProofError> {
        if i == j {
            return Err(ProofError::Precondition(format!("{i} = {j}")));
        }
        let key = format!("ne:{i}:{j}");
        self.lemma(&key, move |pb| {
            if i > j {
                let r = pb.ne_numerals(j, i)?;
                let s = pb.sym_imp(&Term::numeral(i), &Term::numeral(j))?;
                return pb.chain(&[s, r], Formula::not(Formula::eq(Term::numeral(i), Term::numeral(j))));
            }
            let d = j - i;
            let q2 = pb.succ_ne_zero(&Term::numeral(d - 1))?;
            let s = pb.sym_imp(&Term::Zero, &Term::numeral(d))?;
            let mut cur = pb.chain(&[s, q2], Formula::not(Formula::eq(Term::Zero, Term::numeral(d))))?;
            for k in 0..i {
                let q1 = pb.q_inst("Q1", &[Term::numeral(k), Term::numeral(k + d)])?;
                cur =
                    pb.chain(&[q1, cur], Formula::not(Formula::eq(Term::numeral(k + 1), Term::numeral(k + 1 + d))))?;
            }
            Ok(cur)
        })
    }

    /// `(A z)(A x)((z + x = n) -> (x = 0 | … | x = n))`.
    pub fn add_cases(&mut self, n: u64) -> Result<usize, ProofError> {
        let key = format!("add-cases:{n}");
        self.lemma(&key, move |pb| {
            let z = pb.fresh();
            let x = pb.fresh();
            let (tz, tx) = (Term::Var(z), Term::Var(x));
            let target = value_cases(&tx, 0..=n);
            let antecedent = Formula::eq(Term::add(tz.clone(), tx.clone()), Term::numeral(n));
            let c = Formula::imp(antecedent.clone(), target.clone());
            let x_zero = Formula::eq(tx.clone(), Term::Zero);

            let case_zero = pb.taut(Formula::imp(x_zero.clone(), c.clone()))?;

            let nz = pb.assume(Formula::not(x_zero.clone()));
            let q3 = pb.q_inst("Q3", std::slice::from_ref(&tx))?;
            let ex = pb.mp(nz, q3)?;
            let y = pb.fresh();
            let ty = Term::Var(y);
            let h = pb.assume(Formula::eq(tx.clone(), Term::succ(ty.clone())));
            let a = pb.assume(antecedent.clone());
            let r = pb.eq_refl(&Term::add(tz.clone(), tx.clone()));
            let e1 = pb.rewrite(
                r,
                h,
                Formula::eq(Term::add(tz.clone(), tx.clone()), Term::add(tz.clone(), Term::succ(ty.clone()))),
            )?;
            let e2 = pb.q_inst("Q5", &[tz.clone(), ty.clone()])?;
            let e3 = pb.eq_trans(e1, e2)?;
            let e3s = pb.eq_symm(e3)?;
            let e4 = pb.eq_trans(e3s, a)?;
            let body = if n == 0 {
                let q2 = pb.succ_ne_zero(&Term::add(tz.clone(), ty.clone()))?;
                pb.chain(&[e4, q2], target.clone())?
            } else {
                let e5 = pb.strip_succ(e4)?;
                let prev = pb.add_cases(n - 1)?;
                let inst = pb.inst_all(prev, &[tz.clone(), ty.clone()])?;
                let dy = pb.mp(e5, inst)?;
                let mut premises = vec![dy];
                for k in 0..n {
                    let es = pb.eq_subst(
                        &ty,
                        &Term::numeral(k),
                        &Formula::eq(tx.clone(), Term::succ(ty.clone())),
                        &Formula::eq(tx.clone(), Term::numeral(k + 1)),
                    )?;
                    premises.push(pb.chain(
                        &[h, es],
                        Formula::imp(
                            Formula::eq(ty.clone(), Term::numeral(k)),
                            Formula::eq(tx.clone(), Term::numeral(k + 1)),
                        ),
                    )?);
                }
                pb.chain(&premises, target.clone())?
            };
            let d1 = pb.discharge(body)?;
            let d2 = pb.discharge(d1)?;
            let e = pb.ex_elim(ex, y, d2)?;
            let case_nonzero = pb.discharge(e)?;
            let both = pb.chain(&[case_zero, case_nonzero], c)?;
            let g1 = pb.gen(both, x)?;
            pb.gen(g1, z)
        })
    }

    /// `(A x)((x <= n) -> (x = 0 | … | x = n))`.
    pub fn le_cases(&mut self, n: u64) -> Result<usize, ProofError> {
        let key = format!("le-cases:{n}");
        self.lemma(&key, move |pb| {
            let x = pb.fresh();
            let tx = Term::Var(x);
            let q8 = pb.q_inst("Q8", &[tx.clone(), Term::numeral(n)])?;
            let Formula::Iff(_, ex_f) = pb.formula(q8).clone() else {
                return Err(internal("Q8 instance shape"));
            };
            let l = pb.assume(Formula::le(tx.clone(), Term::numeral(n)));
            let ex = pb.chain(&[l, q8], (*ex_f).clone())?;
            let ac = pb.add_cases(n)?;
            let z = pb.fresh();
            let imp = pb.inst_all(ac, &[Term::Var(z), tx.clone()])?;
            let e = pb.ex_elim(ex, z, imp)?;
            let d = pb.discharge(e)?;
            pb.gen(d, x)
        })
    }

    /// `(A x)((s x <= n) -> (x = 0 | … | x = n-1))`, or `(A x) ~(s x <= 0)`
    /// for `n = 0`.
    pub fn lt_cases(&mut self, n: u64) -> Result<usize, ProofError> {
        let key = format!("lt-cases:{n}");
        self.lemma(&key, move |pb| {
            let x = pb.fresh();
            let tx = Term::Var(x);
            let sx = Term::succ(tx.clone());
            let lc = pb.le_cases(n)?;
            let lc = pb.inst(lc, &sx)?;
            let q2 = pb.succ_ne_zero(&tx)?;
            let guard = Formula::le(sx, Term::numeral(n));
            let concl = if n == 0 {
                pb.chain(&[lc, q2], Formula::not(guard))?
            } else {
                let mut premises = vec![lc, q2];
                for k in 1..=n {
                    premises.push(pb.q_inst("Q1", &[tx.clone(), Term::numeral(k - 1)])?);
                }
                pb.chain(&premises, Formula::imp(guard, value_cases(&tx, 0..n)))?
            };
            pb.gen(concl, x)
        })
    }

    /// `guard(x) -> (x = k0 | …)` (or `~guard(x)` when there are no cases)
    /// for a bounded variable `x` with closed bound `b`.
    pub fn bound_cases(&mut self, x: Var, b: &Term, strict: bool) -> Result<(Vec<u64>, usize), ProofError> {
        let n = closed_value(b)?;
        let tx = Term::Var(x);
        let (lemma, ks): (usize, Vec<u64>) =
            if strict { (self.lt_cases(n)?, (0..n).collect()) } else { (self.le_cases(n)?, (0..=n).collect()) };
        let inst = self.inst(lemma, &tx)?;
        let lhs = if strict { Term::succ(tx.clone()) } else { tx.clone() };
        let guard_b = Formula::le(lhs.clone(), b.clone());
        let guard_n = Formula::le(lhs, Term::numeral(n));
        if guard_b == guard_n {
            return Ok((ks, inst));
        }
        let (_, pb) = self.normalize(b)?;
        let es = self.eq_subst(b, &Term::numeral(n), &guard_b, &guard_n)?;
        let concl = if ks.is_empty() {
            Formula::not(guard_b)
        } else {
            Formula::imp(guard_b, value_cases(&tx, ks.iter().copied()))
        };
        Ok((ks, self.chain(&[pb, es, inst], concl)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check::check_proves;
    use crate::proof::theory::Theory;
    use crate::syntax::{parse_formula, parse_term};

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn proves(b: &ProofBuilder, i: usize, goal: &Formula) {
        let d = b.finish(i).unwrap();
        check_proves(&d, &Theory::q(), goal).unwrap();
    }

    #[test]
    fn normal_forms() {
        let q = Theory::q();
        let mut b = ProofBuilder::new(&q);
        let t = parse_term("(s s 0 * s s s 0) + s 0").unwrap();
        let (nf, i) = b.normalize(&t).unwrap();
        assert_eq!(nf, Term::numeral(7));
        proves(&b, i, &Formula::eq(t, nf));

        let t = parse_term("v0 + s s 0").unwrap();
        let (nf, _) = b.normalize(&t).unwrap();
        assert_eq!(nf, parse_term("s s v0").unwrap());
        let t = parse_term("v5 + s s 0").unwrap();
        let (nf, _) = b.normalize(&t).unwrap();
        assert_eq!(nf, parse_term("s s v5").unwrap());
    }

    #[test]
    fn closed_atoms() {
        let q = Theory::q();
        for (text, truth) in [
            ("s 0 + s 0 = s s 0", true),
            ("s 0 * 0 = s 0", false),
            ("s s 0 <= s s s 0 * s 0", true),
            ("s s s 0 <= s 0 + s 0", false),
            ("0 <= 0", true),
            ("s 0 <= 0", false),
        ] {
            let f = p(text);
            let mut b = ProofBuilder::new(&q);
            let (v, i) = b.decide_atom(&f).unwrap();
            assert_eq!(v, truth, "{text}");
            let goal = if v { f } else { Formula::not(f) };
            proves(&b, i, &goal);
        }
    }

    #[test]
    fn numeral_disequalities() {
        let q = Theory::q();
        let mut b = ProofBuilder::new(&q);
        for (i, j) in [(0, 1), (3, 1), (2, 5)] {
            let r = b.ne_numerals(i, j).unwrap();
            proves(&b, r, &Formula::not(Formula::eq(Term::numeral(i), Term::numeral(j))));
        }
    }

    #[test]
    fn case_lemmas() {
        let q = Theory::q();
        let mut b = ProofBuilder::new(&q);
        let i = b.lt_cases(3).unwrap();
        let f = b.formula(i).clone();
        let Formula::Forall(x, _) = &f else { panic!() };
        let expected = Formula::forall(
            *x,
            Formula::imp(Formula::le(Term::succ(Term::Var(*x)), Term::numeral(3)), value_cases(&Term::Var(*x), 0..3)),
        );
        assert_eq!(f, expected);
        proves(&b, i, &expected);

        let z = b.lt_cases(0).unwrap();
        let d = b.finish(z).unwrap();
        crate::proof::check::check(&d, &q).unwrap();

        let (ks, i) = b.bound_cases(Var(0), &parse_term("s 0 + s 0").unwrap(), false).unwrap();
        assert_eq!(ks, vec![0, 1, 2]);
        proves(&b, i, &p("(v0 <= s 0 + s 0) -> ((v0 = 0) | ((v0 = s 0) | (v0 = s s 0)))"));
    }
}
