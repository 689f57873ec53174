//! Generators for fixed families of Q-theorems about numerals.

use super::builder::ProofBuilder;
use super::derivation::Derivation;
use super::sigma::finish_checked;
use super::theory::Theory;
use super::ProofError;
use crate::syntax::{expand_bounded, render_formula, Formula, Term, Var};

const V0: Var = Var(0);
const V2: Var = Var(2);

fn internal(msg: impl Into<String>) -> ProofError {
    ProofError::Internal(msg.into())
}

/// `x = 0 | … | x = i-1 | (E y)(x = s^i y)`.
pub fn initial_cases_formula(i: u64, x: Var, y: Var) -> Formula {
    let mut items: Vec<Formula> = (0..i).map(|k| Formula::eq(Term::Var(x), Term::numeral(k))).collect();
    items.push(tail_formula(i, x, y));
    Formula::disjunction(items)
}

fn tail_formula(i: u64, x: Var, y: Var) -> Formula {
    Formula::exists(y, Formula::eq(Term::Var(x), Term::succ_n(i, Term::Var(y))))
}

/// `(A v0)((v0 <= i) | (i <= v0))`.
pub fn order_totality_formula(i: u64) -> Formula {
    let x = Term::Var(V0);
    Formula::forall(V0, Formula::or(Formula::le(x.clone(), Term::numeral(i)), Formula::le(Term::numeral(i), x)))
}

fn mu_at(mu: &Formula, t: &Term) -> Formula {
    mu.substitute(V0, t)
}

/// `~mu(t) & (A v2)((s v2 <= t) -> mu(v2))`: `t` is the least number
/// failing `mu`.
fn least_failure(mu: &Formula, t: &Term) -> Formula {
    Formula::and(
        Formula::not(mu_at(mu, t)),
        Formula::forall(V2, Formula::imp(Formula::le(Term::succ(Term::Var(V2)), t.clone()), mu_at(mu, &Term::Var(V2)))),
    )
}

/// `least(i) -> (A v0)(least(v0) -> v0 = i)`, where `least(t)` says that
/// `t` is the least number not satisfying `mu`.
pub fn least_unique_formula(mu: &Formula, i: u64) -> Formula {
    let n = Term::numeral(i);
    let x = Term::Var(V0);
    Formula::imp(least_failure(mu, &n), Formula::forall(V0, Formula::imp(least_failure(mu, &x), Formula::eq(x, n))))
}

fn check_mu(mu: &Formula) -> Result<(), ProofError> {
    if mu.free_vars().iter().any(|v| *v != V0) {
        return Err(ProofError::Precondition(format!("{} has free variables besides v0", render_formula(mu))));
    }
    if mu.all_vars().contains(&V2) {
        return Err(ProofError::Precondition(format!("{} mentions v2", render_formula(mu))));
    }
    Ok(())
}

impl ProofBuilder {
    /// [`initial_cases_formula`] for `i`, `x`, `y`, proved from Q3.
    pub fn initial_cases(&mut self, i: u64, x: Var, y: Var) -> Result<usize, ProofError> {
        if x == y {
            return Err(internal("initial_cases: variables coincide"));
        }
        let key = format!("initial:{i}:{}:{}", x.0, y.0);
        self.lemma(&key, move |pb| {
            if i == 0 {
                let r = pb.eq_refl(&Term::Var(x));
                return pb.ex_intro(y, &Formula::eq(Term::Var(x), Term::Var(y)), &Term::Var(x), r);
            }
            let prev = pb.initial_cases(i - 1, x, y)?;
            let step = pb.tail_step(i - 1, x, y)?;
            pb.chain(&[prev, step], initial_cases_formula(i, x, y))
        })
    }

    /// `(E y)(x = s^j y) -> (x = j | (E y)(x = s^(j+1) y))`.
    fn tail_step(&mut self, j: u64, x: Var, y: Var) -> Result<usize, ProofError> {
        let tx = Term::Var(x);
        let next = tail_formula(j + 1, x, y);
        let disj = Formula::or(Formula::eq(tx.clone(), Term::numeral(j)), next);
        let e = self.assume(tail_formula(j, x, y));
        let w = self.fresh();
        let tw = Term::Var(w);
        let h_formula = Formula::eq(tx.clone(), Term::succ_n(j, tw.clone()));
        let h = self.assume(h_formula.clone());

        let es0 = self.eq_subst(&tw, &Term::Zero, &h_formula, &Formula::eq(tx.clone(), Term::numeral(j)))?;
        let zero_case = self.chain(&[h, es0], Formula::imp(Formula::eq(tw.clone(), Term::Zero), disj.clone()))?;

        let nz = self.assume(Formula::not(Formula::eq(tw.clone(), Term::Zero)));
        let q3 = self.q_inst("Q3", std::slice::from_ref(&tw))?;
        let ex = self.mp(nz, q3)?;
        let u = self.fresh();
        let su = Term::succ(Term::Var(u));
        let wu = self.assume(Formula::eq(tw.clone(), su.clone()));
        let es = self.eq_subst(&tw, &su, &h_formula, &Formula::eq(tx.clone(), Term::succ_n(j + 1, Term::Var(u))))?;
        let x1 = self.mp(wu, es)?;
        let x2 = self.mp(h, x1)?;
        let body = Formula::eq(tx.clone(), Term::succ_n(j + 1, Term::Var(y)));
        let ei = self.ex_intro(y, &body, &Term::Var(u), x2)?;
        let c = self.chain(&[ei], disj.clone())?;
        let d_wu = self.discharge(c)?;
        let r = self.ex_elim(ex, u, d_wu)?;
        let nonzero_case = self.discharge(r)?;

        let both = self.chain(&[zero_case, nonzero_case], disj)?;
        let imp = self.discharge(both)?;
        let r = self.ex_elim(e, w, imp)?;
        self.discharge(r)
    }

    /// `(A v0)((v0 <= i) | (i <= v0))`.
    pub fn order_totality(&mut self, i: u64) -> Result<usize, ProofError> {
        let x = Term::Var(V0);
        let n = Term::numeral(i);
        let goal_body = Formula::or(Formula::le(x.clone(), n.clone()), Formula::le(n.clone(), x.clone()));
        let y = self.fresh();
        let cases = self.initial_cases(i, V0, y)?;
        let mut premises = vec![cases];
        for k in 0..i {
            let pk = self.prove_le(&Term::numeral(k), &n)?.ok_or_else(|| internal("k <= i"))?;
            premises.push(self.from_instance(&x, &Term::numeral(k), &Formula::le(x.clone(), n.clone()), pk)?);
        }
        let e = self.assume(tail_formula(i, V0, y));
        let w = self.fresh();
        let tw = Term::Var(w);
        let h = self.assume(Formula::eq(x.clone(), Term::succ_n(i, tw.clone())));
        let eq1 = self
            .prove_eq(&Term::add(tw.clone(), n.clone()), &Term::succ_n(i, tw.clone()))?
            .ok_or_else(|| internal("w + i normal form"))?;
        let hs = self.eq_symm(h)?;
        let eq2 = self.eq_trans(eq1, hs)?;
        let q8 = self.q_inst("Q8", &[n.clone(), x.clone()])?;
        let Formula::Iff(_, ex) = self.formula(q8).clone() else {
            return Err(internal("Q8 instance shape"));
        };
        let Formula::Exists(z, body) = *ex else {
            return Err(internal("Q8 instance shape"));
        };
        let ei = self.ex_intro(z, &body, &tw, eq2)?;
        let le = self.chain(&[ei, q8], Formula::le(n.clone(), x.clone()))?;
        let imp = self.discharge(le)?;
        let r = self.ex_elim(e, w, imp)?;
        premises.push(self.discharge(r)?);
        let body = self.chain(&premises, goal_body)?;
        self.gen(body, V0)
    }

    /// [`least_unique_formula`] for `mu` and `i`.
    pub fn least_unique(&mut self, mu: &Formula, i: u64) -> Result<usize, ProofError> {
        check_mu(mu)?;
        let mu = expand_bounded(mu);
        self.reserve_vars(&mu);
        let x = Term::Var(V0);
        let n = Term::numeral(i);
        let goal_eq = Formula::eq(x.clone(), n.clone());

        let a = self.assume(least_failure(&mu, &n));
        let not_mu_i = self.chain(&[a], Formula::not(mu_at(&mu, &n)))?;
        let Formula::And(_, below_i) = self.formula(a).clone() else { unreachable!() };
        let below_i = self.chain(&[a], (*below_i).clone())?;

        let b = self.assume(least_failure(&mu, &x));
        let not_mu_x = self.chain(&[b], Formula::not(mu_at(&mu, &x)))?;
        let Formula::And(_, below_x) = self.formula(b).clone() else { unreachable!() };
        let below_x = self.chain(&[b], (*below_x).clone())?;

        let y = self.fresh();
        let cases = self.initial_cases(i + 1, V0, y)?;
        let mut premises = vec![cases];
        for k in 0..i {
            let tk = Term::numeral(k);
            let ik = self.inst(below_i, &tk)?;
            let gk = self.prove_le(&Term::succ(tk.clone()), &n)?.ok_or_else(|| internal("k < i"))?;
            let mk = self.mp(gk, ik)?;
            let es = self.eq_subst(&x, &tk, &Formula::not(mu_at(&mu, &x)), &Formula::not(mu_at(&mu, &tk)))?;
            premises.push(self.chain(&[mk, es, not_mu_x], Formula::imp(Formula::eq(x.clone(), tk), goal_eq.clone()))?);
        }
        premises.push(self.taut(Formula::imp(goal_eq.clone(), goal_eq.clone()))?);

        let e = self.assume(tail_formula(i + 1, V0, y));
        let w = self.fresh();
        let tw = Term::Var(w);
        let h = self.assume(Formula::eq(x.clone(), Term::succ_n(i + 1, tw.clone())));
        let iv = self.inst(below_x, &n)?;
        let sn = Term::succ(n.clone());
        let eq1 = self
            .prove_eq(&Term::add(tw.clone(), sn.clone()), &Term::succ_n(i + 1, tw.clone()))?
            .ok_or_else(|| internal("w + s i normal form"))?;
        let hs = self.eq_symm(h)?;
        let eq2 = self.eq_trans(eq1, hs)?;
        let q8 = self.q_inst("Q8", &[sn.clone(), x.clone()])?;
        let Formula::Iff(_, ex) = self.formula(q8).clone() else {
            return Err(internal("Q8 instance shape"));
        };
        let Formula::Exists(z, body) = *ex else {
            return Err(internal("Q8 instance shape"));
        };
        let ei = self.ex_intro(z, &body, &tw, eq2)?;
        let le = self.chain(&[ei, q8], Formula::le(sn, x.clone()))?;
        let mi = self.mp(le, iv)?;
        let c = self.chain(&[mi, not_mu_i], goal_eq.clone())?;
        let imp = self.discharge(c)?;
        let r = self.ex_elim(e, w, imp)?;
        premises.push(self.discharge(r)?);

        let concl = self.chain(&premises, goal_eq)?;
        let db = self.discharge(concl)?;
        let g = self.gen(db, V0)?;
        self.discharge(g)
    }
}

/// A Q-derivation of `~(i = j)`.
pub fn prove_ne_numerals(i: u64, j: u64) -> Result<Derivation, ProofError> {
    let q = Theory::q();
    let mut b = ProofBuilder::new(&q);
    let r = b.ne_numerals(i, j)?;
    finish_checked(&b, r, &q, &Formula::not(Formula::eq(Term::numeral(i), Term::numeral(j))))
}

/// A Q-derivation of `(A v0)((v0 <= i) | (i <= v0))`.
pub fn prove_order_totality(i: u64) -> Result<Derivation, ProofError> {
    let q = Theory::q();
    let mut b = ProofBuilder::new(&q);
    let r = b.order_totality(i)?;
    finish_checked(&b, r, &q, &order_totality_formula(i))
}

/// A Q-derivation of [`least_unique_formula`]: if `i` is the least number
/// failing `mu(v0)`, no other number is.
pub fn prove_least_unique(mu: &Formula, i: u64) -> Result<Derivation, ProofError> {
    let q = Theory::q();
    let mut b = ProofBuilder::new(&q);
    b.reserve_vars(mu);
    let r = b.least_unique(mu, i)?;
    finish_checked(&b, r, &q, &least_unique_formula(mu, i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn disequalities() {
        for (i, j) in [(0, 1), (1, 0), (4, 7), (7, 4)] {
            let d = prove_ne_numerals(i, j).unwrap();
            assert!(d.len() > 1);
        }
        assert!(matches!(prove_ne_numerals(2, 2), Err(ProofError::Precondition(_))));
    }

    #[test]
    fn totality() {
        for i in 0..=3 {
            prove_order_totality(i).unwrap();
        }
    }

    #[test]
    fn least_unique() {
        let mu = parse_formula("(E v1 < s s 0)(v0 = v1 + v1)").unwrap();
        for i in 0..=2 {
            prove_least_unique(&mu, i).unwrap();
        }
        assert!(prove_least_unique(&parse_formula("v0 = v2").unwrap(), 1).is_err());
        assert!(prove_least_unique(&parse_formula("(E v2)(v0 = v2)").unwrap(), 1).is_err());
    }
}
