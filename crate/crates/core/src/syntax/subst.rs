//! Variables, substitution, α-equivalence and the renaming normal form.

use std::collections::BTreeSet;

use thiserror::Error;

use super::ast::{Formula, Term, Var};
use super::render::formula_length;

impl Term {
    pub fn vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Zero => {}
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Succ(a) => a.vars_into(out),
            Term::Add(l, r) | Term::Mul(l, r) => {
                l.vars_into(out);
                r.vars_into(out);
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = BTreeSet::new();
        self.vars_into(&mut s);
        s
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            Term::Zero => false,
            Term::Var(w) => *w == v,
            Term::Succ(a) => a.contains_var(v),
            Term::Add(l, r) | Term::Mul(l, r) => l.contains_var(v) || r.contains_var(v),
        }
    }

    pub fn occurrences(&self, v: Var) -> usize {
        match self {
            Term::Zero => 0,
            Term::Var(w) => usize::from(*w == v),
            Term::Succ(a) => a.occurrences(v),
            Term::Add(l, r) | Term::Mul(l, r) => l.occurrences(v) + r.occurrences(v),
        }
    }

    pub fn substitute(&self, v: Var, t: &Term) -> Term {
        match self {
            Term::Zero => Term::Zero,
            Term::Var(w) if *w == v => t.clone(),
            Term::Var(w) => Term::Var(*w),
            Term::Succ(a) => Term::succ(a.substitute(v, t)),
            Term::Add(l, r) => Term::add(l.substitute(v, t), r.substitute(v, t)),
            Term::Mul(l, r) => Term::mul(l.substitute(v, t), r.substitute(v, t)),
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.vars().iter().next_back().map(|v| v.0)
    }
}

impl Formula {
    fn free_vars_into(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut add_term = |t: &Term, bound: &Vec<Var>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Eq(l, r) | Formula::Le(l, r) => {
                add_term(l, bound);
                add_term(r, bound);
            }
            Formula::Not(a) => a.free_vars_into(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.free_vars_into(bound, out);
                b.free_vars_into(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(*v);
                body.free_vars_into(bound, out);
                bound.pop();
            }
            Formula::BoundedForall(v, b, body) | Formula::BoundedExists(v, b, body) => {
                add_term(b, bound);
                bound.push(*v);
                body.free_vars_into(bound, out);
                bound.pop();
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut Vec::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, v: Var) -> bool {
        self.free_occurrences(v) > 0
    }

    /// Every variable occurring anywhere, bound or free (binders included).
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.all_vars_into(&mut out);
        out
    }

    fn all_vars_into(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Eq(l, r) | Formula::Le(l, r) => {
                l.vars_into(out);
                r.vars_into(out);
            }
            Formula::Not(a) => a.all_vars_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.all_vars_into(out);
                b.all_vars_into(out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                out.insert(*v);
                body.all_vars_into(out);
            }
            Formula::BoundedForall(v, b, body) | Formula::BoundedExists(v, b, body) => {
                out.insert(*v);
                b.vars_into(out);
                body.all_vars_into(out);
            }
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.all_vars().iter().next_back().map(|v| v.0)
    }

    /// Number of free occurrences of `v`.
    pub fn free_occurrences(&self, v: Var) -> usize {
        match self {
            Formula::Eq(l, r) | Formula::Le(l, r) => l.occurrences(v) + r.occurrences(v),
            Formula::Not(a) => a.free_occurrences(v),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
                a.free_occurrences(v) + b.free_occurrences(v)
            }
            Formula::Forall(w, body) | Formula::Exists(w, body) => {
                if *w == v {
                    0
                } else {
                    body.free_occurrences(v)
                }
            }
            Formula::BoundedForall(w, b, body) | Formula::BoundedExists(w, b, body) => {
                b.occurrences(v) + if *w == v { 0 } else { body.free_occurrences(v) }
            }
        }
    }

    /// Substitution that fails instead of renaming: `None` when some free
    /// occurrence of `v` lies under a binder of a variable of `t`.
    pub fn substitute_strict(&self, v: Var, t: &Term) -> Option<Formula> {
        let tv = t.vars();
        self.subst_strict(v, t, &tv)
    }

    fn subst_strict(&self, v: Var, t: &Term, tv: &BTreeSet<Var>) -> Option<Formula> {
        Some(match self {
            Formula::Eq(l, r) => Formula::Eq(l.substitute(v, t), r.substitute(v, t)),
            Formula::Le(l, r) => Formula::Le(l.substitute(v, t), r.substitute(v, t)),
            Formula::Not(a) => Formula::not(a.subst_strict(v, t, tv)?),
            Formula::And(a, b) => Formula::and(a.subst_strict(v, t, tv)?, b.subst_strict(v, t, tv)?),
            Formula::Or(a, b) => Formula::or(a.subst_strict(v, t, tv)?, b.subst_strict(v, t, tv)?),
            Formula::Imp(a, b) => Formula::imp(a.subst_strict(v, t, tv)?, b.subst_strict(v, t, tv)?),
            Formula::Iff(a, b) => Formula::iff(a.subst_strict(v, t, tv)?, b.subst_strict(v, t, tv)?),
            Formula::Forall(w, body) | Formula::Exists(w, body) => {
                let new_body = if *w == v || !body.has_free(v) {
                    (**body).clone()
                } else if tv.contains(w) {
                    return None;
                } else {
                    body.subst_strict(v, t, tv)?
                };
                if matches!(self, Formula::Forall(..)) {
                    Formula::forall(*w, new_body)
                } else {
                    Formula::exists(*w, new_body)
                }
            }
            Formula::BoundedForall(w, b, body) | Formula::BoundedExists(w, b, body) => {
                let nb = b.substitute(v, t);
                let new_body = if *w == v || !body.has_free(v) {
                    (**body).clone()
                } else if tv.contains(w) {
                    return None;
                } else {
                    body.subst_strict(v, t, tv)?
                };
                if matches!(self, Formula::BoundedForall(..)) {
                    Formula::bforall(*w, nb, new_body)
                } else {
                    Formula::bexists(*w, nb, new_body)
                }
            }
        })
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `v`.
    /// Binders that would capture a variable of `t` are renamed to a fresh
    /// variable; lengths are unaffected by such renaming.
    pub fn substitute(&self, v: Var, t: &Term) -> Formula {
        let tv = t.vars();
        match self {
            Formula::Eq(l, r) => Formula::Eq(l.substitute(v, t), r.substitute(v, t)),
            Formula::Le(l, r) => Formula::Le(l.substitute(v, t), r.substitute(v, t)),
            Formula::Not(a) => Formula::not(a.substitute(v, t)),
            Formula::And(a, b) => Formula::and(a.substitute(v, t), b.substitute(v, t)),
            Formula::Or(a, b) => Formula::or(a.substitute(v, t), b.substitute(v, t)),
            Formula::Imp(a, b) => Formula::imp(a.substitute(v, t), b.substitute(v, t)),
            Formula::Iff(a, b) => Formula::iff(a.substitute(v, t), b.substitute(v, t)),
            Formula::Forall(..) | Formula::Exists(..) | Formula::BoundedForall(..) | Formula::BoundedExists(..) => {
                let (w, bound, body) = match self {
                    Formula::Forall(w, body) | Formula::Exists(w, body) => (*w, None, body),
                    Formula::BoundedForall(w, b, body) | Formula::BoundedExists(w, b, body) => (*w, Some(b), body),
                    _ => unreachable!(),
                };
                let bound = bound.map(|b| b.substitute(v, t));
                let (w2, new_body) = if w == v || !body.has_free(v) {
                    (w, (**body).clone())
                } else if tv.contains(&w) {
                    let mut avoid = body.all_vars();
                    avoid.extend(tv.iter().copied());
                    avoid.insert(v);
                    let z = fresh_var(&avoid);
                    let renamed = body.substitute(w, &Term::Var(z));
                    (z, renamed.substitute(v, t))
                } else {
                    (w, body.substitute(v, t))
                };
                match self {
                    Formula::Forall(..) => Formula::forall(w2, new_body),
                    Formula::Exists(..) => Formula::exists(w2, new_body),
                    Formula::BoundedForall(..) => Formula::bforall(w2, bound.unwrap(), new_body),
                    _ => Formula::bexists(w2, bound.unwrap(), new_body),
                }
            }
        }
    }

    /// Renames every bound variable to a fresh one above `floor` and above
    /// every variable of the formula. The result is α-equivalent.
    pub fn rename_bound_fresh(&self, floor: u32) -> Formula {
        let mut next = self.max_var().map_or(0, |m| m + 1).max(floor);
        self.rename_bound_with(&mut next)
    }

    fn rename_bound_with(&self, next: &mut u32) -> Formula {
        match self {
            Formula::Eq(..) | Formula::Le(..) => self.clone(),
            Formula::Not(a) => Formula::not(a.rename_bound_with(next)),
            Formula::And(a, b) => Formula::and(a.rename_bound_with(next), b.rename_bound_with(next)),
            Formula::Or(a, b) => Formula::or(a.rename_bound_with(next), b.rename_bound_with(next)),
            Formula::Imp(a, b) => Formula::imp(a.rename_bound_with(next), b.rename_bound_with(next)),
            Formula::Iff(a, b) => Formula::iff(a.rename_bound_with(next), b.rename_bound_with(next)),
            Formula::Forall(w, body) | Formula::Exists(w, body) => {
                let z = Var(*next);
                *next += 1;
                let nb = body.substitute_strict(*w, &Term::Var(z)).expect("fresh variable").rename_bound_with(next);
                if matches!(self, Formula::Forall(..)) {
                    Formula::forall(z, nb)
                } else {
                    Formula::exists(z, nb)
                }
            }
            Formula::BoundedForall(w, b, body) | Formula::BoundedExists(w, b, body) => {
                let z = Var(*next);
                *next += 1;
                let nb = body.substitute_strict(*w, &Term::Var(z)).expect("fresh variable").rename_bound_with(next);
                if matches!(self, Formula::BoundedForall(..)) {
                    Formula::bforall(z, b.clone(), nb)
                } else {
                    Formula::bexists(z, b.clone(), nb)
                }
            }
        }
    }
}

/// Smallest variable not in `avoid`.
pub fn fresh_var(avoid: &BTreeSet<Var>) -> Var {
    let mut i = 0;
    while avoid.contains(&Var(i)) {
        i += 1;
    }
    Var(i)
}

fn term_alpha_eq(a: &Term, b: &Term, env: &[(Var, Var)]) -> bool {
    match (a, b) {
        (Term::Zero, Term::Zero) => true,
        (Term::Var(x), Term::Var(y)) => {
            for (p, q) in env.iter().rev() {
                if p == x || q == y {
                    return p == x && q == y;
                }
            }
            x == y
        }
        (Term::Succ(x), Term::Succ(y)) => term_alpha_eq(x, y, env),
        (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
            term_alpha_eq(a1, b1, env) && term_alpha_eq(a2, b2, env)
        }
        _ => false,
    }
}

fn alpha_eq_env(a: &Formula, b: &Formula, env: &mut Vec<(Var, Var)>) -> bool {
    use Formula::*;
    match (a, b) {
        (Eq(a1, a2), Eq(b1, b2)) | (Le(a1, a2), Le(b1, b2)) => term_alpha_eq(a1, b1, env) && term_alpha_eq(a2, b2, env),
        (Not(x), Not(y)) => alpha_eq_env(x, y, env),
        (And(a1, a2), And(b1, b2))
        | (Or(a1, a2), Or(b1, b2))
        | (Imp(a1, a2), Imp(b1, b2))
        | (Iff(a1, a2), Iff(b1, b2)) => alpha_eq_env(a1, b1, env) && alpha_eq_env(a2, b2, env),
        (Forall(x, p), Forall(y, q)) | (Exists(x, p), Exists(y, q)) => {
            env.push((*x, *y));
            let r = alpha_eq_env(p, q, env);
            env.pop();
            r
        }
        (BoundedForall(x, bx, p), BoundedForall(y, by, q)) | (BoundedExists(x, bx, p), BoundedExists(y, by, q)) => {
            if !term_alpha_eq(bx, by, env) {
                return false;
            }
            env.push((*x, *y));
            let r = alpha_eq_env(p, q, env);
            env.pop();
            r
        }
        _ => false,
    }
}

/// α-equivalence: equality up to consistent renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    alpha_eq_env(a, b, &mut Vec::new())
}

/// Canonical representative of the α-class: the binder at nesting depth
/// `d` becomes `v_(base + d)`, where `base` is one above the largest free
/// variable (and at least 1, so `v0` is always left free).
pub fn alpha_normalize(f: &Formula) -> Formula {
    let base = f.free_vars().iter().next_back().map_or(1, |v| v.0 + 1).max(1);
    normalize_at(f, base, &mut Vec::new())
}

fn rename_term(t: &Term, env: &[(Var, Var)]) -> Term {
    match t {
        Term::Zero => Term::Zero,
        Term::Var(v) => Term::Var(env.iter().rev().find(|(old, _)| old == v).map_or(*v, |(_, new)| *new)),
        Term::Succ(a) => Term::succ(rename_term(a, env)),
        Term::Add(l, r) => Term::add(rename_term(l, env), rename_term(r, env)),
        Term::Mul(l, r) => Term::mul(rename_term(l, env), rename_term(r, env)),
    }
}

fn normalize_at(f: &Formula, next: u32, env: &mut Vec<(Var, Var)>) -> Formula {
    match f {
        Formula::Eq(l, r) => Formula::Eq(rename_term(l, env), rename_term(r, env)),
        Formula::Le(l, r) => Formula::Le(rename_term(l, env), rename_term(r, env)),
        Formula::Not(a) => Formula::not(normalize_at(a, next, env)),
        Formula::And(a, b) => Formula::and(normalize_at(a, next, env), normalize_at(b, next, env)),
        Formula::Or(a, b) => Formula::or(normalize_at(a, next, env), normalize_at(b, next, env)),
        Formula::Imp(a, b) => Formula::imp(normalize_at(a, next, env), normalize_at(b, next, env)),
        Formula::Iff(a, b) => Formula::iff(normalize_at(a, next, env), normalize_at(b, next, env)),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            env.push((*v, Var(next)));
            let nb = normalize_at(body, next + 1, env);
            env.pop();
            if matches!(f, Formula::Forall(..)) {
                Formula::forall(Var(next), nb)
            } else {
                Formula::exists(Var(next), nb)
            }
        }
        Formula::BoundedForall(v, b, body) | Formula::BoundedExists(v, b, body) => {
            let nbound = rename_term(b, env);
            env.push((*v, Var(next)));
            let nb = normalize_at(body, next + 1, env);
            env.pop();
            if matches!(f, Formula::BoundedForall(..)) {
                Formula::bforall(Var(next), nbound, nb)
            } else {
                Formula::bexists(Var(next), nbound, nb)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RenameError {
    #[error("formula has free variables other than v0: {0:?}")]
    ExtraFreeVariables(Vec<Var>),
    #[error("formula length {length} is not below {bound}")]
    TooLong { length: u64, bound: u64 },
}

/// Produces an α-variant whose variables are all among `v0 .. v(j-1)`.
/// Formulas already in range are returned unchanged.
pub fn rename_to_first(f: &Formula, j: u64) -> Result<Formula, RenameError> {
    let extra: Vec<Var> = f.free_vars().into_iter().filter(|v| v.0 != 0).collect();
    if !extra.is_empty() {
        return Err(RenameError::ExtraFreeVariables(extra));
    }
    let length = formula_length(f);
    if length >= j {
        return Err(RenameError::TooLong { length, bound: j });
    }
    if f.all_vars().iter().all(|v| u64::from(v.0) < j) {
        return Ok(f.clone());
    }
    Ok(alpha_normalize(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Term {
        Term::var(i)
    }

    #[test]
    fn substitute_free_occurrence() {
        let f = Formula::eq(v(1), Term::Zero);
        assert_eq!(f.substitute(Var(1), &Term::numeral(2)), Formula::eq(Term::numeral(2), Term::Zero));
    }

    #[test]
    fn substitute_skips_bound() {
        let f = Formula::forall(Var(1), Formula::eq(v(1), v(1)));
        assert_eq!(f.substitute(Var(1), &Term::numeral(3)), f);
    }

    #[test]
    fn substitute_renames_on_capture() {
        // (E v1)(v1 = v0)[v0 := v1]
        let f = Formula::exists(Var(1), Formula::eq(v(1), v(0)));
        let g = f.substitute(Var(0), &v(1));
        match &g {
            Formula::Exists(z, body) => {
                assert_ne!(*z, Var(1));
                assert_eq!(**body, Formula::eq(Term::Var(*z), v(1)));
            }
            _ => panic!("shape"),
        }
        assert_eq!(f.substitute_strict(Var(0), &v(1)), None);
    }

    #[test]
    fn alpha_equivalence() {
        let a = Formula::exists(Var(5), Formula::eq(v(5), v(0)));
        let b = Formula::exists(Var(1), Formula::eq(v(1), v(0)));
        let c = Formula::exists(Var(0), Formula::eq(v(0), v(0)));
        assert!(alpha_eq(&a, &b));
        assert!(!alpha_eq(&a, &c));
    }

    #[test]
    fn rename_examples() {
        let f = Formula::exists(Var(5), Formula::eq(v(5), v(0)));
        assert_eq!(rename_to_first(&f, 4), Err(RenameError::TooLong { length: 9, bound: 4 }));
        assert_eq!(rename_to_first(&f, 10).unwrap(), f);
        let f = Formula::exists(Var(12), Formula::eq(v(12), v(0)));
        assert_eq!(rename_to_first(&f, 10).unwrap(), Formula::exists(Var(1), Formula::eq(v(1), v(0))));
        let g = Formula::forall(Var(1), Formula::le(v(1), v(0)));
        assert_eq!(rename_to_first(&g, 10).unwrap(), g);
        assert!(matches!(rename_to_first(&Formula::eq(v(1), v(0)), 10), Err(RenameError::ExtraFreeVariables(_))));
    }

    #[test]
    fn normal_form_shadowing() {
        let f = Formula::and(
            Formula::eq(v(0), Term::Zero),
            Formula::forall(Var(0), Formula::exists(Var(7), Formula::le(v(0), v(7)))),
        );
        let n = alpha_normalize(&f);
        assert!(alpha_eq(&f, &n));
        assert_eq!(
            n,
            Formula::and(
                Formula::eq(v(0), Term::Zero),
                Formula::forall(Var(1), Formula::exists(Var(2), Formula::le(v(1), v(2)))),
            )
        );
    }
}
