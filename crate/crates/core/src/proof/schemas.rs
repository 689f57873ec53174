//! Recognizers for the logical axiom schemas.

use crate::syntax::{Formula, Term, Var};

fn disjoint(t: &Term, bound: &[Var]) -> bool {
    bound.iter().all(|v| !t.contains_var(*v))
}

struct InstanceMatch<'a> {
    x: Var,
    bound: Vec<Var>,
    binding: Option<&'a Term>,
}

impl<'a> InstanceMatch<'a> {
    fn term(&mut self, a: &Term, b: &'a Term) -> bool {
        match (a, b) {
            (Term::Var(v), _) if *v == self.x && !self.bound.contains(v) => {
                if !disjoint(b, &self.bound) {
                    return false;
                }
                match self.binding {
                    Some(t) => t == b,
                    None => {
                        self.binding = Some(b);
                        true
                    }
                }
            }
            (Term::Zero, Term::Zero) => true,
            (Term::Var(v), Term::Var(w)) => v == w,
            (Term::Succ(a1), Term::Succ(b1)) => self.term(a1, b1),
            (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
                self.term(a1, b1) && self.term(a2, b2)
            }
            _ => false,
        }
    }

    fn formula(&mut self, a: &Formula, b: &'a Formula) -> bool {
        use Formula::*;
        match (a, b) {
            (Eq(a1, a2), Eq(b1, b2)) | (Le(a1, a2), Le(b1, b2)) => self.term(a1, b1) && self.term(a2, b2),
            (Not(x), Not(y)) => self.formula(x, y),
            (And(a1, a2), And(b1, b2))
            | (Or(a1, a2), Or(b1, b2))
            | (Imp(a1, a2), Imp(b1, b2))
            | (Iff(a1, a2), Iff(b1, b2)) => self.formula(a1, b1) && self.formula(a2, b2),
            (Forall(v, p), Forall(w, q)) | (Exists(v, p), Exists(w, q)) => {
                if v != w {
                    return false;
                }
                self.bound.push(*v);
                let r = self.formula(p, q);
                self.bound.pop();
                r
            }
            (BoundedForall(v, bv, p), BoundedForall(w, bw, q)) | (BoundedExists(v, bv, p), BoundedExists(w, bw, q)) => {
                if v != w || !self.term(bv, bw) {
                    return false;
                }
                self.bound.push(*v);
                let r = self.formula(p, q);
                self.bound.pop();
                r
            }
            _ => false,
        }
    }
}

/// If `psi` is `phi[x := t]` for some `t` free for `x` in `phi`, returns
/// `Some(t)`, or `Some(None)` when `x` has no free occurrence and the two
/// formulas coincide.
pub fn instance_term<'a>(phi: &Formula, x: Var, psi: &'a Formula) -> Option<Option<&'a Term>> {
    let mut m = InstanceMatch { x, bound: Vec::new(), binding: None };
    m.formula(phi, psi).then_some(m.binding)
}

/// `(A x) p -> p[x := t]`.
pub fn is_all_elim(f: &Formula) -> bool {
    let Formula::Imp(lhs, rhs) = f else { return false };
    let Formula::Forall(x, phi) = &**lhs else { return false };
    instance_term(phi, *x, rhs).is_some()
}

/// `(A x)(a -> b) -> (a -> (A x) b)` with `x` not free in `a`.
pub fn is_all_dist(f: &Formula) -> bool {
    let Formula::Imp(lhs, rhs) = f else { return false };
    let Formula::Forall(x, inner) = &**lhs else { return false };
    let Formula::Imp(a, b) = &**inner else { return false };
    let Formula::Imp(a2, qb) = &**rhs else { return false };
    let Formula::Forall(x2, b2) = &**qb else { return false };
    x == x2 && a == a2 && b == b2 && !a.has_free(*x)
}

/// `(E x) p <-> ~ (A x) ~ p`.
pub fn is_ex_def(f: &Formula) -> bool {
    let Formula::Iff(lhs, rhs) = f else { return false };
    let Formula::Exists(x, p) = &**lhs else { return false };
    let Formula::Not(n) = &**rhs else { return false };
    let Formula::Forall(x2, np) = &**n else { return false };
    let Formula::Not(p2) = &**np else { return false };
    x == x2 && p == p2
}

pub fn is_eq_refl(f: &Formula) -> bool {
    matches!(f, Formula::Eq(a, b) if a == b)
}

struct Replace<'a> {
    s: &'a Term,
    t: &'a Term,
    bound: Vec<Var>,
}

impl Replace<'_> {
    fn term(&self, a: &Term, b: &Term) -> bool {
        if a == b {
            return true;
        }
        if a == self.s && b == self.t && disjoint(self.s, &self.bound) && disjoint(self.t, &self.bound) {
            return true;
        }
        match (a, b) {
            (Term::Succ(a1), Term::Succ(b1)) => self.term(a1, b1),
            (Term::Add(a1, a2), Term::Add(b1, b2)) | (Term::Mul(a1, a2), Term::Mul(b1, b2)) => {
                self.term(a1, b1) && self.term(a2, b2)
            }
            _ => false,
        }
    }

    fn formula(&mut self, a: &Formula, b: &Formula) -> bool {
        use Formula::*;
        match (a, b) {
            (Eq(a1, a2), Eq(b1, b2)) | (Le(a1, a2), Le(b1, b2)) => self.term(a1, b1) && self.term(a2, b2),
            (Not(x), Not(y)) => self.formula(x, y),
            (And(a1, a2), And(b1, b2))
            | (Or(a1, a2), Or(b1, b2))
            | (Imp(a1, a2), Imp(b1, b2))
            | (Iff(a1, a2), Iff(b1, b2)) => self.formula(a1, b1) && self.formula(a2, b2),
            (Forall(v, p), Forall(w, q)) | (Exists(v, p), Exists(w, q)) => {
                if v != w {
                    return false;
                }
                self.bound.push(*v);
                let r = self.formula(p, q);
                self.bound.pop();
                r
            }
            (BoundedForall(v, bv, p), BoundedForall(w, bw, q)) | (BoundedExists(v, bv, p), BoundedExists(w, bw, q)) => {
                if v != w || !self.term(bv, bw) {
                    return false;
                }
                self.bound.push(*v);
                let r = self.formula(p, q);
                self.bound.pop();
                r
            }
            _ => false,
        }
    }
}

/// Whether `b` arises from `a` by replacing some free occurrences of `s`
/// with `t`, with no variable of `s` or `t` bound at a replaced position.
pub fn is_replacement(s: &Term, t: &Term, a: &Formula, b: &Formula) -> bool {
    Replace { s, t, bound: Vec::new() }.formula(a, b)
}

/// `s = t -> (p -> p')` with `p'` a replacement instance of `p`.
pub fn is_eq_subst(f: &Formula) -> bool {
    let Formula::Imp(eq, rest) = f else { return false };
    let Formula::Eq(s, t) = &**eq else { return false };
    let Formula::Imp(a, b) = &**rest else { return false };
    is_replacement(s, t, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn all_elim() {
        assert!(is_all_elim(&p("((A v0)(v0 + 0 = v0)) -> (s 0 + 0 = s 0)")));
        assert!(is_all_elim(&p("((A v0)(v0 = v1)) -> (v3 + v1 = v1)")));
        assert!(!is_all_elim(&p("((A v0)(v0 + 0 = v0)) -> (s 0 + 0 = 0)")));
        // capture: v1 would be bound
        assert!(!is_all_elim(&p("((A v0)((E v1)(v0 = s v1))) -> ((E v1)(v1 = s v1))")));
        // vacuous
        assert!(is_all_elim(&p("((A v0)(0 = 0)) -> (0 = 0)")));
        // bound occurrence untouched
        assert!(is_all_elim(&p("((A v0)((v0 = 0) & ((A v0)(v0 = v0)))) -> ((s 0 = 0) & ((A v0)(v0 = v0)))")));
        assert!(!is_all_elim(&p("((A v0)((A v0)(v0 = v0))) -> ((A v0)(s 0 = v0))")));
    }

    #[test]
    fn all_dist_and_ex_def() {
        assert!(is_all_dist(&p("((A v1)((0 = 0) -> (v1 = v1))) -> ((0 = 0) -> ((A v1)(v1 = v1)))")));
        assert!(!is_all_dist(&p("((A v1)((v1 = 0) -> (v1 = v1))) -> ((v1 = 0) -> ((A v1)(v1 = v1)))")));
        assert!(is_ex_def(&p("((E v1)(v1 = 0)) <-> (~ ((A v1)(~ (v1 = 0))))")));
        assert!(!is_ex_def(&p("((E v1)(v1 = 0)) <-> (~ ((A v2)(~ (v2 = 0))))")));
    }

    #[test]
    fn eq_subst() {
        assert!(is_eq_subst(&p("(v0 = v1) -> ((v0 = v0) -> (v1 = v0))")));
        assert!(is_eq_subst(&p("(v0 = v1) -> ((v0 = v0) -> (v1 = v1))")));
        assert!(is_eq_subst(&p("(v0 = s 0) -> ((v0 + v0 <= v2) -> (v0 + s 0 <= v2))")));
        assert!(!is_eq_subst(&p("(v0 = v1) -> ((v0 = v0) -> (v1 = v2))")));
        // replaced occurrence under a binder of v1 would be captured
        assert!(!is_eq_subst(&p("(v0 = v1) -> (((E v1)(v0 = v1)) -> ((E v1)(v1 = v1)))")));
        assert!(is_eq_subst(&p("(v0 = v1) -> (((E v2)(v0 = v2)) -> ((E v2)(v1 = v2)))")));
    }
}
