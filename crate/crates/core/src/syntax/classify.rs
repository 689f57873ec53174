//! Bounded-quantifier expansion and the Δ0 / Σ1 / Σ classification.

use serde::{Deserialize, Serialize};

use super::ast::{Formula, Term, Var};
use super::subst::fresh_var;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SyntacticClass {
    Delta0,
    Sigma1,
    SigmaSyntactic,
    Other,
}

impl SyntacticClass {
    /// Whether the class lies inside the syntactic Σ closure.
    pub fn is_sigma(self) -> bool {
        !matches!(self, SyntacticClass::Other)
    }
}

/// The binder and body to use when expanding `(Q v < b) body`. The bound is
/// outside the quantifier's scope, so when it mentions `v` the bound
/// variable is renamed to keep the expansion from capturing it.
fn expansion_binder(v: Var, b: &Term, body: &Formula) -> (Var, Formula) {
    if !b.contains_var(v) {
        return (v, body.clone());
    }
    let mut avoid = body.all_vars();
    b.vars_into(&mut avoid);
    avoid.insert(v);
    let z = fresh_var(&avoid);
    (z, body.substitute(v, &Term::Var(z)))
}

/// Expands the outermost node if it is a bounded quantifier.
pub(crate) fn expand_bounded_shallow(f: &Formula) -> Option<Formula> {
    match f {
        Formula::BoundedForall(v, b, body) => {
            let (z, body) = expansion_binder(*v, b, body);
            Some(Formula::forall(z, Formula::imp(Formula::lt(Term::Var(z), b.clone()), body)))
        }
        Formula::BoundedExists(v, b, body) => {
            let (z, body) = expansion_binder(*v, b, body);
            Some(Formula::exists(z, Formula::and(Formula::lt(Term::Var(z), b.clone()), body)))
        }
        _ => None,
    }
}

/// Replaces `(A v < b) m` by `(A v)((s v <= b) -> m)` and `(E v < b) m` by
/// `(E v)((s v <= b) & m)` throughout. Idempotent.
pub fn expand_bounded(f: &Formula) -> Formula {
    match f {
        Formula::Eq(..) | Formula::Le(..) => f.clone(),
        Formula::Not(a) => Formula::not(expand_bounded(a)),
        Formula::And(a, b) => Formula::and(expand_bounded(a), expand_bounded(b)),
        Formula::Or(a, b) => Formula::or(expand_bounded(a), expand_bounded(b)),
        Formula::Imp(a, b) => Formula::imp(expand_bounded(a), expand_bounded(b)),
        Formula::Iff(a, b) => Formula::iff(expand_bounded(a), expand_bounded(b)),
        Formula::Forall(v, body) => Formula::forall(*v, expand_bounded(body)),
        Formula::Exists(v, body) => Formula::exists(*v, expand_bounded(body)),
        Formula::BoundedForall(..) | Formula::BoundedExists(..) => {
            expand_bounded(&expand_bounded_shallow(f).expect("bounded quantifier"))
        }
    }
}

pub fn has_bounded_sugar(f: &Formula) -> bool {
    match f {
        Formula::Eq(..) | Formula::Le(..) => false,
        Formula::Not(a) => has_bounded_sugar(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            has_bounded_sugar(a) || has_bounded_sugar(b)
        }
        Formula::Forall(_, body) | Formula::Exists(_, body) => has_bounded_sugar(body),
        Formula::BoundedForall(..) | Formula::BoundedExists(..) => true,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Forall,
    Exists,
}

/// A quantifier whose range is cut off by a term not mentioning the
/// quantified variable: `v < bound` (strict) or `v <= bound`.
#[derive(Clone, Copy, Debug)]
pub struct BoundedView<'a> {
    pub quantifier: Quantifier,
    pub var: Var,
    pub bound: &'a Term,
    pub strict: bool,
    pub body: &'a Formula,
}

/// Recognizes a bounded quantifier, either as surface sugar or in one of
/// the expanded shapes `(A v)((s v <= b) -> m)`, `(A v)((v <= b) -> m)`,
/// `(E v)((s v <= b) & m)`, `(E v)((v <= b) & m)`.
pub fn bounded_view(f: &Formula) -> Option<BoundedView<'_>> {
    match f {
        Formula::BoundedForall(v, b, body) | Formula::BoundedExists(v, b, body) => Some(BoundedView {
            quantifier: if matches!(f, Formula::BoundedForall(..)) { Quantifier::Forall } else { Quantifier::Exists },
            var: *v,
            bound: b,
            strict: true,
            body,
        }),
        Formula::Forall(v, inner) | Formula::Exists(v, inner) => {
            let (guard, body, quantifier) = match (f, &**inner) {
                (Formula::Forall(..), Formula::Imp(g, m)) => (g, m, Quantifier::Forall),
                (Formula::Exists(..), Formula::And(g, m)) => (g, m, Quantifier::Exists),
                _ => return None,
            };
            let Formula::Le(lhs, bound) = &**guard else {
                return None;
            };
            if bound.contains_var(*v) {
                return None;
            }
            let strict = match lhs {
                Term::Var(w) if w == v => false,
                Term::Succ(a) if **a == Term::Var(*v) => true,
                _ => return None,
            };
            Some(BoundedView { quantifier, var: *v, bound, strict, body })
        }
        _ => None,
    }
}

/// All quantifiers bounded.
pub fn is_delta0(f: &Formula) -> bool {
    if let Some(bv) = bounded_view(f) {
        return is_delta0(bv.body);
    }
    match f {
        Formula::Eq(..) | Formula::Le(..) => true,
        Formula::Not(a) => is_delta0(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) | Formula::Iff(a, b) => {
            is_delta0(a) && is_delta0(b)
        }
        _ => false,
    }
}

/// Membership in the smallest class containing Δ0 and closed under `&`,
/// `|`, existential quantification and bounded universal quantification.
pub fn is_sigma(f: &Formula) -> bool {
    if is_delta0(f) {
        return true;
    }
    if let Some(bv) = bounded_view(f) {
        if bv.quantifier == Quantifier::Forall {
            return is_sigma(bv.body);
        }
    }
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => is_sigma(a) && is_sigma(b),
        Formula::Exists(_, body) => is_sigma(body),
        _ => false,
    }
}

pub fn classify(f: &Formula) -> SyntacticClass {
    if is_delta0(f) {
        SyntacticClass::Delta0
    } else if matches!(f, Formula::Exists(_, body) if is_delta0(body)) {
        SyntacticClass::Sigma1
    } else if is_sigma(f) {
        SyntacticClass::SigmaSyntactic
    } else {
        SyntacticClass::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn bound_mentioning_its_variable() {
        let f = Formula::bforall(Var(0), Term::var(0), p("v0 = 0"));
        assert_eq!(f.free_vars().into_iter().collect::<Vec<_>>(), vec![Var(0)]);
        let e = expand_bounded(&f);
        assert_eq!(e, p("(A v1)((s v1 <= v0) -> (v1 = 0))"));
        assert_eq!(e.free_vars(), f.free_vars());
        assert!(is_delta0(&f));
    }

    #[test]
    fn examples() {
        assert_eq!(classify(&p("0 = 0")), SyntacticClass::Delta0);
        assert_eq!(classify(&p("(E v1)(v1 = v0)")), SyntacticClass::Sigma1);
        assert_eq!(classify(&p("(A v1)(v1 = v1)")), SyntacticClass::Other);
        assert_eq!(classify(&p("(A v2 < s s 0)(v2 <= s 0)")), SyntacticClass::Delta0);
        assert_eq!(classify(&p("(A v2 < s s 0)((E v3)(v3 + v2 = s s 0))")), SyntacticClass::SigmaSyntactic);
        assert_eq!(classify(&p("((E v1)(v1 = 0)) & ((E v2)(v2 = s 0))")), SyntacticClass::SigmaSyntactic);
        assert_eq!(classify(&p("~ ((E v1)(v1 = 0))")), SyntacticClass::Other);
    }

    #[test]
    fn expansion_shape() {
        let phi = p("v2 = v1");
        let f = Formula::bforall(Var(2), Term::var(0), phi.clone());
        assert_eq!(
            expand_bounded(&f),
            Formula::forall(Var(2), Formula::imp(Formula::le(Term::succ(Term::var(2)), Term::var(0)), phi.clone()))
        );
        assert_eq!(expand_bounded(&phi), phi);
        let e = expand_bounded(&f);
        assert_eq!(expand_bounded(&e), e);
        assert!(bounded_view(&e).is_some());
    }

    #[test]
    fn expanded_bounded_still_delta0() {
        let f = expand_bounded(&p("(E v3 < v0)((A v4 < v3)(v4 <= v3))"));
        assert!(is_delta0(&f));
        // bound mentioning the quantified variable is not a bound
        let g = p("(A v1)((s v1 <= v1) -> (0 = 0))");
        assert!(!is_delta0(&g));
    }
}
