//! Terms and formulas of the first-order language of arithmetic with
//! signature `0, s, +, *, =, <=`.

use std::fmt;

/// A variable `v_i`. Every variable counts as a single symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    Succ(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    Var(Var),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Le(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
    /// `(A v < bound) body`; surface abbreviation only.
    BoundedForall(Var, Term, Box<Formula>),
    /// `(E v < bound) body`; surface abbreviation only.
    BoundedExists(Var, Term, Box<Formula>),
}

/// Either a term or a formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Term(Term),
    Formula(Formula),
}

#[allow(clippy::should_implement_trait)]
impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(Var(i))
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Box::new(t))
    }

    pub fn add(l: Term, r: Term) -> Term {
        Term::Add(Box::new(l), Box::new(r))
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Box::new(l), Box::new(r))
    }

    /// The numeral `s ... s 0` with `n` successors.
    pub fn numeral(n: u64) -> Term {
        Term::succ_n(n, Term::Zero)
    }

    /// `s^n(t)`.
    pub fn succ_n(n: u64, t: Term) -> Term {
        (0..n).fold(t, |acc, _| Term::succ(acc))
    }

    /// The value of this term if it is a numeral.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut cur = self;
        loop {
            match cur {
                Term::Zero => return Some(n),
                Term::Succ(a) => {
                    n += 1;
                    cur = a;
                }
                _ => return None,
            }
        }
    }

    /// Splits `s^n(core)` into `(n, core)` with `core` not a successor.
    pub fn peel_succ(&self) -> (u64, &Term) {
        let mut n = 0;
        let mut cur = self;
        while let Term::Succ(a) = cur {
            n += 1;
            cur = a;
        }
        (n, cur)
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, Term::Add(..) | Term::Mul(..))
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Var(_) => false,
            Term::Succ(a) => a.is_closed(),
            Term::Add(l, r) | Term::Mul(l, r) => l.is_closed() && r.is_closed(),
        }
    }
}

#[allow(clippy::should_implement_trait)]
impl Formula {
    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Eq(l, r)
    }

    pub fn le(l: Term, r: Term) -> Formula {
        Formula::Le(l, r)
    }

    /// `l < r`, which abbreviates `s l <= r`.
    pub fn lt(l: Term, r: Term) -> Formula {
        Formula::Le(Term::succ(l), r)
    }

    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Box::new(body))
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Box::new(body))
    }

    pub fn bforall(v: Var, bound: Term, body: Formula) -> Formula {
        Formula::BoundedForall(v, bound, Box::new(body))
    }

    pub fn bexists(v: Var, bound: Term, body: Formula) -> Formula {
        Formula::BoundedExists(v, bound, Box::new(body))
    }

    /// Right-nested disjunction `d0 | (d1 | (...))`. Panics on an empty list.
    pub fn disjunction(mut items: Vec<Formula>) -> Formula {
        let mut acc = items.pop().expect("empty disjunction");
        while let Some(d) = items.pop() {
            acc = Formula::or(d, acc);
        }
        acc
    }

    /// Universal closure over the given variables, outermost first.
    pub fn forall_all(vars: &[Var], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |acc, v| Formula::forall(*v, acc))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Eq(..) | Formula::Le(..))
    }
}

impl From<Term> for Expr {
    fn from(t: Term) -> Self {
        Expr::Term(t)
    }
}

impl From<Formula> for Expr {
    fn from(f: Formula) -> Self {
        Expr::Formula(f)
    }
}

impl Expr {
    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            Expr::Formula(f) => Some(f),
            Expr::Term(_) => None,
        }
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            Expr::Term(t) => Some(t),
            Expr::Formula(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numerals() {
        assert_eq!(Term::numeral(0), Term::Zero);
        assert_eq!(Term::numeral(2), Term::succ(Term::succ(Term::Zero)));
        assert_eq!(Term::numeral(7).as_numeral(), Some(7));
        assert_eq!(Term::succ(Term::var(0)).as_numeral(), None);
        let t = Term::succ_n(3, Term::var(4));
        assert_eq!(t.peel_succ(), (3, &Term::var(4)));
    }

    #[test]
    fn disjunction_nests_right() {
        let a = Formula::eq(Term::Zero, Term::Zero);
        let b = Formula::le(Term::Zero, Term::Zero);
        let c = Formula::eq(Term::var(0), Term::Zero);
        let d = Formula::disjunction(vec![a.clone(), b.clone(), c.clone()]);
        assert_eq!(d, Formula::or(a, Formula::or(b, c)));
    }
}
