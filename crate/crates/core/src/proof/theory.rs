//! Theories: finite axiom lists, optionally backed by a truth oracle.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semantics::{eval_budgeted, eval_delta0_sentence, TruthVerdict};
use crate::syntax::{expand_bounded, is_delta0, render_formula, Formula, Term, Var};

/// An axiom source that accepts sentences by evaluating them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Oracle {
    /// Every sentence whose budgeted evaluation is `True`; a sound fragment
    /// of true arithmetic.
    BudgetedTruth { budget: u64 },
    /// Every true Δ0 sentence.
    Delta0Truth,
}

impl Oracle {
    pub fn accepts(&self, f: &Formula) -> bool {
        if !f.is_sentence() {
            return false;
        }
        match self {
            Oracle::BudgetedTruth { budget } => {
                matches!(eval_budgeted(f, *budget), Ok(e) if e.verdict == TruthVerdict::True)
            }
            Oracle::Delta0Truth => is_delta0(f) && eval_delta0_sentence(f) == Ok(true),
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Oracle::BudgetedTruth { budget } => write!(f, "budgeted-truth({budget})"),
            Oracle::Delta0Truth => write!(f, "delta0-truth"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("axiom {name} is not a sentence: {text}")]
    NotASentence { name: String, text: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    axioms: Vec<(String, Formula)>,
    oracles: Vec<Oracle>,
    /// Whether the theory is known to hold in the standard model.
    pub sound: bool,
}

fn v(i: u32) -> Term {
    Term::var(i)
}

/// The axioms Q1–Q8 of Robinson arithmetic as universal closures over
/// `v0, v1`.
pub fn q_axioms() -> Vec<(String, Formula)> {
    let x = || v(0);
    let y = || v(1);
    let all = |vars: &[u32], body: Formula| {
        let vars: Vec<Var> = vars.iter().map(|&i| Var(i)).collect();
        Formula::forall_all(&vars, body)
    };
    vec![
        ("Q1".into(), all(&[0, 1], Formula::imp(Formula::eq(Term::succ(x()), Term::succ(y())), Formula::eq(x(), y())))),
        ("Q2".into(), all(&[0], Formula::not(Formula::eq(Term::succ(x()), Term::Zero)))),
        (
            "Q3".into(),
            all(
                &[0],
                Formula::imp(
                    Formula::not(Formula::eq(x(), Term::Zero)),
                    Formula::exists(Var(1), Formula::eq(x(), Term::succ(y()))),
                ),
            ),
        ),
        ("Q4".into(), all(&[0], Formula::eq(Term::add(x(), Term::Zero), x()))),
        ("Q5".into(), all(&[0, 1], Formula::eq(Term::add(x(), Term::succ(y())), Term::succ(Term::add(x(), y()))))),
        ("Q6".into(), all(&[0], Formula::eq(Term::mul(x(), Term::Zero), Term::Zero))),
        ("Q7".into(), all(&[0, 1], Formula::eq(Term::mul(x(), Term::succ(y())), Term::add(Term::mul(x(), y()), x())))),
        (
            "Q8".into(),
            all(
                &[0, 1],
                Formula::iff(Formula::le(x(), y()), Formula::exists(Var(2), Formula::eq(Term::add(v(2), x()), y()))),
            ),
        ),
    ]
}

/// The named axiom of Q.
pub fn q_axiom(name: &str) -> Formula {
    q_axioms().into_iter().find(|(n, _)| n == name).map(|(_, f)| f).expect("Q axiom name")
}

impl Theory {
    /// A theory with the given (closed) axioms.
    pub fn new(name: impl Into<String>, axioms: Vec<(String, Formula)>, sound: bool) -> Result<Theory, TheoryError> {
        let mut out = Vec::with_capacity(axioms.len());
        for (n, f) in axioms {
            let f = expand_bounded(&f);
            if !f.is_sentence() {
                return Err(TheoryError::NotASentence { name: n, text: render_formula(&f) });
            }
            out.push((n, f));
        }
        Ok(Theory { name: name.into(), axioms: out, oracles: Vec::new(), sound })
    }

    /// Robinson arithmetic.
    pub fn q() -> Theory {
        Theory { name: "Q".into(), axioms: q_axioms(), oracles: Vec::new(), sound: true }
    }

    /// Q together with every sentence whose budgeted evaluation is `True`.
    pub fn true_arithmetic(budget: u64) -> Theory {
        Theory {
            name: format!("TA[{budget}]"),
            axioms: q_axioms(),
            oracles: vec![Oracle::BudgetedTruth { budget }],
            sound: true,
        }
    }

    /// The set of true Δ0 sentences: complete and decidable on Δ0 sentences.
    pub fn delta0_truth() -> Theory {
        Theory { name: "Th-Delta0".into(), axioms: Vec::new(), oracles: vec![Oracle::Delta0Truth], sound: true }
    }

    /// `self ∪ other`.
    pub fn union(&self, other: &Theory) -> Theory {
        let mut axioms = self.axioms.clone();
        for ax in &other.axioms {
            if !axioms.iter().any(|(_, f)| *f == ax.1) {
                axioms.push(ax.clone());
            }
        }
        let mut oracles = self.oracles.clone();
        for o in &other.oracles {
            if !oracles.contains(o) {
                oracles.push(o.clone());
            }
        }
        Theory { name: format!("{} + {}", self.name, other.name), axioms, oracles, sound: self.sound && other.sound }
    }

    /// `Q ∪ self`, the theory `T′` of the construction.
    pub fn with_q(&self) -> Theory {
        if self.extends_q() {
            return self.clone();
        }
        let mut t = Theory::q().union(self);
        t.name = format!("Q + {}", self.name);
        t
    }

    pub fn axioms(&self) -> &[(String, Formula)] {
        &self.axioms
    }

    pub fn oracles(&self) -> &[Oracle] {
        &self.oracles
    }

    /// Whether all of Q1–Q8 are axioms.
    pub fn extends_q(&self) -> bool {
        q_axioms().iter().all(|(_, q)| self.axioms.iter().any(|(_, f)| f == q))
    }

    pub fn axiom_name(&self, f: &Formula) -> Option<&str> {
        self.axioms.iter().find(|(_, a)| a == f).map(|(n, _)| n.as_str())
    }

    /// Whether `f` may be used as an axiom of this theory.
    pub fn accepts(&self, f: &Formula) -> bool {
        self.axiom_name(f).is_some() || self.oracles.iter().any(|o| o.accepts(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn q_shape() {
        let q = Theory::q();
        assert_eq!(q.axioms().len(), 8);
        assert!(q.extends_q());
        assert!(q.axioms().iter().all(|(_, f)| f.is_sentence()));
        assert_eq!(render_formula(&q_axiom("Q4")), "( A v0 ) ( v0 + 0 = v0 )");
        assert_eq!(q.axiom_name(&parse_formula("(A v0)(v0 * 0 = 0)").unwrap()), Some("Q6"));
        assert!(!q.accepts(&parse_formula("0 = 0").unwrap()));
    }

    #[test]
    fn oracles_and_union() {
        let d = Theory::delta0_truth();
        assert!(d.accepts(&parse_formula("s 0 + s 0 = s s 0").unwrap()));
        assert!(!d.accepts(&parse_formula("s 0 = 0").unwrap()));
        assert!(!d.accepts(&parse_formula("(E v1)(v1 = 0)").unwrap()));
        assert!(!d.extends_q());
        let t = d.with_q();
        assert!(t.extends_q());
        assert!(t.accepts(&parse_formula("0 = 0").unwrap()));
        let ta = Theory::true_arithmetic(8);
        assert!(ta.accepts(&parse_formula("(E v1)(v1 + v1 = s s 0)").unwrap()));
        assert!(!ta.accepts(&parse_formula("v1 = v1").unwrap()));
        assert!(Theory::new("bad", vec![("A".into(), parse_formula("v0 = 0").unwrap())], false).is_err());
    }
}
