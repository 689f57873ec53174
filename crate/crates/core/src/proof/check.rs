//! The proof checker.

use thiserror::Error;

use super::derivation::{Derivation, Rule};
use super::schemas;
use super::taut::is_tautology;
use super::theory::Theory;
use crate::syntax::{expand_bounded, has_bounded_sugar, render_formula, Formula};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("step {step}: {reason}")]
pub struct InvalidStep {
    pub step: usize,
    pub reason: String,
}

fn normalized(f: &Formula) -> std::borrow::Cow<'_, Formula> {
    if has_bounded_sugar(f) {
        std::borrow::Cow::Owned(expand_bounded(f))
    } else {
        std::borrow::Cow::Borrowed(f)
    }
}

/// Checks one step against the (already checked) formulas before it.
pub fn check_step(f: &Formula, rule: &Rule, prior: &[Formula], theory: &Theory) -> Result<(), String> {
    let premise = |i: usize| prior.get(i).ok_or_else(|| format!("premise {i} does not precede this step"));
    let ok = match rule {
        Rule::Taut => is_tautology(f),
        Rule::AllElim => schemas::is_all_elim(f),
        Rule::AllDist => schemas::is_all_dist(f),
        Rule::ExDef => schemas::is_ex_def(f),
        Rule::EqRefl => schemas::is_eq_refl(f),
        Rule::EqSubst => schemas::is_eq_subst(f),
        Rule::Theory(name) => {
            if let Some(name) = name {
                if let Some(actual) = theory.axiom_name(f) {
                    if actual != name {
                        return Err(format!("axiom is {actual}, labelled {name}"));
                    }
                }
            }
            if !theory.accepts(f) {
                return Err(format!("not an axiom of {}", theory.name));
            }
            true
        }
        Rule::Mp(a, b) => {
            let (pa, pb) = (premise(*a)?, premise(*b)?);
            match pb {
                Formula::Imp(x, y) if **x == *pa && **y == *f => true,
                _ => {
                    return Err(format!(
                        "modus ponens mismatch: step {b} is not `{} -> {}`",
                        render_formula(pa),
                        render_formula(f)
                    ))
                }
            }
        }
        Rule::Gen(a) => {
            let pa = premise(*a)?;
            matches!(f, Formula::Forall(_, body) if **body == *pa)
        }
    };
    if ok {
        Ok(())
    } else {
        Err(format!("not a valid {} step: {}", rule.name(), render_formula(f)))
    }
}

/// Validates every step of `d` relative to `theory`.
pub fn check(d: &Derivation, theory: &Theory) -> Result<(), InvalidStep> {
    if d.steps.is_empty() {
        return Err(InvalidStep { step: 0, reason: "empty derivation".into() });
    }
    let mut prior: Vec<Formula> = Vec::with_capacity(d.steps.len());
    for (i, s) in d.steps.iter().enumerate() {
        let f = normalized(&s.formula).into_owned();
        check_step(&f, &s.rule, &prior, theory).map_err(|reason| InvalidStep { step: i, reason })?;
        prior.push(f);
    }
    Ok(())
}

/// Checks `d` and that its conclusion is `goal`.
pub fn check_proves(d: &Derivation, theory: &Theory, goal: &Formula) -> Result<(), InvalidStep> {
    check(d, theory)?;
    let concl = d.conclusion().expect("checked derivation is non-empty");
    if *normalized(concl) != *normalized(goal) {
        return Err(InvalidStep {
            step: d.len() - 1,
            reason: format!("concludes `{}`, expected `{}`", render_formula(concl), render_formula(goal)),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::derivation::Step;
    use crate::proof::theory::q_axiom;
    use crate::syntax::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn one_step_axiom() {
        let d = Derivation::new(vec![Step { formula: q_axiom("Q4"), rule: Rule::Theory(Some("Q4".into())) }]);
        assert_eq!(check(&d, &Theory::q()), Ok(()));
        let d = Derivation::new(vec![Step { formula: q_axiom("Q4"), rule: Rule::Theory(Some("Q5".into())) }]);
        assert!(check(&d, &Theory::q()).is_err());
    }

    #[test]
    fn induction_is_not_q() {
        let ind = p("((0 = 0) & ((A v0)((v0 = v0) -> (s v0 = s v0)))) -> ((A v0)(v0 = v0))");
        let d = Derivation::new(vec![Step { formula: ind, rule: Rule::Theory(Some("Ind".into())) }]);
        let err = check(&d, &Theory::q()).unwrap_err();
        assert_eq!(err.step, 0);
        assert!(err.reason.contains("not an axiom"));
    }

    #[test]
    fn instance_by_mp() {
        let q4 = q_axiom("Q4");
        let inst = p("s 0 + 0 = s 0");
        let d = Derivation::new(vec![
            Step { formula: q4.clone(), rule: Rule::Theory(None) },
            Step { formula: Formula::imp(q4, inst.clone()), rule: Rule::AllElim },
            Step { formula: inst.clone(), rule: Rule::Mp(0, 1) },
            Step { formula: Formula::forall(crate::syntax::Var(3), inst.clone()), rule: Rule::Gen(2) },
        ]);
        assert_eq!(check(&d, &Theory::q()), Ok(()));
        assert!(check_proves(&d, &Theory::q(), &inst).is_err());

        let mut bad = d.clone();
        bad.steps[2].rule = Rule::Mp(1, 0);
        assert_eq!(check(&bad, &Theory::q()).unwrap_err().step, 2);
        let mut bad = d;
        bad.steps[2].rule = Rule::Mp(0, 5);
        assert!(check(&bad, &Theory::q()).unwrap_err().reason.contains("does not precede"));
    }

    #[test]
    fn rejects_non_tautology() {
        let d = Derivation::new(vec![Step { formula: p("(v0 = 0) -> (0 = v0)"), rule: Rule::Taut }]);
        assert!(check(&d, &Theory::q()).is_err());
        assert!(check(&Derivation::default(), &Theory::q()).is_err());
    }
}
