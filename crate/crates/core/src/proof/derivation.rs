//! Derivation objects and their JSON-lines file format.
//!
//! One step per line: `{"i":n,"f":"<canonical text>","rule":"mp","prem":[a,b]}`.
//! Indices are 0-based; `mp` premises are `[minor, major]` where the major
//! premise is `minor -> conclusion`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{parse_formula, render_formula, Formula};

/// How a step is justified.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// A propositional tautology.
    Taut,
    /// `(A x) p -> p[x := t]`, `t` free for `x` in `p`.
    AllElim,
    /// `(A x)(a -> b) -> (a -> (A x) b)`, `x` not free in `a`.
    AllDist,
    /// `(E x) p <-> ~ (A x) ~ p`.
    ExDef,
    /// `t = t`.
    EqRefl,
    /// `s = t -> (p -> p')` where `p'` replaces some free occurrences of
    /// `s` in `p` by `t`.
    EqSubst,
    /// An axiom of the theory, optionally labelled.
    Theory(Option<String>),
    /// Modus ponens from `[minor, major]`.
    Mp(usize, usize),
    /// Generalization of an earlier step.
    Gen(usize),
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Taut => "taut",
            Rule::AllElim => "all-elim",
            Rule::AllDist => "all-dist",
            Rule::ExDef => "ex-def",
            Rule::EqRefl => "eq-refl",
            Rule::EqSubst => "eq-subst",
            Rule::Theory(_) => "theory",
            Rule::Mp(..) => "mp",
            Rule::Gen(_) => "gen",
        }
    }

    pub fn premises(&self) -> Vec<usize> {
        match self {
            Rule::Mp(a, b) => vec![*a, *b],
            Rule::Gen(a) => vec![*a],
            _ => Vec::new(),
        }
    }

    pub fn is_axiom(&self) -> bool {
        self.premises().is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub rule: Rule,
}

/// A sequence of justified steps; the last step is the conclusion.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn new(steps: Vec<Step>) -> Self {
        Derivation { steps }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let line = StepLine {
                i,
                f: render_formula(&s.formula),
                rule: s.rule.name().to_string(),
                prem: s.rule.premises(),
                ax: match &s.rule {
                    Rule::Theory(name) => name.clone(),
                    _ => None,
                },
            };
            out.push_str(&serde_json::to_string(&line).expect("step serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Derivation, ProofFileError> {
        let mut steps = Vec::new();
        for (lineno, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let line_no = lineno + 1;
            let s: StepLine =
                serde_json::from_str(line).map_err(|e| ProofFileError { line: line_no, reason: e.to_string() })?;
            if s.i != steps.len() {
                return Err(ProofFileError {
                    line: line_no,
                    reason: format!("step index {} out of sequence (expected {})", s.i, steps.len()),
                });
            }
            let formula = parse_formula(&s.f).map_err(|e| ProofFileError { line: line_no, reason: e.to_string() })?;
            let arity = |n: usize| {
                if s.prem.len() == n {
                    Ok(())
                } else {
                    Err(ProofFileError {
                        line: line_no,
                        reason: format!("rule `{}` takes {n} premises, got {}", s.rule, s.prem.len()),
                    })
                }
            };
            let rule = match s.rule.as_str() {
                "taut" => Rule::Taut,
                "all-elim" => Rule::AllElim,
                "all-dist" => Rule::AllDist,
                "ex-def" => Rule::ExDef,
                "eq-refl" => Rule::EqRefl,
                "eq-subst" => Rule::EqSubst,
                "theory" => Rule::Theory(s.ax.clone()),
                "mp" => {
                    arity(2)?;
                    Rule::Mp(s.prem[0], s.prem[1])
                }
                "gen" => {
                    arity(1)?;
                    Rule::Gen(s.prem[0])
                }
                other => {
                    return Err(ProofFileError { line: line_no, reason: format!("unknown rule `{other}`") });
                }
            };
            if rule.is_axiom() {
                arity(0)?;
            }
            steps.push(Step { formula, rule });
        }
        Ok(Derivation { steps })
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            let prem = s.rule.premises();
            let label = match &s.rule {
                Rule::Theory(Some(name)) => format!("theory {name}"),
                r if !prem.is_empty() => format!("{} {:?}", r.name(), prem),
                r => r.name().to_string(),
            };
            writeln!(f, "{i:>4}. {}    [{label}]", render_formula(&s.formula))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct StepLine {
    i: usize,
    f: String,
    rule: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    prem: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ax: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("proof file line {line}: {reason}")]
pub struct ProofFileError {
    pub line: usize,
    pub reason: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_round_trip() {
        let a = parse_formula("0 = 0").unwrap();
        let d = Derivation::new(vec![
            Step { formula: a.clone(), rule: Rule::EqRefl },
            Step { formula: Formula::imp(a.clone(), a.clone()), rule: Rule::Taut },
            Step { formula: a.clone(), rule: Rule::Mp(0, 1) },
            Step { formula: parse_formula("(A v0)(v0 + 0 = v0)").unwrap(), rule: Rule::Theory(Some("Q4".into())) },
        ]);
        let text = d.to_jsonl();
        assert!(text.starts_with(r#"{"i":0,"f":"0 = 0","rule":"eq-refl"}"#));
        assert!(text.contains(r#""rule":"mp","prem":[0,1]"#));
        assert_eq!(Derivation::from_jsonl(&text).unwrap(), d);
    }

    #[test]
    fn jsonl_errors() {
        let bad = r#"{"i":1,"f":"0 = 0","rule":"eq-refl"}"#;
        assert_eq!(Derivation::from_jsonl(bad).unwrap_err().line, 1);
        let bad = r#"{"i":0,"f":"0 = 0","rule":"mp","prem":[0]}"#;
        assert!(Derivation::from_jsonl(bad).is_err());
        let bad = r#"{"i":0,"f":"0 = ","rule":"taut"}"#;
        assert!(Derivation::from_jsonl(bad).is_err());
    }
}
