//! Incremental construction of derivations, with hypothetical reasoning
//! compiled away by the deduction theorem.
//!
//! Every step records the depth of the innermost hypothesis it depends on.
//! [`ProofBuilder::discharge`] rewrites the steps that depend on the top
//! hypothesis `h` into steps proving `h -> p`, using only tautologies,
//! modus ponens, generalization and the distribution schema.

use std::collections::{BTreeSet, HashMap};

use super::derivation::{Derivation, Rule, Step};
use super::schemas;
use super::taut::is_tautology;
use super::theory::Theory;
use super::ProofError;
use crate::syntax::{render_formula, Formula, Term, Var};

#[derive(Clone, Debug)]
enum Just {
    Rule(Rule),
    Hyp,
}

#[derive(Clone, Debug)]
struct BStep {
    formula: Formula,
    just: Just,
    level: usize,
}

#[derive(Clone, Debug)]
struct Frame {
    hyp: Formula,
}

pub struct ProofBuilder {
    theory: Theory,
    steps: Vec<BStep>,
    index: HashMap<Formula, usize>,
    frames: Vec<Frame>,
    next_var: u32,
    cache: HashMap<String, usize>,
}

fn internal(msg: impl Into<String>) -> ProofError {
    ProofError::Internal(msg.into())
}

impl ProofBuilder {
    pub fn new(theory: &Theory) -> Self {
        ProofBuilder {
            theory: theory.clone(),
            steps: Vec::new(),
            index: HashMap::new(),
            frames: Vec::new(),
            next_var: 0,
            cache: HashMap::new(),
        }
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    /// Keeps [`ProofBuilder::fresh`] away from the variables of `f`.
    pub fn reserve_vars(&mut self, f: &Formula) {
        if let Some(m) = f.max_var() {
            self.next_var = self.next_var.max(m + 1);
        }
    }

    pub fn reserve_term(&mut self, t: &Term) {
        if let Some(m) = t.max_var() {
            self.next_var = self.next_var.max(m + 1);
        }
    }

    /// A variable not used anywhere in the derivation so far.
    pub fn fresh(&mut self) -> Var {
        let v = Var(self.next_var.max(3));
        self.next_var = v.0 + 1;
        v
    }

    pub fn formula(&self, i: usize) -> &Formula {
        &self.steps[i].formula
    }

    pub fn level(&self, i: usize) -> usize {
        self.steps[i].level
    }

    pub fn depth(&self) -> usize {
        self.frames.len()
    }

    pub fn find(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    fn push(&mut self, formula: Formula, just: Just, level: usize) -> usize {
        if let Some(&i) = self.index.get(&formula) {
            if self.steps[i].level <= level {
                return i;
            }
        }
        for v in formula.all_vars() {
            self.next_var = self.next_var.max(v.0 + 1);
        }
        let i = self.steps.len();
        self.index.insert(formula.clone(), i);
        self.steps.push(BStep { formula, just, level });
        i
    }

    fn axiom_step(&mut self, f: Formula, rule: Rule) -> usize {
        self.push(f, Just::Rule(rule), 0)
    }

    pub fn taut(&mut self, f: Formula) -> Result<usize, ProofError> {
        if !is_tautology(&f) {
            return Err(internal(format!("not a tautology: {}", render_formula(&f))));
        }
        Ok(self.axiom_step(f, Rule::Taut))
    }

    /// `(A x) p -> p[x := t]`.
    pub fn all_elim(&mut self, forall: &Formula, t: &Term) -> Result<usize, ProofError> {
        let Formula::Forall(x, body) = forall else {
            return Err(internal(format!("all-elim on non-universal {}", render_formula(forall))));
        };
        let inst = body
            .substitute_strict(*x, t)
            .ok_or_else(|| internal(format!("term not free for {x} in {}", render_formula(forall))))?;
        Ok(self.axiom_step(Formula::imp(forall.clone(), inst), Rule::AllElim))
    }

    /// `(A x)(a -> b) -> (a -> (A x) b)`.
    pub fn all_dist(&mut self, x: Var, a: &Formula, b: &Formula) -> Result<usize, ProofError> {
        if a.has_free(x) {
            return Err(internal(format!("{x} free in {}", render_formula(a))));
        }
        let f = Formula::imp(
            Formula::forall(x, Formula::imp(a.clone(), b.clone())),
            Formula::imp(a.clone(), Formula::forall(x, b.clone())),
        );
        Ok(self.axiom_step(f, Rule::AllDist))
    }

    /// `(E x) p <-> ~ (A x) ~ p`.
    pub fn ex_def(&mut self, x: Var, p: &Formula) -> usize {
        let f = Formula::iff(Formula::exists(x, p.clone()), Formula::not(Formula::forall(x, Formula::not(p.clone()))));
        self.axiom_step(f, Rule::ExDef)
    }

    pub fn eq_refl(&mut self, t: &Term) -> usize {
        self.axiom_step(Formula::eq(t.clone(), t.clone()), Rule::EqRefl)
    }

    /// `s = t -> (a -> b)`, `b` a replacement instance of `a`.
    pub fn eq_subst(&mut self, s: &Term, t: &Term, a: &Formula, b: &Formula) -> Result<usize, ProofError> {
        if !schemas::is_replacement(s, t, a, b) {
            return Err(internal(format!(
                "`{}` is not a replacement instance of `{}`",
                render_formula(b),
                render_formula(a)
            )));
        }
        let f = Formula::imp(Formula::eq(s.clone(), t.clone()), Formula::imp(a.clone(), b.clone()));
        Ok(self.axiom_step(f, Rule::EqSubst))
    }

    /// An axiom of the theory.
    pub fn axiom(&mut self, f: &Formula) -> Result<usize, ProofError> {
        if !self.theory.accepts(f) {
            return Err(ProofError::Precondition(format!(
                "not an axiom of {}: {}",
                self.theory.name,
                render_formula(f)
            )));
        }
        let name = self.theory.axiom_name(f).map(str::to_string);
        Ok(self.axiom_step(f.clone(), Rule::Theory(name)))
    }

    /// From `a` and `a -> b`, `b`.
    pub fn mp(&mut self, minor: usize, major: usize) -> Result<usize, ProofError> {
        let concl = match &self.steps[major].formula {
            Formula::Imp(x, y) if **x == self.steps[minor].formula => (**y).clone(),
            other => {
                return Err(internal(format!(
                    "modus ponens mismatch: `{}` with `{}`",
                    render_formula(&self.steps[minor].formula),
                    render_formula(other)
                )))
            }
        };
        let level = self.steps[minor].level.max(self.steps[major].level);
        Ok(self.push(concl, Just::Rule(Rule::Mp(minor, major)), level))
    }

    /// From `p`, `(A x) p`. Refused when `x` is free in a hypothesis that
    /// `p` may depend on.
    pub fn gen(&mut self, i: usize, x: Var) -> Result<usize, ProofError> {
        let level = self.steps[i].level;
        if let Some(fr) = self.frames[..level].iter().find(|fr| fr.hyp.has_free(x)) {
            return Err(internal(format!("cannot generalize {x}: free in hypothesis {}", render_formula(&fr.hyp))));
        }
        let f = Formula::forall(x, self.steps[i].formula.clone());
        Ok(self.push(f, Just::Rule(Rule::Gen(i)), level))
    }

    /// Opens a hypothetical context with hypothesis `h`.
    pub fn assume(&mut self, h: Formula) -> usize {
        self.frames.push(Frame { hyp: h.clone() });
        let level = self.frames.len();
        let i = self.steps.len();
        for v in h.all_vars() {
            self.next_var = self.next_var.max(v.0 + 1);
        }
        match self.index.get(&h) {
            Some(&j) if self.steps[j].level < level => {}
            _ => {
                self.index.insert(h.clone(), i);
            }
        }
        self.steps.push(BStep { formula: h, just: Just::Hyp, level });
        i
    }

    /// The hypothesis of the innermost open context.
    pub fn hypothesis(&self) -> Option<&Formula> {
        self.frames.last().map(|f| &f.hyp)
    }

    /// Closes the innermost context, turning the proof of step `concl`
    /// into a proof of `h -> concl`.
    pub fn discharge(&mut self, concl: usize) -> Result<usize, ProofError> {
        let k = self.frames.len();
        let frame = self.frames.pop().ok_or_else(|| internal("discharge without assume"))?;
        let h = frame.hyp;

        // steps at level k needed for the conclusion
        let mut needed = BTreeSet::new();
        let mut stack = vec![concl];
        while let Some(i) = stack.pop() {
            if self.steps[i].level < k || !needed.insert(i) {
                continue;
            }
            if let Just::Rule(r) = &self.steps[i].just {
                stack.extend(r.premises());
            }
        }

        // retire every level-k step from the index
        let dead: Vec<Formula> =
            self.index.iter().filter(|(_, &i)| self.steps[i].level >= k).map(|(f, _)| f.clone()).collect();
        for f in dead {
            self.index.remove(&f);
        }

        let mut wrapped: HashMap<usize, usize> = HashMap::new();
        for &i in &needed {
            let step = self.steps[i].clone();
            let w = match &step.just {
                Just::Hyp => self.taut(Formula::imp(h.clone(), h.clone()))?,
                Just::Rule(Rule::Mp(a, b)) => {
                    let wa = self.wrapped(*a, k, &h, &wrapped)?;
                    let wb = self.wrapped(*b, k, &h, &wrapped)?;
                    let fa = self.steps[*a].formula.clone();
                    let t = Formula::imp(
                        Formula::imp(h.clone(), fa.clone()),
                        Formula::imp(
                            Formula::imp(h.clone(), Formula::imp(fa, step.formula.clone())),
                            Formula::imp(h.clone(), step.formula.clone()),
                        ),
                    );
                    let t = self.taut(t)?;
                    let m = self.mp(wa, t)?;
                    self.mp(wb, m)?
                }
                Just::Rule(Rule::Gen(a)) => {
                    let Formula::Forall(x, body) = &step.formula else {
                        return Err(internal("generalization step is not universal"));
                    };
                    if h.has_free(*x) {
                        return Err(internal(format!("cannot discharge: {x} generalized but free in hypothesis")));
                    }
                    let wa = self.wrapped(*a, k, &h, &wrapped)?;
                    let g = self.gen(wa, *x)?;
                    let d = self.all_dist(*x, &h, body)?;
                    self.mp(g, d)?
                }
                Just::Rule(_) => return Err(internal("axiom step above level 0")),
            };
            wrapped.insert(i, w);
        }
        match wrapped.get(&concl) {
            Some(&w) => Ok(w),
            None => self.lift(concl, &h),
        }
    }

    fn wrapped(&mut self, i: usize, k: usize, h: &Formula, done: &HashMap<usize, usize>) -> Result<usize, ProofError> {
        if self.steps[i].level >= k {
            done.get(&i).copied().ok_or_else(|| internal("premise not wrapped"))
        } else {
            self.lift(i, h)
        }
    }

    /// From `p`, `h -> p`.
    fn lift(&mut self, i: usize, h: &Formula) -> Result<usize, ProofError> {
        let f = self.steps[i].formula.clone();
        let t = self.taut(Formula::imp(f.clone(), Formula::imp(h.clone(), f)))?;
        self.mp(i, t)
    }

    /// Runs `f` once per key; later calls reuse the cached level-0 step.
    pub fn lemma(
        &mut self,
        key: &str,
        f: impl FnOnce(&mut Self) -> Result<usize, ProofError>,
    ) -> Result<usize, ProofError> {
        if let Some(&i) = self.cache.get(key) {
            return Ok(i);
        }
        let i = f(self)?;
        if self.steps[i].level == 0 {
            self.cache.insert(key.to_string(), i);
        }
        Ok(i)
    }

    /// The derivation of step `i`, restricted to the steps it uses.
    pub fn finish(&self, i: usize) -> Result<Derivation, ProofError> {
        if !self.frames.is_empty() || self.steps[i].level > 0 {
            return Err(internal("derivation depends on an open hypothesis"));
        }
        let mut used = BTreeSet::new();
        let mut stack = vec![i];
        while let Some(j) = stack.pop() {
            if used.insert(j) {
                match &self.steps[j].just {
                    Just::Rule(r) => stack.extend(r.premises()),
                    Just::Hyp => return Err(internal("hypothesis reachable from conclusion")),
                }
            }
        }
        let renumber: HashMap<usize, usize> = used.iter().enumerate().map(|(n, &j)| (j, n)).collect();
        let steps = used
            .iter()
            .map(|&j| {
                let s = &self.steps[j];
                let rule = match &s.just {
                    Just::Rule(Rule::Mp(a, b)) => Rule::Mp(renumber[a], renumber[b]),
                    Just::Rule(Rule::Gen(a)) => Rule::Gen(renumber[a]),
                    Just::Rule(r) => r.clone(),
                    Just::Hyp => unreachable!("rejected above"),
                };
                Step { formula: s.formula.clone(), rule }
            })
            .collect();
        Ok(Derivation::new(steps))
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}
