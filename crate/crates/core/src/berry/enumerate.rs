//! Exhaustive enumeration of short formulas in renaming normal form.
//!
//! In normal form `v0` is the only free variable and the binder at nesting
//! depth `d` (counting from 1) binds `v_d`, so α-variants coincide.

use std::collections::HashMap;

use thiserror::Error;

use crate::syntax::{formula_length, render_formula, Formula, Term, Var};

/// Default feasibility cap on the length bound.
pub const DEFAULT_CAP: u64 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("length bound {max_len} exceeds the feasibility cap {cap}")]
    CapExceeded { max_len: u64, cap: u64 },
}

#[derive(Default)]
struct Gen {
    terms: HashMap<(u64, u32), Vec<Term>>,
    formulas: HashMap<(u64, u32), Vec<Formula>>,
}

impl Gen {
    /// Terms of rendered length `n` over `v0..=v_depth`, as atom sides.
    fn terms(&mut self, n: u64, depth: u32) -> Vec<Term> {
        if let Some(ts) = self.terms.get(&(n, depth)) {
            return ts.clone();
        }
        let mut out = Vec::new();
        if n == 1 {
            out.push(Term::Zero);
            out.extend((0..=depth).map(Term::var));
        }
        if n >= 2 {
            for a in self.operands(n - 1, depth) {
                out.push(Term::succ(a));
            }
        }
        // l op r with operand lengths summing to n - 1
        for ll in 1..n.saturating_sub(1) {
            let rl = n - 1 - ll;
            let ls = self.operands(ll, depth);
            let rs = self.operands(rl, depth);
            for l in &ls {
                for r in &rs {
                    out.push(Term::add(l.clone(), r.clone()));
                    out.push(Term::mul(l.clone(), r.clone()));
                }
            }
        }
        self.terms.insert((n, depth), out.clone());
        out
    }

    /// Terms whose rendering as an operand has length `n`.
    fn operands(&mut self, n: u64, depth: u32) -> Vec<Term> {
        let mut out: Vec<Term> = self.terms(n, depth).into_iter().filter(|t| !t.is_binary()).collect();
        if n > 2 {
            out.extend(self.terms(n - 2, depth).into_iter().filter(Term::is_binary));
        }
        out
    }

    /// Formulas of rendered (top-level) length `n` whose free variables are
    /// among `v0..=v_depth`.
    fn formulas(&mut self, n: u64, depth: u32) -> Vec<Formula> {
        if let Some(fs) = self.formulas.get(&(n, depth)) {
            return fs.clone();
        }
        let mut out = Vec::new();
        for ll in 1..n.saturating_sub(1) {
            let rl = n - 1 - ll;
            let ls = self.terms(ll, depth);
            let rs = self.terms(rl, depth);
            for l in &ls {
                for r in &rs {
                    out.push(Formula::eq(l.clone(), r.clone()));
                    out.push(Formula::le(l.clone(), r.clone()));
                }
            }
        }
        if n > 3 {
            for a in self.formulas(n - 3, depth) {
                out.push(Formula::not(a));
            }
        }
        for al in 1..n.saturating_sub(5) {
            let bl = n - 5 - al;
            let as_ = self.formulas(al, depth);
            let bs = self.formulas(bl, depth);
            for a in &as_ {
                for b in &bs {
                    out.push(Formula::and(a.clone(), b.clone()));
                    out.push(Formula::or(a.clone(), b.clone()));
                    out.push(Formula::imp(a.clone(), b.clone()));
                    out.push(Formula::iff(a.clone(), b.clone()));
                }
            }
        }
        if n > 6 {
            let v = Var(depth + 1);
            for body in self.formulas(n - 6, depth + 1) {
                out.push(Formula::forall(v, body.clone()));
                out.push(Formula::exists(v, body));
            }
        }
        self.formulas.insert((n, depth), out.clone());
        out
    }
}

/// Every formula of length less than `max_len` whose free variables are
/// among `{v0}`, in renaming normal form, ordered by length and then by
/// rendered text.
pub fn enumerate_formulas(max_len: u64, cap: u64) -> Result<Vec<Formula>, EnumerationError> {
    if max_len > cap {
        return Err(EnumerationError::CapExceeded { max_len, cap });
    }
    let mut g = Gen::default();
    let mut out = Vec::new();
    for n in 1..max_len {
        let mut layer: Vec<(String, Formula)> = g.formulas(n, 0).into_iter().map(|f| (render_formula(&f), f)).collect();
        layer.sort();
        debug_assert!(layer.iter().all(|(_, f)| formula_length(f) == n));
        out.extend(layer.into_iter().map(|(_, f)| f));
    }
    Ok(out)
}

/// Number of formulas of each length `0..max_len`.
pub fn counts_by_length(max_len: u64, cap: u64) -> Result<Vec<u64>, EnumerationError> {
    let mut counts = vec![0u64; max_len as usize];
    for f in enumerate_formulas(max_len, cap)? {
        counts[formula_length(&f) as usize] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_lengths() {
        assert!(enumerate_formulas(2, 8).unwrap().is_empty());
        assert!(enumerate_formulas(3, 8).unwrap().is_empty());
        let four: Vec<String> = enumerate_formulas(4, 8).unwrap().iter().map(render_formula).collect();
        for s in ["v0 = 0", "0 = v0", "0 = 0", "0 <= 0", "v0 <= v0"] {
            assert!(four.contains(&s.to_string()), "{s}");
        }
        // 2 atoms over {0, v0}^2
        assert_eq!(four.len(), 8);
        assert!(matches!(enumerate_formulas(9, 8), Err(EnumerationError::CapExceeded { .. })));
    }

    #[test]
    fn distinct_and_well_formed() {
        let all = enumerate_formulas(8, 8).unwrap();
        let texts: HashSet<String> = all.iter().map(render_formula).collect();
        assert_eq!(texts.len(), all.len());
        assert!(all.iter().all(|f| f.free_vars().iter().all(|v| *v == Var(0))));
        assert!(all.iter().all(|f| formula_length(f) < 8));
    }

    #[test]
    fn quantifiers_from_length_nine() {
        let mut g = Gen::default();
        let nine = g.formulas(9, 0);
        assert!(nine.iter().any(|f| render_formula(f) == "( A v1 ) ( v1 = 0 )"));
        assert!(nine.iter().any(|f| render_formula(f) == "( E v1 ) ( v0 <= v1 )"));
    }
}
