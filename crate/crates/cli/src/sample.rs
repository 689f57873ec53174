//! Seeded random formulas, for fuzzing the other subcommands.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use berrykit::{Formula, Term, Var};

pub struct Sampler {
    rng: ChaCha8Rng,
    vars: u32,
}

impl Sampler {
    pub fn new(seed: u64, vars: u32) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), vars: vars.max(1) }
    }

    pub fn term(&mut self, depth: u32) -> Term {
        let leaf = depth == 0 || self.rng.gen_bool(0.3);
        if leaf {
            return if self.rng.gen_bool(0.5) { Term::Zero } else { Term::var(self.rng.gen_range(0..self.vars)) };
        }
        match self.rng.gen_range(0..3) {
            0 => Term::succ(self.term(depth - 1)),
            1 => Term::add(self.term(depth - 1), self.term(depth - 1)),
            _ => Term::mul(self.term(depth - 1), self.term(depth - 1)),
        }
    }

    pub fn formula(&mut self, depth: u32) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.25) {
            let (l, r) = (self.term(2), self.term(2));
            return if self.rng.gen_bool(0.5) { Formula::eq(l, r) } else { Formula::le(l, r) };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..9) {
            0 => Formula::not(self.formula(d)),
            1 => Formula::and(self.formula(d), self.formula(d)),
            2 => Formula::or(self.formula(d), self.formula(d)),
            3 => Formula::imp(self.formula(d), self.formula(d)),
            4 => Formula::iff(self.formula(d), self.formula(d)),
            5 => Formula::forall(self.var(), self.formula(d)),
            6 => Formula::exists(self.var(), self.formula(d)),
            7 => {
                let b = self.term(1);
                Formula::bforall(self.var(), b, self.formula(d))
            }
            _ => {
                let b = self.term(1);
                Formula::bexists(self.var(), b, self.formula(d))
            }
        }
    }

    fn var(&mut self) -> Var {
        Var(self.rng.gen_range(0..self.vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use berrykit::syntax::render_formula;

    #[test]
    fn deterministic() {
        let a: Vec<String> = (0..5)
            .map({
                let mut s = Sampler::new(7, 3);
                move |_| render_formula(&s.formula(3))
            })
            .collect();
        let mut s = Sampler::new(7, 3);
        let b: Vec<String> = (0..5).map(|_| render_formula(&s.formula(3))).collect();
        assert_eq!(a, b);
    }
}
