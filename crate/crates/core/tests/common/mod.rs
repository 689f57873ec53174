//! Shared generators and independent oracles for the integration tests.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use berrykit::{Formula, Term, Var};

pub fn term(vars: u32, depth: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![Just(Term::Zero), (0..vars).prop_map(Term::var)];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::add(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Term::mul(l, r)),
        ]
    })
    .boxed()
}

fn atom(t: BoxedStrategy<Term>) -> BoxedStrategy<Formula> {
    prop_oneof![
        (t.clone(), t.clone()).prop_map(|(l, r)| Formula::eq(l, r)),
        (t.clone(), t).prop_map(|(l, r)| Formula::le(l, r)),
    ]
    .boxed()
}

/// Arbitrary formulas over `v0 .. v(vars-1)`, including bounded sugar.
pub fn formula(vars: u32, depth: u32) -> BoxedStrategy<Formula> {
    let v = 0..vars;
    atom(term(vars, 2))
        .prop_recursive(depth, 64, 2, move |inner| {
            let v = v.clone();
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
                (v.clone(), inner.clone()).prop_map(|(x, b)| Formula::forall(Var(x), b)),
                (v.clone(), inner.clone()).prop_map(|(x, b)| Formula::exists(Var(x), b)),
                (v.clone(), term(vars, 1), inner.clone()).prop_map(|(x, t, b)| Formula::bforall(Var(x), t, b)),
                (v, term(vars, 1), inner).prop_map(|(x, t, b)| Formula::bexists(Var(x), t, b)),
            ]
        })
        .boxed()
}

/// Small terms whose numerals stay below 4, for cheap evaluation.
fn small_term(vars: u32) -> BoxedStrategy<Term> {
    let leaf = prop_oneof![(0u64..4).prop_map(Term::numeral), (0..vars).prop_map(Term::var)];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::add(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Term::mul(l, r)),
        ]
    })
    .boxed()
}

/// Δ0 formulas over `v0 .. v(vars-1)` with small terms and bounds.
pub fn delta0(vars: u32) -> BoxedStrategy<Formula> {
    let bound = prop_oneof![(0u64..5).prop_map(Term::numeral), (0..vars).prop_map(Term::var)];
    atom(small_term(vars))
        .prop_recursive(3, 24, 2, move |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
                (0..vars, bound.clone(), inner.clone()).prop_map(|(x, t, b)| Formula::bforall(Var(x), t, b)),
                (0..vars, bound.clone(), inner).prop_map(|(x, t, b)| Formula::bexists(Var(x), t, b)),
            ]
        })
        .boxed()
}

/// Closed Δ0 sentences with small bounds: free variables are replaced by
/// numerals below 5.
pub fn delta0_sentence() -> BoxedStrategy<Formula> {
    (delta0(3), proptest::collection::vec(0u64..5, 3)).prop_map(|(f, vals)| close(&f, &vals)).boxed()
}

/// Sentences that may contain unbounded quantifiers.
pub fn sentence(depth: u32) -> BoxedStrategy<Formula> {
    (formula(3, depth), proptest::collection::vec(0u64..5, 3)).prop_map(|(f, vals)| close(&f, &vals)).boxed()
}

pub fn close(f: &Formula, vals: &[u64]) -> Formula {
    let mut g = f.clone();
    for v in f.free_vars() {
        g = g.substitute(v, &Term::numeral(vals[v.0 as usize % vals.len()]));
    }
    g
}

/// `count` values drawn deterministically from `s`.
pub fn sample<T: std::fmt::Debug>(s: impl Strategy<Value = T>, count: usize, seed: u8) -> Vec<T> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    (0..count).map(|_| s.new_tree(&mut runner).expect("strategy generates").current()).collect()
}

/// Value of a closed term by direct recursion.
pub fn naive_value(t: &Term) -> u128 {
    match t {
        Term::Zero => 0,
        Term::Succ(a) => naive_value(a) + 1,
        Term::Add(a, b) => naive_value(a) + naive_value(b),
        Term::Mul(a, b) => naive_value(a) * naive_value(b),
        Term::Var(v) => panic!("open term: {v}"),
    }
}

/// Truth of a closed Δ0 sentence by substituting numerals for bound
/// variables and recursing.
pub fn naive_truth(f: &Formula) -> bool {
    let inst = |v: &Var, k: u128, body: &Formula| naive_truth(&body.substitute(*v, &Term::numeral(k as u64)));
    match f {
        Formula::Eq(l, r) => naive_value(l) == naive_value(r),
        Formula::Le(l, r) => naive_value(l) <= naive_value(r),
        Formula::Not(a) => !naive_truth(a),
        Formula::And(a, b) => naive_truth(a) && naive_truth(b),
        Formula::Or(a, b) => naive_truth(a) || naive_truth(b),
        Formula::Imp(a, b) => !naive_truth(a) || naive_truth(b),
        Formula::Iff(a, b) => naive_truth(a) == naive_truth(b),
        Formula::BoundedForall(v, b, body) => (0..naive_value(b)).all(|k| inst(v, k, body)),
        Formula::BoundedExists(v, b, body) => (0..naive_value(b)).any(|k| inst(v, k, body)),
        Formula::Forall(..) | Formula::Exists(..) => panic!("unbounded quantifier in Δ0 oracle"),
    }
}
