use proptest::prelude::*;

use berrykit::berry::{
    berry_number, boolos_sentence, certify_bounds, counts_by_length, enumerate_formulas, psi_formula, Backend,
    PhiProvider, NUMERAL_MARKER,
};
use berrykit::demo::{demo, DemoParams, DemoReport};
use berrykit::semantics::eval_delta0_sentence;
use berrykit::syntax::{formula_length, render_formula, render_term, term_length};
use berrykit::{Formula, Term, Var};

/// Number of terms of rendered length `n` over the leaves `0` and `v0`;
/// `operand` adds the parentheses a binary term gets inside another term.
fn terms(n: u64, operand: bool) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut count = if n == 1 { 2 } else { terms(n - 1, true) };
    let inner = if operand { n.saturating_sub(2) } else { n };
    for a in 1..inner {
        count += 2 * terms(a, true) * terms(inner - 1 - a, true);
    }
    count
}

/// Number of quantifier-free formulas of rendered length `n` in `v0`;
/// `top` drops the outer parentheses.
fn formulas(n: u64, top: bool) -> u64 {
    if !top {
        return if n < 2 { 0 } else { formulas(n - 2, true) };
    }
    let mut count = 0;
    for a in 1..n {
        let b = n - 1 - a;
        count += 2 * terms(a, false) * terms(b, false);
        count += 4 * formulas(a, false) * formulas(b, false);
    }
    if n >= 1 {
        count += formulas(n - 1, false);
    }
    count
}

#[test]
fn enumeration_counts_match_a_recursive_count() {
    // a quantifier adds six symbols to a body of at least three, so every
    // formula below length 9 is quantifier free
    for max_len in 1..=8u64 {
        let counts = counts_by_length(max_len, 8).unwrap();
        let expected: Vec<u64> = (0..max_len).map(|n| formulas(n, true)).collect();
        assert_eq!(counts, expected, "max_len {max_len}");
    }
    assert_eq!(counts_by_length(8, 8).unwrap(), vec![0, 0, 0, 8, 16, 88, 232, 568]);
}

#[test]
fn enumeration_is_sorted_and_in_range() {
    let all = enumerate_formulas(7, 8).unwrap();
    assert_eq!(all.len(), 344);
    for w in all.windows(2) {
        let key = |f: &Formula| (formula_length(f), render_formula(f));
        assert!(key(&w[0]) < key(&w[1]));
    }
    assert!(all.iter().all(|f| f.free_vars().iter().all(|v| *v == Var(0))));
}

#[test]
fn term_counts_by_hand() {
    // s s 0, s s v0, and four sums and four products of single symbols
    assert_eq!(terms(3, false), 10);
    // inside another term a sum needs five symbols
    assert_eq!(terms(3, true), 2);
    assert_eq!(term_length(&Term::succ(Term::add(Term::Zero, Term::var(0)))), 6);
}

#[test]
fn berry_number_is_monotone_in_the_length_bound() {
    let ns: Vec<u64> = (4..=7).map(|l| berry_number(l, Backend::Semantic, 32, 8).unwrap().n).collect();
    assert!(ns.windows(2).all(|w| w[0] <= w[1]), "{ns:?}");
    assert_eq!(ns[2..], [3, 4]);
}

#[test]
fn the_semantic_leg_holds() {
    for max_len in 4..=7 {
        let r = berry_number(max_len, Backend::Semantic, 32, 8).unwrap();
        let phi = Formula::disjunction(r.table.keys().map(|&m| Formula::eq(Term::var(0), Term::numeral(m))).collect());
        let at_n = |f: &Formula| f.substitute(Var(0), &Term::numeral(r.n));
        assert!(!eval_delta0_sentence(&at_n(&phi)).unwrap(), "L = {max_len}");
        assert!(eval_delta0_sentence(&at_n(&psi_formula(&phi))).unwrap(), "L = {max_len}");
        for m in 0..r.n {
            assert!(!eval_delta0_sentence(&psi_formula(&phi).substitute(Var(0), &Term::numeral(m))).unwrap());
        }
    }
}

fn concrete_phi() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Term::Zero), Just(Term::var(0)), Just(Term::var(1)), (0u64..4).prop_map(Term::numeral)];
    let term = leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![inner.clone().prop_map(Term::succ), (inner.clone(), inner).prop_map(|(l, r)| Term::add(l, r)),]
    });
    let atom = (term.clone(), term).prop_map(|(l, r)| Formula::eq(l, r));
    atom.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![inner.clone().prop_map(Formula::not), (inner.clone(), inner).prop_map(|(a, b)| Formula::and(a, b)),]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mock_certificates_hold(length in 4u64..5_000, occurrences in 1u64..200) {
        let c = certify_bounds(&PhiProvider::Mock { length, occurrences }).unwrap();
        prop_assert!(c.holds(), "{:?}", c.checks);
        prop_assert!(!c.psi_t_len_exact);
    }

    #[test]
    fn concrete_certificates_are_exact(phi in concrete_phi()) {
        let c = certify_bounds(&PhiProvider::Concrete(phi.clone())).unwrap();
        let k = &c.constants;
        let t = k.t_term();
        prop_assert_eq!(u128::from(term_length(&t)), u128::from(k.t_len));
        let psi_t = psi_formula(&phi).substitute(Var(1), &t);
        prop_assert_eq!(u128::from(formula_length(&psi_t)), c.psi_t_len);
        prop_assert!(c.psi_t_len_exact);
        prop_assert!(c.psi_t_len <= u128::from(k.k1) + u128::from(k.k2) * u128::from(k.t_len));
        prop_assert!(c.holds());
    }

    #[test]
    fn boolos_substitutions_commute(phi in concrete_phi(), n in 0u64..40) {
        let p = PhiProvider::Concrete(phi.clone());
        let s = boolos_sentence(&p, Some(n)).unwrap();
        let t = certify_bounds(&p).unwrap().constants.t_term();
        let psi = psi_formula(&phi);
        let other_order = psi.substitute(Var(0), &Term::numeral(n)).substitute(Var(1), &t);
        prop_assert_eq!(s.formula.as_ref(), Some(&other_order));
        prop_assert!(other_order.is_sentence());
        let template = boolos_sentence(&p, None).unwrap();
        prop_assert_eq!(template.text.replace(NUMERAL_MARKER, &render_term(&Term::numeral(n))), s.text);
    }
}

#[test]
fn demo_reports_round_trip_through_json() {
    let p = DemoParams { max_len: 5, witnesses: 3, toy_len: 5, ..DemoParams::default() };
    for id in 1..=5 {
        let r = demo(id, &p).unwrap();
        let back = DemoReport::from_json(&r.to_json().to_string()).unwrap();
        assert_eq!(back, r);
    }
}
