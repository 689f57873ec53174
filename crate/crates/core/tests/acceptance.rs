//! Acceptance run: one PASS/FAIL line per criterion, each with its time limit.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::io::Write;
use std::time::{Duration, Instant};

use berrykit::berry::{arithmetic_leg, berry_number, certify_bounds, verify_report, Backend, PhiProvider};
use berrykit::coding::{decode, encode, SymbolTable, PRIMITIVE_SYMBOLS};
use berrykit::demo::{demo, replay, DemoParams, Status};
use berrykit::proof::{
    check_proves, least_unique_formula, order_totality_formula, prove_least_unique, prove_ne_numerals,
    prove_order_totality, prove_sigma, Theory,
};
use berrykit::semantics::{eval_budgeted, eval_delta0_sentence, named_number, TruthVerdict};
use berrykit::syntax::{formula_length, parse_formula, render_formula, t_term, term_length, Expr, Token};
use berrykit::{Formula, Term, Var};

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: u32, limit: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = run();
    let took = start.elapsed();
    let pass = o.pass && took < limit;
    let line = format!(
        "criterion {n}: {} | {} | {:.2} s (limit {} s)\n",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        took.as_secs_f64(),
        limit.as_secs()
    );
    // bypasses the test harness's output capture so the line always shows
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    pass
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let mut grid = 0;
    for length in 4..=200 {
        for occurrences in 1..=20 {
            grid += 1;
            let c = certify_bounds(&PhiProvider::Mock { length, occurrences }).expect("valid provider");
            if !c.holds() {
                failures.push((length, occurrences));
            }
        }
    }
    let leg_fail = (4u128..=1_000_000).find(|&k| !arithmetic_leg(k));
    Outcome {
        pass: failures.is_empty() && leg_fail.is_none(),
        detail: format!(
            "{} of {grid} mock providers certified; arithmetic leg k = 4..10^6 {}",
            grid - failures.len(),
            leg_fail.map_or("holds".to_string(), |k| format!("fails at {k}"))
        ),
    }
}

fn criterion_2() -> Outcome {
    let bad: Vec<u64> = (1..=1000).filter(|&k| term_length(&t_term(k)) != 17 + 2 * k).collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!("length(t_term(k)) = 17 + 2k for k = 1..1000, {} mismatches", bad.len()),
    }
}

fn alternative_table() -> SymbolTable {
    let mut codes = [0u64; 15];
    for (i, c) in codes.iter_mut().enumerate() {
        *c = 3 * (15 - i as u64);
    }
    SymbolTable::new(codes, 50).expect("valid table")
}

fn criterion_3() -> Outcome {
    let corpus = common::sample(common::formula(4, 6), 10_000, 3);
    let round = corpus
        .iter()
        .filter(|f| {
            let e = Expr::Formula((*f).clone());
            decode(&encode(&e))
                .map(|back| {
                    render_formula(&back.as_formula().cloned().unwrap_or(Formula::eq(Term::Zero, Term::Zero)))
                        == render_formula(f)
                })
                .unwrap_or(false)
        })
        .count();
    let tables = [SymbolTable::standard(), alternative_table()];
    let mut g_cache: HashMap<(usize, u64), num_bigint::BigUint> = HashMap::new();
    let mut pairs = 0;
    let mut bound_ok = 0;
    let small = common::sample(common::formula(3, 3), 1000, 4);
    for (n, f) in small.iter().enumerate() {
        let len = formula_length(f);
        let max_var = f.max_var().unwrap_or(0) as u64;
        // smallest j meeting both side conditions, plus a spread above it
        let j = (len + 1).max(max_var + 1) + (n as u64 % 4);
        pairs += 1;
        let ok = tables.iter().enumerate().all(|(ti, t)| {
            let g = g_cache.entry((ti, j)).or_insert_with(|| t.g(j).expect("g defined"));
            t.encode_formula(f) < *g
        });
        bound_ok += usize::from(ok);
    }
    Outcome {
        pass: round == corpus.len() && bound_ok == pairs,
        detail: format!(
            "round-trip {round}/{}; code < g(j) on {bound_ok}/{pairs} pairs under 2 symbol tables",
            corpus.len()
        ),
    }
}

/// Independent brute force: every token string of length at most 5 that
/// parses to a formula with free variables among {v0} and length below 6.
fn berry_oracle(budget: u64) -> u64 {
    let mut alphabet: Vec<String> = PRIMITIVE_SYMBOLS.iter().map(|t| t.text()).collect();
    alphabet.push(Token::Var(0).text());
    alphabet.push(Token::Var(1).text());
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut named = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(word) = stack.pop() {
        if !word.is_empty() {
            let text = word.iter().map(|&i| alphabet[i].as_str()).collect::<Vec<_>>().join(" ");
            if let Ok(f) = parse_formula(&text) {
                let canon = render_formula(&f);
                if f.free_vars().iter().all(|v| *v == Var(0)) && formula_length(&f) < 6 && seen.insert(canon) {
                    if let Some(m) = named_number(&f, budget).expect("only v0 free") {
                        named.insert(m);
                    }
                }
            }
        }
        if word.len() < 5 {
            for i in 0..alphabet.len() {
                let mut w = word.clone();
                w.push(i);
                stack.push(w);
            }
        }
    }
    (0..).find(|m| !named.contains(m)).expect("finite")
}

fn criterion_4() -> (Outcome, Duration) {
    let t = Instant::now();
    let oracle = berry_oracle(32);
    let oracle_time = t.elapsed();
    let start = Instant::now();
    let r = berry_number(6, Backend::Semantic, 32, 8).expect("feasible");
    let verified = verify_report(&r, 8);
    let engine = start.elapsed();
    (
        Outcome {
            pass: r.n == oracle && oracle == 3 && verified.is_ok(),
            detail: format!(
                "berry_number(6, semantic, 32) = {}, oracle = {oracle} (oracle {:.2} s, excluded), certificates re-verify: {}",
                r.n,
                oracle_time.as_secs_f64(),
                verified.is_ok()
            ),
        },
        engine,
    )
}

fn s_n(n: u64) -> String {
    render_formula(&Formula::eq(Term::numeral(n), Term::Zero)).trim_end_matches(" = 0").to_string()
}

fn sigma_corpora() -> (Vec<String>, Vec<String>) {
    let mut t = Vec::new();
    let mut f = Vec::new();
    for a in 0..6u64 {
        let b = (a * 7 + 3) % 5;
        // closed atoms
        t.push(format!("{} + {} = {}", s_n(a), s_n(b), s_n(a + b)));
        t.push(format!("{} * {} = {}", s_n(a), s_n(b), s_n(a * b)));
        t.push(format!("{} <= {}", s_n(a), s_n(a + b)));
        f.push(format!("{} + {} = {}", s_n(a), s_n(b), s_n(a + b + 1)));
        f.push(format!("{} * {} = {}", s_n(a + 1), s_n(b + 1), s_n((a + 1) * (b + 1) + 1)));
        f.push(format!("{} <= {}", s_n(a + b + 1), s_n(a)));
        // witnessed existentials
        t.push(format!("(E v0)(v0 + {} = {})", s_n(b), s_n(a + b)));
        t.push(format!("(E v0)(E v1)((v0 * v1 = {}) & ~(v0 = 0))", s_n((a + 1) * (b + 1))));
        f.push(format!("(E v0 < {})(v0 + {} = {})", s_n(a + 1), s_n(b + 1), s_n(a + b + 2)));
        f.push(format!("(E v0 < {})(v0 * v0 = {})", s_n(a + 2), s_n(a * a + 2 * a + 2)));
        // bounded universals
        t.push(format!("(A v0 < {})(v0 <= {})", s_n(a), s_n(a)));
        t.push(format!("(A v0 < {})(E v1)(v0 + v1 = {})", s_n(a + 1), s_n(a + b)));
        f.push(format!("(A v0 < {})(v0 <= {})", s_n(a + 2), s_n(a)));
        f.push(format!("(A v0 < {})~(v0 = {})", s_n(a + b + 1), s_n(a + b)));
    }
    for a in 0..7u64 {
        t.push(format!("~({} = {})", s_n(a), s_n(a + 1 + a % 3)));
        t.push(format!("(E v0 < {})(v0 * {} = {}) | 0 = s 0", s_n(a + 2), s_n(2), s_n(2 * a + 2)));
        f.push(format!("~({} = {})", s_n(a), s_n(a)));
        f.push(format!("(E v0 < {})(s v0 = 0) & 0 = 0", s_n(a + 1)));
    }
    t.truncate(50);
    f.truncate(50);
    (t, f)
}

fn criterion_5() -> Outcome {
    let (trues, falses) = sigma_corpora();
    let q = Theory::q();
    let mut proved = 0;
    for s in &trues {
        let f = parse_formula(s).expect("corpus parses");
        assert_eq!(eval_budgeted(&f, 64).unwrap().verdict, TruthVerdict::True, "{s}");
        if let Ok(d) = prove_sigma(&f, 64) {
            proved += usize::from(check_proves(&d, &q, &f).is_ok());
        }
    }
    let mut refused = 0;
    for s in &falses {
        let f = parse_formula(s).expect("corpus parses");
        assert_eq!(eval_budgeted(&f, 64).unwrap().verdict, TruthVerdict::False, "{s}");
        refused += usize::from(prove_sigma(&f, 64).is_err());
    }
    Outcome {
        pass: trues.len() == 50 && falses.len() == 50 && proved == 50 && refused == 50,
        detail: format!(
            "{proved}/{} true Σ sentences proved and checked; {refused}/{} false ones refused",
            trues.len(),
            falses.len()
        ),
    }
}

fn criterion_6() -> Outcome {
    let q = Theory::q();
    let mut ne = (0, 0);
    for j in 0..=15u64 {
        for i in 0..j {
            ne.0 += 1;
            let goal = Formula::not(Formula::eq(Term::numeral(i), Term::numeral(j)));
            ne.1 += usize::from(prove_ne_numerals(i, j).is_ok_and(|d| check_proves(&d, &q, &goal).is_ok()));
        }
    }
    let tot = (0..=5u64)
        .filter(|&i| prove_order_totality(i).is_ok_and(|d| check_proves(&d, &q, &order_totality_formula(i)).is_ok()))
        .count();
    let instances = [
        ("v0 = s s 0", 2),
        ("s s 0 <= v0", 0),
        ("~(v0 = 0)", 0),
        ("(E v1)(v1 + v1 = v0)", 1),
        ("v0 * v0 <= s s s s 0", 3),
    ];
    let lu = instances
        .iter()
        .filter(|(m, i)| {
            let mu = parse_formula(m).unwrap();
            prove_least_unique(&mu, *i).is_ok_and(|d| check_proves(&d, &q, &least_unique_formula(&mu, *i)).is_ok())
        })
        .count();
    Outcome {
        pass: ne.1 == ne.0 && ne.0 == 120 && tot == 6 && lu == 5,
        detail: format!("ne_numerals {}/{}, order_totality {tot}/6, least_unique {lu}/5", ne.1, ne.0),
    }
}

fn criterion_7() -> Outcome {
    let d0 = common::sample(common::delta0_sentence(), 1000, 7);
    let agree = d0.iter().filter(|f| eval_delta0_sentence(f) == Ok(common::naive_truth(f))).count();
    let ss = common::sample(common::sentence(4), 1000, 8);
    let mut monotone = 0;
    for f in &ss {
        let vs: Vec<TruthVerdict> = [4, 16, 64].iter().map(|&b| eval_budgeted(f, b).unwrap().verdict).collect();
        let ok = vs.windows(2).all(|w| matches!(w[0], TruthVerdict::Unknown { .. }) || w[0] == w[1]);
        monotone += usize::from(ok);
    }
    Outcome {
        pass: agree == 1000 && monotone == 1000,
        detail: format!("eval_delta0 agrees with the naive oracle on {agree}/1000; monotone in B on {monotone}/1000"),
    }
}

fn criterion_8() -> Outcome {
    let p = DemoParams::default();
    let mut replayed = 0;
    let mut refutations = 0;
    let mut notes = Vec::new();
    for id in 1..=5u8 {
        match demo(id, &p) {
            Ok(r) => {
                let s = replay(&r);
                if s.ok() && s.checked > 0 {
                    replayed += 1;
                } else {
                    notes.push(format!("demo {id}: {:?}", s.failures));
                }
                if id == 3 {
                    if let Status::Checked { evidence } = &r.claims[2].status {
                        refutations = evidence.len();
                    }
                }
            }
            Err(e) => notes.push(format!("demo {id}: {e}")),
        }
    }
    Outcome {
        pass: replayed == 5 && refutations == 11,
        detail: format!(
            "{replayed}/5 reports replay; {refutations} witness refutations for j = 0..10{}",
            if notes.is_empty() { String::new() } else { format!("; {}", notes.join("; ")) }
        ),
    }
}

#[test]
fn acceptance() {
    let mut results =
        vec![report(1, secs(5), criterion_1), report(2, secs(1), criterion_2), report(3, secs(30), criterion_3)];
    let (o4, engine) = criterion_4();
    let pass4 = o4.pass && engine < secs(10);
    let _ = std::io::stdout().lock().write_all(
        format!(
            "criterion 4: {} | {} | {:.2} s (limit 10 s)\n",
            if pass4 { "PASS" } else { "FAIL" },
            o4.detail,
            engine.as_secs_f64()
        )
        .as_bytes(),
    );
    results.push(pass4);
    results.push(report(5, secs(60), criterion_5));
    results.push(report(6, secs(60), criterion_6));
    results.push(report(7, secs(30), criterion_7));
    results.push(report(8, secs(60), criterion_8));
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, p)| !**p).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
