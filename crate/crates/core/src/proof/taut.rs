//! Propositional tautology checking over the connective skeleton.
//!
//! Maximal subformulas that are not built with a connective (atoms and
//! quantified formulas) act as propositional letters; two letters are the
//! same iff the subformulas are syntactically identical.

use std::collections::HashMap;

use crate::syntax::Formula;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Prop {
    Const(bool),
    Letter(usize),
    Not(Box<Prop>),
    And(Box<Prop>, Box<Prop>),
    Or(Box<Prop>, Box<Prop>),
    Imp(Box<Prop>, Box<Prop>),
    Iff(Box<Prop>, Box<Prop>),
}

fn skeleton<'a>(f: &'a Formula, letters: &mut HashMap<&'a Formula, usize>) -> Prop {
    let bin = |a: &'a Formula, b: &'a Formula, letters: &mut HashMap<&'a Formula, usize>| {
        (Box::new(skeleton(a, letters)), Box::new(skeleton(b, letters)))
    };
    match f {
        Formula::Not(a) => Prop::Not(Box::new(skeleton(a, letters))),
        Formula::And(a, b) => {
            let (x, y) = bin(a, b, letters);
            Prop::And(x, y)
        }
        Formula::Or(a, b) => {
            let (x, y) = bin(a, b, letters);
            Prop::Or(x, y)
        }
        Formula::Imp(a, b) => {
            let (x, y) = bin(a, b, letters);
            Prop::Imp(x, y)
        }
        Formula::Iff(a, b) => {
            let (x, y) = bin(a, b, letters);
            Prop::Iff(x, y)
        }
        _ => {
            let n = letters.len();
            Prop::Letter(*letters.entry(f).or_insert(n))
        }
    }
}

fn not(p: Prop) -> Prop {
    match p {
        Prop::Const(b) => Prop::Const(!b),
        Prop::Not(a) => *a,
        other => Prop::Not(Box::new(other)),
    }
}

/// Substitutes `val` for letter `x` and folds constants.
fn assign(p: &Prop, x: usize, val: bool) -> Prop {
    match p {
        Prop::Const(_) => p.clone(),
        Prop::Letter(y) => {
            if *y == x {
                Prop::Const(val)
            } else {
                p.clone()
            }
        }
        Prop::Not(a) => not(assign(a, x, val)),
        Prop::And(a, b) => match (assign(a, x, val), assign(b, x, val)) {
            (Prop::Const(false), _) | (_, Prop::Const(false)) => Prop::Const(false),
            (Prop::Const(true), q) | (q, Prop::Const(true)) => q,
            (a, b) => Prop::And(Box::new(a), Box::new(b)),
        },
        Prop::Or(a, b) => match (assign(a, x, val), assign(b, x, val)) {
            (Prop::Const(true), _) | (_, Prop::Const(true)) => Prop::Const(true),
            (Prop::Const(false), q) | (q, Prop::Const(false)) => q,
            (a, b) => Prop::Or(Box::new(a), Box::new(b)),
        },
        Prop::Imp(a, b) => match (assign(a, x, val), assign(b, x, val)) {
            (Prop::Const(false), _) | (_, Prop::Const(true)) => Prop::Const(true),
            (Prop::Const(true), q) => q,
            (q, Prop::Const(false)) => not(q),
            (a, b) => Prop::Imp(Box::new(a), Box::new(b)),
        },
        Prop::Iff(a, b) => match (assign(a, x, val), assign(b, x, val)) {
            (Prop::Const(true), q) | (q, Prop::Const(true)) => q,
            (Prop::Const(false), q) | (q, Prop::Const(false)) => not(q),
            (a, b) => Prop::Iff(Box::new(a), Box::new(b)),
        },
    }
}

fn count_letters(p: &Prop, counts: &mut HashMap<usize, usize>) {
    match p {
        Prop::Const(_) => {}
        Prop::Letter(x) => *counts.entry(*x).or_default() += 1,
        Prop::Not(a) => count_letters(a, counts),
        Prop::And(a, b) | Prop::Or(a, b) | Prop::Imp(a, b) | Prop::Iff(a, b) => {
            count_letters(a, counts);
            count_letters(b, counts);
        }
    }
}

/// Shannon expansion on the most frequent letter with constant folding.
fn valid(p: &Prop) -> bool {
    match p {
        Prop::Const(b) => *b,
        _ => {
            let mut counts = HashMap::new();
            count_letters(p, &mut counts);
            let x = counts
                .iter()
                .max_by_key(|(x, n)| (**n, std::cmp::Reverse(**x)))
                .map(|(x, _)| *x)
                .expect("non-constant formula has a letter");
            valid(&assign(p, x, false)) && valid(&assign(p, x, true))
        }
    }
}

/// Whether `f` is an instance of a propositional tautology.
pub fn is_tautology(f: &Formula) -> bool {
    let mut letters = HashMap::new();
    let p = skeleton(f, &mut letters);
    valid(&p)
}
