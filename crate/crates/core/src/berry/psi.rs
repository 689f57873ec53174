//! The formula ψ built from a definition φ(v0, v1) of the Berry relation,
//! its constants `k1, k2, k, t`, the length-inequality certificate and the
//! Boolos sentence ψ(n, t).

use serde::Serialize;
use serde_json::{json, Value};

use super::BerryError;
use crate::proof::{prove_sigma, Derivation};
use crate::semantics::eval_delta0_sentence;
use crate::syntax::{formula_length, is_delta0, render_formula, t_term, token_seq, Expr, Formula, Term, Token, Var};

const V0: Var = Var(0);
const V1: Var = Var(1);
const V2: Var = Var(2);

/// Connective and quantifier symbols ψ adds around its two copies of φ.
pub const PSI_OVERHEAD: u64 = 23;

/// Where φ(v0, v1) comes from: an actual formula, or only its length and
/// the number of free occurrences of `v1` in ψ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhiProvider {
    Concrete(Formula),
    Mock { length: u64, occurrences: u64 },
}

impl PhiProvider {
    pub fn validate(&self) -> Result<(), BerryError> {
        match self {
            PhiProvider::Concrete(phi) => {
                if let Some(v) = phi.free_vars().into_iter().find(|v| *v != V0 && *v != V1) {
                    return Err(BerryError::Provider(format!("φ has free variable {v} outside v0, v1")));
                }
                Ok(())
            }
            PhiProvider::Mock { length, occurrences } => {
                if *length < 4 {
                    return Err(BerryError::Provider(format!("mock length {length} must be at least 4")));
                }
                if *occurrences < 1 {
                    return Err(BerryError::Provider("mock occurrence count must be at least 1".into()));
                }
                Ok(())
            }
        }
    }
}

/// `~φ(v0, v1) & (A v2 < v0) φ(v2, v1)`.
pub fn psi_formula(phi: &Formula) -> Formula {
    Formula::and(Formula::not(phi.clone()), Formula::bforall(V2, Term::Var(V0), phi.substitute(V0, &Term::Var(V2))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiConstants {
    /// Length of ψ(v0, v1).
    pub k1: u64,
    /// One more than the free occurrences of `v1` in ψ.
    pub k2: u64,
    pub k: u64,
    /// Length of `t_term`, `17 + 2k`.
    pub t_len: u64,
    /// `10k²`.
    pub t_value: u128,
}

impl PsiConstants {
    fn new(k1: u64, occurrences: u64) -> Self {
        let k2 = occurrences + 1;
        let k = k1 * k2;
        PsiConstants { k1, k2, k, t_len: 17 + 2 * k, t_value: 10 * u128::from(k) * u128::from(k) }
    }

    /// `10 * (k * k)` written with numerals.
    pub fn t_term(&self) -> Term {
        t_term(self.k)
    }
}

/// ψ (for a concrete φ) and its constants.
pub fn build_psi(p: &PhiProvider) -> Result<(Option<Formula>, PsiConstants), BerryError> {
    p.validate()?;
    Ok(match p {
        PhiProvider::Concrete(phi) => {
            let psi = psi_formula(phi);
            let c = PsiConstants::new(formula_length(&psi), psi.free_occurrences(V1) as u64);
            (Some(psi), c)
        }
        PhiProvider::Mock { length, occurrences } => (None, PsiConstants::new(2 * length + PSI_OVERHEAD, *occurrences)),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub lhs: u128,
    pub rhs: u128,
    pub strict: bool,
    pub holds: bool,
}

impl BoundCheck {
    fn new(name: &str, lhs: u128, rhs: u128, strict: bool) -> Self {
        let holds = if strict { lhs < rhs } else { lhs <= rhs };
        BoundCheck { name: name.into(), lhs, rhs, strict, holds }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub constants: PsiConstants,
    /// Length of ψ(v0, t): exact for a concrete φ, the worst case
    /// `k1 + occ·(|t| + 1)` for a mock.
    pub psi_t_len: u128,
    pub psi_t_len_exact: bool,
    pub checks: Vec<BoundCheck>,
}

impl BoundCertificate {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("certificate serializes");
        v["v"] = json!(1);
        v["holds"] = json!(self.holds());
        // u128 values exceed what every JSON reader accepts as a number
        v["constants"]["t_value"] = json!(self.constants.t_value.to_string());
        v
    }
}

/// `18k + 2k² < 10k²`.
pub fn arithmetic_leg(k: u128) -> bool {
    18 * k + 2 * k * k < 10 * k * k
}

/// Evaluates the chain of inequalities that bounds |ψ(v0, t)| by `t`.
pub fn certify_bounds(p: &PhiProvider) -> Result<BoundCertificate, BerryError> {
    let (psi, c) = build_psi(p)?;
    let (k1, k2, k) = (u128::from(c.k1), u128::from(c.k2), u128::from(c.k));
    let t_len = u128::from(c.t_len);
    let (psi_t_len, exact) = match &psi {
        Some(psi) => (u128::from(formula_length(&psi.substitute(V1, &c.t_term()))), true),
        None => (k1 + (k2 - 1) * (t_len + 1), false),
    };
    let checks = vec![
        BoundCheck::new("18k < 8k^2", 18 * k, 8 * k * k, true),
        BoundCheck::new("|psi(v0,t)| <= k1 + k2*|t|", psi_t_len, k1 + k2 * t_len, false),
        BoundCheck::new("k1 + k2*(17+2k) <= 18k + 2k^2", k1 + k2 * (17 + 2 * k), 18 * k + 2 * k * k, false),
        BoundCheck::new("18k + 2k^2 < 10k^2", 18 * k + 2 * k * k, c.t_value, true),
        BoundCheck::new("|psi(v0,t)| < t", psi_t_len, c.t_value, true),
    ];
    Ok(BoundCertificate { constants: c, psi_t_len, psi_t_len_exact: exact, checks })
}

/// ψ(n, t), or its template with the marker `#n` when `n` is not given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolosSentence {
    pub text: String,
    pub formula: Option<Formula>,
    /// Exact length when φ is concrete and `n` is given; otherwise an
    /// upper bound (with `#n` counted as one symbol).
    pub length: u128,
    pub length_exact: bool,
    pub t_value: u128,
}

pub const NUMERAL_MARKER: &str = "#n";

pub fn boolos_sentence(p: &PhiProvider, n: Option<u64>) -> Result<BoolosSentence, BerryError> {
    let (psi, c) = build_psi(p)?;
    let t = c.t_term();
    let t_text = crate::syntax::render_term(&t);
    match (psi, n) {
        (Some(psi), Some(n)) => {
            let f = psi.substitute(V1, &t).substitute(V0, &Term::numeral(n));
            Ok(BoolosSentence {
                text: render_formula(&f),
                length: u128::from(formula_length(&f)),
                formula: Some(f),
                length_exact: true,
                t_value: c.t_value,
            })
        }
        (Some(psi), None) => {
            let with_t = psi.substitute(V1, &t);
            let marker = Var(with_t.max_var().map_or(3, |m| m + 1));
            let templ = with_t.substitute(V0, &Term::Var(marker));
            let tokens = token_seq(&Expr::Formula(templ));
            let text = tokens
                .iter()
                .map(|tok| if *tok == Token::Var(marker.0) { NUMERAL_MARKER.to_string() } else { tok.text() })
                .collect::<Vec<_>>()
                .join(" ");
            Ok(BoolosSentence {
                text,
                formula: None,
                length: tokens.len() as u128,
                length_exact: false,
                t_value: c.t_value,
            })
        }
        (None, n) => {
            let numeral = n.map_or(NUMERAL_MARKER.to_string(), |n| crate::syntax::render_term(&Term::numeral(n)));
            let text = format!(
                "( ~ ( phi[{numeral}, {t_text}] ) ) & ( ( A v2 ) ( ( s v2 <= {numeral} ) -> ( phi[v2, {t_text}] ) ) )"
            );
            let n_len = n.map_or(1, |n| u128::from(n) + 1);
            let occ = u128::from(c.k2 - 1);
            // each free v0 replaced by the numeral, each v1 by parenthesized t
            let length = u128::from(c.k1) + occ * (u128::from(c.t_len) + 1) + 2 * (n_len + 1);
            Ok(BoolosSentence { text, formula: None, length, length_exact: false, t_value: c.t_value })
        }
    }
}

/// Q-derivations of `~μ(n, t, j)` for `j = 0..=big_n`, where `μ` is Δ0 with
/// free variables among `v0`, `v1` and one further variable.
pub fn refute_witnesses(mu: &Formula, n: u64, t: &Term, big_n: u64) -> Result<Vec<Derivation>, BerryError> {
    if !is_delta0(mu) {
        return Err(BerryError::Provider(format!("{} is not Δ0", render_formula(mu))));
    }
    if !t.is_closed() {
        return Err(BerryError::Provider("t must be closed".into()));
    }
    let extra: Vec<Var> = mu.free_vars().into_iter().filter(|v| *v != V0 && *v != V1).collect();
    if extra.len() > 1 {
        return Err(BerryError::Provider(format!("{} has more than one witness variable", render_formula(mu))));
    }
    let base = mu.substitute(V0, &Term::numeral(n)).substitute(V1, t);
    let mut out = Vec::with_capacity(big_n as usize + 1);
    for j in 0..=big_n {
        let inst = match extra.first() {
            Some(w) => base.substitute(*w, &Term::numeral(j)),
            None => base.clone(),
        };
        if eval_delta0_sentence(&inst)? {
            return Err(BerryError::Refused { j });
        }
        out.push(prove_sigma(&Formula::not(inst), 0)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn psi_of_concrete_phi() {
        let phi = parse_formula("v0 = v1").unwrap();
        let (psi, c) = build_psi(&PhiProvider::Concrete(phi.clone())).unwrap();
        let psi = psi.unwrap();
        assert_eq!(render_formula(&psi), "( ~ ( v0 = v1 ) ) & ( ( A v2 ) ( ( s v2 <= v0 ) -> ( v2 = v1 ) ) )");
        assert_eq!(c.k1, 2 * formula_length(&phi) + PSI_OVERHEAD);
        assert_eq!(c.k2, 3);
        assert_eq!(c.k, c.k1 * 3);
        assert_eq!(c.t_value, 10 * u128::from(c.k).pow(2));
        assert_eq!(crate::syntax::term_length(&c.t_term()), c.t_len);
    }

    #[test]
    fn mock_constants() {
        let (_, c) = build_psi(&PhiProvider::Mock { length: 50, occurrences: 2 }).unwrap();
        assert_eq!((c.k1, c.k2, c.k), (123, 3, 369));
        assert!(build_psi(&PhiProvider::Mock { length: 3, occurrences: 1 }).is_err());
        assert!(build_psi(&PhiProvider::Mock { length: 4, occurrences: 0 }).is_err());
        assert!(certify_bounds(&PhiProvider::Mock { length: 4, occurrences: 1 }).unwrap().holds());
    }

    #[test]
    fn concrete_bounds_and_sentence() {
        let p = PhiProvider::Concrete(parse_formula("v0 + v1 = s v1").unwrap());
        let cert = certify_bounds(&p).unwrap();
        assert!(cert.holds(), "{cert:?}");
        let s = boolos_sentence(&p, Some(0)).unwrap();
        let f = s.formula.unwrap();
        assert!(f.is_sentence());
        assert_eq!(s.length, cert.psi_t_len);
        assert!(s.length < s.t_value);
        let templ = boolos_sentence(&p, None).unwrap();
        assert!(templ.text.contains(NUMERAL_MARKER));
        assert!(!templ.text.contains("v0"));
        assert!(boolos_sentence(&PhiProvider::Mock { length: 50, occurrences: 2 }, None).unwrap().text.contains("#n"));
    }

    #[test]
    fn witness_refutations() {
        let mu = parse_formula("v0 + v1 = v3").unwrap();
        assert_eq!(refute_witnesses(&mu, 1, &Term::numeral(1), 5), Err(BerryError::Refused { j: 2 }));
        let lt = parse_formula("s v3 <= v0").unwrap();
        let ds = refute_witnesses(&lt, 0, &Term::numeral(1), 10).unwrap();
        assert_eq!(ds.len(), 11);
        assert_eq!(refute_witnesses(&lt, 0, &Term::numeral(1), 0).unwrap().len(), 1);
    }
}
