//! Prime-power Gödel numbering.
//!
//! A token sequence `⟨s0, …, sj⟩` is coded as `p0^⌜s0⌝ · … · pj^⌜sj⌝`
//! where `pi` is the i-th prime (`p0 = 2`). Primitive symbols other than
//! variables get codes below a constant `c`; variable `v_i` gets `c + i`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::syntax::{self, Expr, Formula, Term, Token, Var};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CodingError {
    #[error("not a code: {0}")]
    NotACode(String),
    #[error("not well formed: {0}")]
    NotWellFormed(String),
    #[error("code denotes a term, not a formula")]
    NotAFormula,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// The fixed, non-variable symbols in table order.
pub const PRIMITIVE_SYMBOLS: [Token; 15] = [
    Token::Zero,
    Token::S,
    Token::Plus,
    Token::Star,
    Token::Eq,
    Token::Le,
    Token::Not,
    Token::And,
    Token::Or,
    Token::Imp,
    Token::Iff,
    Token::All,
    Token::Ex,
    Token::LParen,
    Token::RParen,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTable {
    codes: [u64; 15],
    c: u64,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::standard()
    }
}

impl SymbolTable {
    /// `0→1, s→2, +→3, *→4, =→5, <=→6, ~→7, &→8, |→9, ->→10, <->→11,
    /// A→12, E→13, (→14, )→15`, `c = 16`.
    pub fn standard() -> Self {
        let mut codes = [0; 15];
        for (i, c) in codes.iter_mut().enumerate() {
            *c = i as u64 + 1;
        }
        SymbolTable { codes, c: 16 }
    }

    /// A custom table. Codes must be positive, distinct and below `c`.
    pub fn new(codes: [u64; 15], c: u64) -> Result<Self, CodingError> {
        for (i, &a) in codes.iter().enumerate() {
            if a == 0 || a >= c {
                return Err(CodingError::InvalidArgument(format!(
                    "code {a} of {} must lie in 1..{c}",
                    PRIMITIVE_SYMBOLS[i]
                )));
            }
            if codes[..i].contains(&a) {
                return Err(CodingError::InvalidArgument(format!("duplicate code {a}")));
            }
        }
        Ok(SymbolTable { codes, c })
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn code(&self, tok: Token) -> u64 {
        match tok {
            Token::Var(i) => self.c + u64::from(i),
            other => {
                let pos = PRIMITIVE_SYMBOLS.iter().position(|t| *t == other).expect("primitive symbol");
                self.codes[pos]
            }
        }
    }

    pub fn token(&self, code: u64) -> Option<Token> {
        if code >= self.c {
            return u32::try_from(code - self.c).ok().map(Token::Var);
        }
        self.codes.iter().position(|&c| c == code).map(|i| PRIMITIVE_SYMBOLS[i])
    }

    /// `h(j) = max({c} ∪ {⌜v_i⌝ : i <= j}) = c + j`.
    pub fn h(&self, j: u64) -> Result<u64, CodingError> {
        if j == 0 {
            return Err(CodingError::InvalidArgument("j must be at least 1".into()));
        }
        Ok(self.c + j)
    }

    /// `g(j) = p_j^(h(j)·j)`, an upper bound on the code of any formula of
    /// length below `j` whose variables are among `v0 .. v(j-1)`.
    pub fn g(&self, j: u64) -> Result<BigUint, CodingError> {
        let h = self.h(j)?;
        let exp = u32::try_from(h * j)
            .map_err(|_| CodingError::InvalidArgument(format!("g({j}) is too large to materialize")))?;
        let p = nth_prime(usize::try_from(j).map_err(|_| CodingError::InvalidArgument("j too large".into()))?);
        Ok(BigUint::from(p).pow(exp))
    }

    pub fn encode_tokens(&self, tokens: &[Token]) -> BigUint {
        let ps = first_primes(tokens.len());
        tokens.iter().zip(ps).fold(BigUint::one(), |acc, (t, p)| {
            let e = u32::try_from(self.code(*t)).expect("symbol code fits in u32");
            acc * BigUint::from(p).pow(e)
        })
    }

    pub fn encode(&self, e: &Expr) -> BigUint {
        self.encode_tokens(&syntax::token_seq(e))
    }

    pub fn encode_formula(&self, f: &Formula) -> BigUint {
        self.encode_tokens(&syntax::render::formula_token_seq(f))
    }

    /// Factors `n` into the token sequence it codes.
    pub fn decode_tokens(&self, n: &BigUint) -> Result<Vec<Token>, CodingError> {
        if n.is_zero() {
            return Err(CodingError::NotACode("0 is reserved".into()));
        }
        if n.is_one() {
            return Err(CodingError::NotACode("1 codes the empty sequence".into()));
        }
        let mut rest = n.clone();
        let mut tokens = Vec::new();
        let mut i = 0;
        while !rest.is_one() {
            let p = BigUint::from(nth_prime(i));
            let mut e = 0u64;
            loop {
                let (q, r) = (&rest / &p, &rest % &p);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e == 0 {
                return Err(CodingError::NotACode(format!(
                    "prime p{i} = {p} is missing while larger primes divide the number"
                )));
            }
            let tok = self
                .token(e)
                .ok_or_else(|| CodingError::NotACode(format!("exponent {e} of p{i} is not a symbol code")))?;
            tokens.push(tok);
            i += 1;
        }
        Ok(tokens)
    }

    /// Inverse of [`SymbolTable::encode`]. Only codes of canonical renderings
    /// decode, so `encode(decode(n)) == n` whenever decoding succeeds.
    pub fn decode(&self, n: &BigUint) -> Result<Expr, CodingError> {
        let tokens = self.decode_tokens(n)?;
        let text = tokens.iter().map(|t| t.text()).collect::<Vec<_>>().join(" ");
        let e = syntax::parse(&text).map_err(|err| CodingError::NotWellFormed(format!("`{text}`: {err}")))?;
        if syntax::token_seq(&e) != tokens {
            return Err(CodingError::NotWellFormed(format!("`{text}` is not in canonical form")));
        }
        Ok(e)
    }

    pub fn decode_formula(&self, n: &BigUint) -> Result<Formula, CodingError> {
        match self.decode(n)? {
            Expr::Formula(f) => Ok(f),
            Expr::Term(_) => Err(CodingError::NotAFormula),
        }
    }

    /// `f(i, ⌜μ⌝) = ⌜(A v0)(μ <-> v0 = i)⌝`.
    pub fn f_code(&self, i: u64, m: &BigUint) -> Result<BigUint, CodingError> {
        let mu = self.decode_formula(m)?;
        Ok(self.encode_formula(&naming_sentence(&mu, i)))
    }
}

/// `(A v0)(μ <-> v0 = i)`: the sentence whose provability makes μ name `i`.
pub fn naming_sentence(mu: &Formula, i: u64) -> Formula {
    Formula::forall(Var(0), Formula::iff(mu.clone(), Formula::eq(Term::var(0), Term::numeral(i))))
}

pub fn encode(e: &Expr) -> BigUint {
    SymbolTable::standard().encode(e)
}

pub fn encode_formula(f: &Formula) -> BigUint {
    SymbolTable::standard().encode_formula(f)
}

pub fn decode(n: &BigUint) -> Result<Expr, CodingError> {
    SymbolTable::standard().decode(n)
}

pub fn decode_formula(n: &BigUint) -> Result<Formula, CodingError> {
    SymbolTable::standard().decode_formula(n)
}

pub fn f_code(i: u64, m: &BigUint) -> Result<BigUint, CodingError> {
    SymbolTable::standard().f_code(i, m)
}

pub fn h(j: u64) -> Result<u64, CodingError> {
    SymbolTable::standard().h(j)
}

pub fn g(j: u64) -> Result<BigUint, CodingError> {
    SymbolTable::standard().g(j)
}

fn prime_cache() -> &'static Mutex<Vec<u64>> {
    static CACHE: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![2, 3]))
}

fn extend_primes(ps: &mut Vec<u64>, count: usize) {
    let mut cand = *ps.last().expect("seeded") + 2;
    while ps.len() < count {
        let is_prime = ps.iter().skip(1).take_while(|&&p| p * p <= cand).all(|&p| !cand.is_multiple_of(p));
        if is_prime {
            ps.push(cand);
        }
        cand += 2;
    }
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut ps = prime_cache().lock().expect("prime cache poisoned");
    extend_primes(&mut ps, count);
    ps[..count].to_vec()
}

/// The `n`-th prime, counting from `p0 = 2`.
pub fn nth_prime(n: usize) -> u64 {
    let mut ps = prime_cache().lock().expect("prime cache poisoned");
    extend_primes(&mut ps, n + 1);
    ps[n]
}

/// Converts a small code to `u64` for display purposes.
pub fn code_to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}
