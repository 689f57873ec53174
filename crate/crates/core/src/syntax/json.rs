//! JSON encoding of the AST: tagged objects such as
//! `{"k":"mul","l":…,"r":…}` and `{"k":"var","i":3}`.

use serde_json::{json, Map, Value};
use thiserror::Error;

use super::ast::{Expr, Formula, Term, Var};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum JsonAstError {
    #[error("missing or invalid field `{0}`")]
    Field(&'static str),
    #[error("unknown node kind `{0}`")]
    Kind(String),
    #[error("expected a {0}")]
    Sort(&'static str),
}

pub fn term_to_json(t: &Term) -> Value {
    match t {
        Term::Zero => json!({"k": "zero"}),
        Term::Var(v) => json!({"k": "var", "i": v.0}),
        Term::Succ(a) => json!({"k": "succ", "a": term_to_json(a)}),
        Term::Add(l, r) => json!({"k": "add", "l": term_to_json(l), "r": term_to_json(r)}),
        Term::Mul(l, r) => json!({"k": "mul", "l": term_to_json(l), "r": term_to_json(r)}),
    }
}

pub fn formula_to_json(f: &Formula) -> Value {
    let bin = |k: &str, a: &Formula, b: &Formula| json!({"k": k, "l": formula_to_json(a), "r": formula_to_json(b)});
    match f {
        Formula::Eq(l, r) => json!({"k": "eq", "l": term_to_json(l), "r": term_to_json(r)}),
        Formula::Le(l, r) => json!({"k": "le", "l": term_to_json(l), "r": term_to_json(r)}),
        Formula::Not(a) => json!({"k": "not", "a": formula_to_json(a)}),
        Formula::And(a, b) => bin("and", a, b),
        Formula::Or(a, b) => bin("or", a, b),
        Formula::Imp(a, b) => bin("imp", a, b),
        Formula::Iff(a, b) => bin("iff", a, b),
        Formula::Forall(v, body) => json!({"k": "forall", "v": v.0, "body": formula_to_json(body)}),
        Formula::Exists(v, body) => json!({"k": "exists", "v": v.0, "body": formula_to_json(body)}),
        Formula::BoundedForall(v, b, body) => {
            json!({"k": "bforall", "v": v.0, "bound": term_to_json(b), "body": formula_to_json(body)})
        }
        Formula::BoundedExists(v, b, body) => {
            json!({"k": "bexists", "v": v.0, "bound": term_to_json(b), "body": formula_to_json(body)})
        }
    }
}

pub fn to_json(e: &Expr) -> Value {
    match e {
        Expr::Term(t) => term_to_json(t),
        Expr::Formula(f) => formula_to_json(f),
    }
}

fn obj(v: &Value) -> Result<&Map<String, Value>, JsonAstError> {
    v.as_object().ok_or(JsonAstError::Field("k"))
}

fn kind(m: &Map<String, Value>) -> Result<&str, JsonAstError> {
    m.get("k").and_then(Value::as_str).ok_or(JsonAstError::Field("k"))
}

fn var_field(m: &Map<String, Value>, name: &'static str) -> Result<Var, JsonAstError> {
    m.get(name).and_then(Value::as_u64).and_then(|i| u32::try_from(i).ok()).map(Var).ok_or(JsonAstError::Field(name))
}

fn sub<'a>(m: &'a Map<String, Value>, name: &'static str) -> Result<&'a Value, JsonAstError> {
    m.get(name).ok_or(JsonAstError::Field(name))
}

pub fn term_from_json(v: &Value) -> Result<Term, JsonAstError> {
    let m = obj(v)?;
    Ok(match kind(m)? {
        "zero" => Term::Zero,
        "var" => Term::Var(var_field(m, "i")?),
        "succ" => Term::succ(term_from_json(sub(m, "a")?)?),
        "add" => Term::add(term_from_json(sub(m, "l")?)?, term_from_json(sub(m, "r")?)?),
        "mul" => Term::mul(term_from_json(sub(m, "l")?)?, term_from_json(sub(m, "r")?)?),
        "eq" | "le" | "not" | "and" | "or" | "imp" | "iff" | "forall" | "exists" | "bforall" | "bexists" => {
            return Err(JsonAstError::Sort("term"))
        }
        other => return Err(JsonAstError::Kind(other.to_string())),
    })
}

pub fn formula_from_json(v: &Value) -> Result<Formula, JsonAstError> {
    let m = obj(v)?;
    let f = |name| formula_from_json(sub(m, name)?);
    let t = |name| term_from_json(sub(m, name)?);
    Ok(match kind(m)? {
        "eq" => Formula::eq(t("l")?, t("r")?),
        "le" => Formula::le(t("l")?, t("r")?),
        "not" => Formula::not(f("a")?),
        "and" => Formula::and(f("l")?, f("r")?),
        "or" => Formula::or(f("l")?, f("r")?),
        "imp" => Formula::imp(f("l")?, f("r")?),
        "iff" => Formula::iff(f("l")?, f("r")?),
        "forall" => Formula::forall(var_field(m, "v")?, f("body")?),
        "exists" => Formula::exists(var_field(m, "v")?, f("body")?),
        "bforall" => Formula::bforall(var_field(m, "v")?, t("bound")?, f("body")?),
        "bexists" => Formula::bexists(var_field(m, "v")?, t("bound")?, f("body")?),
        "zero" | "var" | "succ" | "add" | "mul" => return Err(JsonAstError::Sort("formula")),
        other => return Err(JsonAstError::Kind(other.to_string())),
    })
}

pub fn from_json(v: &Value) -> Result<Expr, JsonAstError> {
    match formula_from_json(v) {
        Ok(f) => Ok(Expr::Formula(f)),
        Err(JsonAstError::Sort(_)) => term_from_json(v).map(Expr::Term),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_shape() {
        let t = Term::mul(Term::var(3), Term::Zero);
        assert_eq!(term_to_json(&t), json!({"k":"mul","l":{"k":"var","i":3},"r":{"k":"zero"}}));
        let e = Expr::Formula(Formula::forall(Var(0), Formula::le(Term::var(0), Term::numeral(1))));
        assert_eq!(from_json(&to_json(&e)).unwrap(), e);
        assert_eq!(from_json(&term_to_json(&t)).unwrap(), Expr::Term(t));
    }

    #[test]
    fn rejects_unknown_kind() {
        assert_eq!(from_json(&json!({"k":"pow"})), Err(JsonAstError::Kind("pow".into())));
    }
}
