//! JSON reading and writing for polytopes, p-adic numbers, complexes, cells
//! and polynomials. Keys are emitted sorted, so output is byte-stable.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cells::{CellularMonoplex, MonomialCell, MonomialFn};
use crate::complex::{Block, PadicSimplex, SimplicialComplex};
use crate::direction::Polynomial;
use crate::gamma::{AffineMap, Bound, DiscretePolytope, Gamma, IndexSet, Level};
use crate::padic::{PadicNumber, DEFAULT_PRECISION};
use crate::rat::{self, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    /// The input does not follow the schema.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// The input parses but describes an invalid object.
    #[error("invalid input: {0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, IoError>;

fn malformed<T>(s: impl Into<String>) -> Result<T> {
    Err(IoError::Malformed(s.into()))
}

fn invalid(e: impl std::fmt::Display) -> IoError {
    IoError::Invalid(e.to_string())
}

/// Prime, working precision and seed, read from the top-level `"context"` object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    pub p: u64,
    pub precision: u32,
    pub seed: u64,
}

impl Default for Context {
    fn default() -> Self {
        Context { p: 3, precision: DEFAULT_PRECISION, seed: 0 }
    }
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| IoError::Malformed(e.to_string()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| IoError::Malformed(format!("missing field \"{key}\"")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| IoError::Malformed(format!("{what} must be a nonnegative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| IoError::Malformed(format!("{what} must be an integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| IoError::Malformed(format!("{what} must be an array")))
}

fn as_index(v: &Value, what: &str) -> Result<usize> {
    as_u64(v, what).map(|n| n as usize)
}

pub fn parse_context(root: &Value) -> Result<Context> {
    let mut c = Context::default();
    let Some(v) = root.get("context") else { return Ok(c) };
    if let Some(p) = v.get("p") {
        c.p = as_u64(p, "context.p")?;
        let prime = c.p >= 2 && (2..).take_while(|d| d * d <= c.p).all(|d| c.p % d != 0);
        if !prime {
            return Err(IoError::Invalid(format!("{} is not a prime", c.p)));
        }
    }
    if let Some(k) = v.get("precision") {
        c.precision = as_u64(k, "context.precision")? as u32;
    }
    if let Some(s) = v.get("seed") {
        c.seed = as_u64(s, "context.seed")?;
    }
    Ok(c)
}

/// A rational given as a string `"a/b"` or a JSON integer.
pub fn parse_rat(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => rat::parse(s).ok_or_else(|| IoError::Malformed(format!("bad rational \"{s}\""))),
        Value::Number(n) => n.as_i64().map(rat::int).ok_or_else(|| IoError::Malformed(format!("bad rational {n}"))),
        _ => malformed("rationals are strings or integers"),
    }
}

pub fn write_rat(q: &Q) -> Value {
    Value::String(rat::format(q))
}

fn parse_coord(k: &str) -> Result<usize> {
    match k.parse::<usize>() {
        Ok(i) if i > 0 => Ok(i),
        _ => malformed(format!("bad coordinate index \"{k}\"")),
    }
}

/// `{"const": rat, "coeffs": {"1": rat, ...}}`; both fields default to zero.
pub fn parse_affine(v: &Value) -> Result<AffineMap> {
    if !v.is_object() {
        return malformed("affine maps are objects");
    }
    let constant = match v.get("const") {
        Some(c) => parse_rat(c)?,
        None => rat::int(0),
    };
    let mut coeffs = BTreeMap::new();
    if let Some(cs) = v.get("coeffs") {
        let cs = cs.as_object().ok_or_else(|| IoError::Malformed("coeffs must be an object".into()))?;
        for (k, c) in cs {
            coeffs.insert(parse_coord(k)?, parse_rat(c)?);
        }
    }
    Ok(AffineMap::new(constant, coeffs))
}

pub fn write_affine(f: &AffineMap) -> Value {
    let coeffs: Map<String, Value> = f.coeffs().iter().map(|(i, c)| (i.to_string(), write_rat(c))).collect();
    json!({"const": write_rat(f.constant_term()), "coeffs": coeffs})
}

fn is_inf(v: &Value) -> bool {
    matches!(v.as_str(), Some("+inf" | "inf"))
}

fn parse_level(v: &Value, i: usize) -> Result<Level> {
    let inside = field(v, "support")?
        .as_bool()
        .ok_or_else(|| IoError::Malformed(format!("level {i}: support must be a boolean")))?;
    if !inside {
        return Ok(Level::Out);
    }
    let mu = parse_affine(field(v, "mu")?)?;
    let nu = match v.get("nu") {
        None => Bound::Inf,
        Some(n) if is_inf(n) => Bound::Inf,
        Some(n) => Bound::Affine(parse_affine(n)?),
    };
    Ok(Level::In { mu, nu })
}

/// Levels of a polytope, checked only against the schema.
pub fn parse_levels(v: &Value) -> Result<Vec<Level>> {
    let q = as_index(field(v, "q")?, "q")?;
    let levels = as_array(field(v, "levels")?, "levels")?;
    if levels.len() != q {
        return malformed(format!("q = {q} but {} levels are given", levels.len()));
    }
    levels.iter().enumerate().map(|(i, l)| parse_level(l, i + 1)).collect()
}

pub fn parse_polytope(v: &Value) -> Result<DiscretePolytope> {
    DiscretePolytope::new(parse_levels(v)?).map_err(invalid)
}

pub fn write_polytope(a: &DiscretePolytope) -> Value {
    let levels: Vec<Value> = a
        .levels()
        .iter()
        .map(|l| match l {
            Level::Out => json!({"support": false}),
            Level::In { mu, nu } => {
                let nu = match nu {
                    Bound::Inf => json!("+inf"),
                    Bound::Affine(f) => write_affine(f),
                };
                json!({"support": true, "mu": write_affine(mu), "nu": nu})
            }
        })
        .collect();
    json!({"q": a.dim(), "levels": levels})
}

pub fn write_set(s: &IndexSet) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

pub fn write_gamma_point(a: &[Gamma]) -> Value {
    Value::Array(
        a.iter()
            .map(|g| match g {
                Gamma::Fin(v) => json!(v),
                Gamma::Inf => json!("+inf"),
            })
            .collect(),
    )
}

/// `{"zero": true}`, `{"rat": "a/b"}` for exact values, or
/// `{"v": int, "unit": "int", "prec": int}` for `p^v·(unit + O(p^prec))`.
/// Bare rationals (strings or integers) are accepted as exact values.
pub fn parse_padic(p: u64, v: &Value) -> Result<PadicNumber> {
    if v.is_string() || v.is_number() {
        return Ok(PadicNumber::from_rational(p, parse_rat(v)?));
    }
    if !v.is_object() {
        return malformed("p-adic numbers are objects, strings or integers");
    }
    if v.get("zero").and_then(Value::as_bool) == Some(true) {
        return Ok(PadicNumber::zero(p));
    }
    if let Some(r) = v.get("rat") {
        return Ok(PadicNumber::from_rational(p, parse_rat(r)?));
    }
    let val = as_i64(field(v, "v")?, "v")?;
    let unit: BigInt = match field(v, "unit")? {
        Value::String(s) => s.trim().parse().map_err(|_| IoError::Malformed(format!("bad unit \"{s}\"")))?,
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| IoError::Malformed("bad unit".into()))?,
        _ => return malformed("unit must be an integer or a string"),
    };
    let prec = as_u64(field(v, "prec")?, "prec")? as u32;
    PadicNumber::from_parts(p, val, unit, prec).map_err(invalid)
}

pub fn write_padic(x: &PadicNumber) -> Value {
    if x.is_zero() {
        return json!({"zero": true});
    }
    if let Some(q) = x.as_rational() {
        return json!({"rat": write_rat(q)});
    }
    let (v, unit, prec) = x.to_parts(0).expect("nonzero approximate value");
    json!({"v": v, "unit": unit.to_string(), "prec": prec})
}

pub fn parse_point(p: u64, v: &Value) -> Result<Vec<PadicNumber>> {
    as_array(v, "point")?.iter().map(|x| parse_padic(p, x)).collect()
}

pub fn write_point(x: &[PadicNumber]) -> Value {
    Value::Array(x.iter().map(write_padic).collect())
}

pub fn parse_simplex(m: u32, v: &Value) -> Result<PadicSimplex> {
    PadicSimplex::new(m, parse_polytope(v)?).map_err(invalid)
}

/// `{"M": int, "blocks": [{"q": int, "simplexes": [...], "rooted": bool}]}`.
pub fn parse_complex(v: &Value) -> Result<SimplicialComplex> {
    let m = as_u64(field(v, "M")?, "M")? as u32;
    let mut blocks = Vec::new();
    for b in as_array(field(v, "blocks")?, "blocks")? {
        let q = as_index(field(b, "q")?, "q")?;
        let rooted = b.get("rooted").map_or(Ok(false), |r| {
            r.as_bool().ok_or_else(|| IoError::Malformed("rooted must be a boolean".into()))
        })?;
        let mut simplexes = Vec::new();
        for s in as_array(field(b, "simplexes")?, "simplexes")? {
            let levels = parse_levels(s)?;
            if levels.len() != q {
                return Err(IoError::Invalid(format!("a simplex of a block with q = {q} has dimension {}", levels.len())));
            }
            simplexes.push(parse_simplex(m, s)?);
        }
        blocks.push(Block { q, simplexes, rooted });
    }
    Ok(SimplicialComplex { m, blocks })
}

pub fn write_complex(c: &SimplicialComplex) -> Value {
    let blocks: Vec<Value> = c
        .blocks
        .iter()
        .map(|b| {
            let s: Vec<Value> = b.simplexes.iter().map(|s| write_polytope(s.shape())).collect();
            json!({"q": b.q, "simplexes": s, "rooted": b.rooted})
        })
        .collect();
    json!({"M": c.m, "blocks": blocks})
}

/// `"0"`, `"inf"`/`"+inf"`, or `{"coef": padic, "exps": {"1": int, ...}}`.
pub fn parse_monomial(p: u64, v: &Value) -> Result<MonomialFn> {
    if is_inf(v) {
        return Ok(MonomialFn::Infinity);
    }
    if v.as_str() == Some("0") || v.as_i64() == Some(0) {
        return Ok(MonomialFn::Zero);
    }
    if !v.is_object() {
        return malformed("monomials are objects, \"0\" or \"inf\"");
    }
    let coef = parse_padic(p, field(v, "coef")?)?;
    let mut exps = BTreeMap::new();
    if let Some(es) = v.get("exps") {
        let es = es.as_object().ok_or_else(|| IoError::Malformed("exps must be an object".into()))?;
        for (k, e) in es {
            exps.insert(parse_coord(k)?, as_i64(e, "exponent")?);
        }
    }
    Ok(MonomialFn::mono(coef, exps))
}

pub fn write_monomial(f: &MonomialFn) -> Value {
    match f {
        MonomialFn::Zero => json!("0"),
        MonomialFn::Infinity => json!("inf"),
        MonomialFn::Mono { coef, exps } => {
            let e: Map<String, Value> = exps.iter().map(|(i, k)| (i.to_string(), json!(k))).collect();
            json!({"coef": write_padic(coef), "exps": e})
        }
    }
}

/// A cell. `"socle"` is an index into `socles` or an inline polytope.
pub fn parse_cell(p: u64, m: u32, socles: &[PadicSimplex], v: &Value) -> Result<MonomialCell> {
    let socle = match field(v, "socle")? {
        Value::Number(n) => {
            let i = n.as_u64().ok_or_else(|| IoError::Malformed("socle reference must be an index".into()))? as usize;
            socles.get(i).cloned().ok_or_else(|| IoError::Malformed(format!("no socle {i}")))?
        }
        s => parse_simplex(m, s)?,
    };
    let c = parse_monomial(p, field(v, "c")?)?;
    let nu = v.get("nu").map_or(Ok(MonomialFn::Zero), |x| parse_monomial(p, x))?;
    let mu = v.get("mu").map_or(Ok(MonomialFn::Zero), |x| parse_monomial(p, x))?;
    let lambda = parse_padic(p, field(v, "lambda")?)?;
    let n = as_u64(field(v, "N")?, "N")?;
    let mp = as_u64(field(v, "Mp")?, "Mp")? as u32;
    let cell = MonomialCell::new(socle, c, nu, mu, lambda, n, mp).map_err(invalid)?;
    if let Some(t) = v.get("type") {
        let t = as_u64(t, "type")?;
        if t != cell.ty() as u64 {
            return Err(IoError::Invalid(format!("declared type {t} but λ gives type {}", cell.ty())));
        }
    }
    Ok(cell)
}

pub fn write_cell(c: &MonomialCell) -> Value {
    json!({
        "socle": write_polytope(c.socle().shape()),
        "c": write_monomial(c.center()),
        "nu": write_monomial(c.nu()),
        "mu": write_monomial(c.mu()),
        "lambda": write_padic(c.lambda()),
        "N": c.n(),
        "Mp": c.mp(),
        "type": c.ty(),
    })
}

/// `{"M": int, "socles": [...], "cells": [...], "tree": [[parent, child], ...]}`.
pub fn parse_monoplex(p: u64, v: &Value) -> Result<CellularMonoplex> {
    let m = as_u64(field(v, "M")?, "M")? as u32;
    let socles = match v.get("socles") {
        Some(s) => as_array(s, "socles")?.iter().map(|x| parse_simplex(m, x)).collect::<Result<Vec<_>>>()?,
        None => Vec::new(),
    };
    let cells = as_array(field(v, "cells")?, "cells")?
        .iter()
        .map(|c| parse_cell(p, m, &socles, c))
        .collect::<Result<Vec<_>>>()?;
    let mut tree = Vec::new();
    for e in as_array(field(v, "tree")?, "tree")? {
        let pair = as_array(e, "tree edge")?;
        if pair.len() != 2 {
            return malformed("tree edges are [parent, child] pairs");
        }
        let (a, b) = (as_index(&pair[0], "parent")?, as_index(&pair[1], "child")?);
        if a >= cells.len() || b >= cells.len() {
            return malformed(format!("tree edge [{a}, {b}] refers to a missing cell"));
        }
        tree.push((a, b));
    }
    Ok(CellularMonoplex { cells, tree })
}

pub fn write_monoplex(m: &CellularMonoplex) -> Value {
    let cells: Vec<Value> = m.cells.iter().map(write_cell).collect();
    let tree: Vec<Value> = m.tree.iter().map(|(a, b)| json!([a, b])).collect();
    let index = m.cells.first().map_or(1, |c| c.socle().index());
    json!({"M": index, "cells": cells, "tree": tree})
}

/// `{"terms": [{"exp": [e1, .., em, eT], "coef": rat}]}`; `"nvars"` is needed
/// only when there are no terms.
pub fn parse_polynomial(v: &Value) -> Result<Polynomial> {
    let terms = as_array(field(v, "terms")?, "terms")?;
    let nvars = match v.get("nvars") {
        Some(n) => as_index(n, "nvars")?,
        None => match terms.first() {
            Some(t) => as_array(field(t, "exp")?, "exp")?.len(),
            None => return malformed("a polynomial without terms needs \"nvars\""),
        },
    };
    if nvars == 0 {
        return malformed("polynomials need at least the variable T");
    }
    let mut out = Vec::new();
    for t in terms {
        let exp = as_array(field(t, "exp")?, "exp")?
            .iter()
            .map(|e| as_u64(e, "exponent").map(|k| k as u32))
            .collect::<Result<Vec<u32>>>()?;
        if exp.len() != nvars {
            return malformed("exponent vectors have different lengths");
        }
        out.push((exp, parse_rat(field(t, "coef")?)?));
    }
    Ok(Polynomial::from_terms(nvars, out))
}

pub fn write_polynomial(f: &Polynomial) -> Value {
    let terms: Vec<Value> = f.terms().iter().map(|(e, c)| json!({"exp": e, "coef": write_rat(c)})).collect();
    json!({"nvars": f.nvars(), "terms": terms})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::level;

    #[test]
    fn polytope_round_trip() {
        let a = DiscretePolytope::new(vec![
            level(AffineMap::from_ints(0, &[]), None),
            level(AffineMap::from_ints(0, &[]), Some(AffineMap::from_ints(0, &[(1, 2)]))),
            Level::Out,
        ])
        .unwrap();
        let v = write_polytope(&a);
        assert_eq!(parse_polytope(&v).unwrap(), a);
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.contains("\"nu\":\"+inf\""));
    }

    #[test]
    fn malformed_and_invalid() {
        let bad = parse_json(r#"{"q": 2, "levels": [{"support": true}]}"#).unwrap();
        assert!(matches!(parse_polytope(&bad), Err(IoError::Malformed(_))));
        let inv = parse_json(
            r#"{"q": 1, "levels": [{"support": true, "mu": {"const": "0", "coeffs": {"1": "1"}}, "nu": "+inf"}]}"#,
        )
        .unwrap();
        assert!(matches!(parse_polytope(&inv), Err(IoError::Invalid(_))));
        assert!(parse_json("{").is_err());
    }

    #[test]
    fn padic_forms() {
        let p = 3;
        let x = parse_padic(p, &json!({"v": 2, "unit": "5", "prec": 4})).unwrap();
        assert_eq!(x.valuation(), Gamma::Fin(2));
        assert_eq!(parse_padic(p, &write_padic(&x)).unwrap(), x);
        let r = parse_padic(p, &json!("9/2")).unwrap();
        assert_eq!(write_padic(&r), json!({"rat": "9/2"}));
        assert!(parse_padic(p, &json!({"zero": true})).unwrap().is_zero());
        assert!(matches!(parse_padic(p, &json!([1])), Err(IoError::Malformed(_))));
    }

    #[test]
    fn polynomials_and_context() {
        let v = json!({"terms": [{"exp": [1, 1], "coef": "1"}, {"exp": [0, 0], "coef": -1}]});
        let f = parse_polynomial(&v).unwrap();
        assert_eq!(f.to_string(), "X1*T + -1");
        assert_eq!(parse_polynomial(&write_polynomial(&f)).unwrap(), f);
        let c = parse_context(&json!({"context": {"p": 5, "seed": 9}})).unwrap();
        assert_eq!((c.p, c.precision, c.seed), (5, DEFAULT_PRECISION, 9));
        assert!(matches!(parse_context(&json!({"context": {"p": 4}})), Err(IoError::Invalid(_))));
    }
}
