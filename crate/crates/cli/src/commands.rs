//! One function per subcommand. Each returns the JSON report, whether the
//! input was valid, and an optional DOT graph.

use ptri_core::cells::CellularMonoplex;
use ptri_core::complex::{build_retraction, validate_complex, PadicSimplex, Rule};
use ptri_core::direction::{certify_direction, find_direction, leading_form, shear};
use ptri_core::dispatch::{build_lift, dispatch, verify, DispatchResult, Indices};
use ptri_core::dot::{digraph, supp_label};
use ptri_core::gamma::{format_set, DiscretePolytope, IndexSet};
use ptri_core::io::{self, Context, IoError};
use ptri_core::oracle::{enumerate_closure, enumerate_members, sample_padic, Window};
use serde_json::{json, Map, Value};

pub struct Outcome {
    pub report: Value,
    pub valid: bool,
    pub dot: Option<String>,
}

pub struct Flags {
    pub samples: Option<usize>,
    pub depth: Option<i64>,
}

type Result<T> = std::result::Result<T, IoError>;

fn ok(report: Value, dot: Option<String>) -> Outcome {
    Outcome { report, valid: true, dot }
}

fn fail(report: Value) -> Outcome {
    Outcome { report, valid: false, dot: None }
}

fn error_report(e: impl std::fmt::Display) -> Outcome {
    fail(json!({"valid": false, "error": e.to_string()}))
}

/// Invalid objects become a report with exit status 1; malformed input propagates.
fn or_report<T>(r: Result<T>) -> Result<std::result::Result<T, Outcome>> {
    match r {
        Ok(t) => Ok(Ok(t)),
        Err(IoError::Invalid(e)) => Ok(Err(error_report(e))),
        Err(e) => Err(e),
    }
}

macro_rules! parse_or_report {
    ($e:expr) => {
        match or_report($e)? {
            Ok(t) => t,
            Err(o) => return Ok(o),
        }
    };
}

/// The polytope is either the whole input or its `"polytope"` field.
fn polytope_value(root: &Value) -> &Value {
    root.get("polytope").unwrap_or(root)
}

fn sets(s: &[IndexSet]) -> Value {
    Value::Array(s.iter().map(io::write_set).collect())
}

fn indices(s: &Indices) -> Value {
    json!(s.iter().collect::<Vec<_>>())
}

pub fn validate_polytope(root: &Value) -> Result<Outcome> {
    let a = parse_or_report!(io::parse_polytope(polytope_value(root)));
    Ok(ok(
        json!({
            "valid": true,
            "q": a.dim(),
            "support": io::write_set(&a.support()),
            "lexmin": io::write_gamma_point(&a.lexmin_point()),
        }),
        None,
    ))
}

/// Edges of the covering relation between face supports.
fn cover_edges(supports: &[IndexSet]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (i, a) in supports.iter().enumerate() {
        for (j, b) in supports.iter().enumerate() {
            let between = |c: &IndexSet| a.is_subset(c) && c.is_subset(b) && c != a && c != b;
            if a != b && a.is_subset(b) && !supports.iter().any(between) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn face_dot(supports: &[IndexSet]) -> String {
    let labels: Vec<String> = supports.iter().map(|s| format!("Supp={}", format_set(s))).collect();
    digraph(&labels, &cover_edges(supports))
}

pub fn faces(root: &Value) -> Result<Outcome> {
    let a = parse_or_report!(io::parse_polytope(polytope_value(root)));
    let faces = match a.faces() {
        Ok(f) => f,
        Err(e) => return Ok(error_report(e)),
    };
    let supports: Vec<IndexSet> = faces.iter().map(|(j, _)| j.clone()).collect();
    let list: Vec<Value> =
        faces.iter().map(|(j, f)| json!({"support": io::write_set(j), "polytope": io::write_polytope(f)})).collect();
    Ok(ok(json!({"faces": list}), Some(face_dot(&supports))))
}

pub fn simplex_check(root: &Value) -> Result<Outcome> {
    let a: DiscretePolytope = parse_or_report!(io::parse_polytope(polytope_value(root)));
    let report = match a.is_simplex() {
        Ok(r) => r,
        Err(e) => return Ok(error_report(e)),
    };
    let chain: Vec<IndexSet> = report.faces.iter().map(|(j, _)| j.clone()).collect();
    let incomparable = report.incomparable.as_ref().map(|(x, y)| sets(&[x.clone(), y.clone()]));
    let out = json!({
        "is_simplex": report.is_simplex(),
        "faces": sets(&chain),
        "incomparable": incomparable,
    });
    Ok(Outcome { report: out, valid: report.is_simplex(), dot: Some(face_dot(&chain)) })
}

fn complex_dot(blocks: &[Vec<PadicSimplex>]) -> String {
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for simplexes in blocks {
        let (elems, parent) = ptri_core::complex::specialization_edges(simplexes);
        let off = labels.len();
        labels.extend(elems.iter().map(supp_label));
        edges.extend(parent.iter().map(|(&s, &f)| (f + off, s + off)));
    }
    digraph(&labels, &edges)
}

pub fn complex_check(root: &Value) -> Result<Outcome> {
    let c = parse_or_report!(io::parse_complex(root.get("complex").unwrap_or(root)));
    let r = validate_complex(&c);
    let mut violations = r.violations.clone();
    violations.sort();
    let out = json!({
        "is_complex": r.is_complex,
        "is_monoplex": r.is_monoplex,
        "is_closed": r.is_closed,
        "is_well_dispatched": r.is_well_dispatched,
        "violations": violations,
    });
    let blocks: Vec<Vec<PadicSimplex>> = c.blocks.iter().map(|b| b.simplexes.clone()).collect();
    Ok(Outcome { report: out, valid: r.is_complex, dot: Some(complex_dot(&blocks)) })
}

fn pair(v: &Value) -> Result<(usize, usize)> {
    match v.as_array().map(|a| a.iter().map(Value::as_u64).collect::<Vec<_>>()) {
        Some(a) if a.len() == 2 && a.iter().all(Option::is_some) => Ok((a[0].unwrap() as usize, a[1].unwrap() as usize)),
        _ => Err(IoError::Malformed("expected a [block, index] pair".into())),
    }
}

fn rule_value(r: &Rule) -> Value {
    match r {
        Rule::Identity => json!("identity"),
        Rule::Constant => json!("constant"),
        Rule::Project(j) => json!({"project": io::write_set(j)}),
    }
}

pub fn retract(root: &Value, ctx: &Context) -> Result<Outcome> {
    let c = parse_or_report!(io::parse_complex(root.get("complex").ok_or_else(|| missing("complex"))?));
    let target = root
        .get("target")
        .and_then(Value::as_array)
        .ok_or_else(|| missing("target"))?
        .iter()
        .map(pair)
        .collect::<Result<Vec<_>>>()?;
    let r = match build_retraction(&c, &target, ctx.p) {
        Ok(r) => r,
        Err(e) => return Ok(error_report(e)),
    };
    let rules: Vec<Value> = r.rules().iter().map(|b| Value::Array(b.iter().map(rule_value).collect())).collect();
    let (bb, base) = r.base();
    let mut images = Vec::new();
    for pt in root.get("points").and_then(Value::as_array).into_iter().flatten() {
        let b = pt.get("block").and_then(Value::as_u64).ok_or_else(|| missing("block"))? as usize;
        let x = io::parse_point(ctx.p, pt.get("x").ok_or_else(|| missing("x"))?)?;
        match r.eval(b, &x) {
            Ok((ib, y)) => images.push(json!({"block": ib, "image": io::write_point(&y)})),
            Err(e) => images.push(json!({"error": e.to_string()})),
        }
    }
    let out = json!({
        "rules": rules,
        "base": {"block": bb, "x": io::write_point(base)},
        "shapes_ok": r.check_shapes(),
        "images": images,
    });
    Ok(ok(out, None))
}

fn missing(f: &str) -> IoError {
    IoError::Malformed(format!("missing field \"{f}\""))
}

fn dispatch_value(d: &DispatchResult) -> Map<String, Value> {
    let sigma: Vec<Value> = d
        .sigma
        .iter()
        .map(|s| Value::Object(s.iter().map(|(i, v)| (i.to_string(), json!(v))).collect()))
        .collect();
    let mut m = Map::new();
    m.insert("H".into(), Value::Array(d.h.iter().map(indices).collect()));
    m.insert("P".into(), Value::Array(d.p.iter().map(indices).collect()));
    m.insert("sigma".into(), Value::Array(sigma));
    m.insert("q1".into(), json!(d.q1));
    m.insert("q2".into(), json!(d.q2));
    m.insert("order".into(), json!(d.order));
    m
}

fn monoplex(root: &Value, ctx: &Context) -> Result<std::result::Result<CellularMonoplex, Outcome>> {
    or_report(io::parse_monoplex(ctx.p, root.get("monoplex").unwrap_or(root)))
}

pub fn dispatch_cmd(root: &Value, ctx: &Context) -> Result<Outcome> {
    let m = match monoplex(root, ctx)? {
        Ok(m) => m,
        Err(o) => return Ok(o),
    };
    let d = match dispatch(&m) {
        Ok(d) => d,
        Err(e) => return Ok(error_report(e)),
    };
    let parent = m.parents().expect("dispatch checked the tree");
    let mut out = dispatch_value(&d);
    let verified = verify(&m, &parent, &d);
    out.insert("verified".into(), json!(verified.is_ok()));
    if let Err(e) = verified {
        out.insert("error".into(), json!(e.to_string()));
        return Ok(fail(Value::Object(out)));
    }
    Ok(ok(Value::Object(out), None))
}

pub fn triangulate_cells(root: &Value, ctx: &Context) -> Result<Outcome> {
    let m = match monoplex(root, ctx)? {
        Ok(m) => m,
        Err(o) => return Ok(o),
    };
    let report = m.validate();
    if !report.valid {
        return Ok(fail(json!({"valid": false, "violations": report.violations, "missing": report.missing})));
    }
    let d = match dispatch(&m) {
        Ok(d) => d,
        Err(e) => return Ok(error_report(e)),
    };
    let lifted = match build_lift(&m, &d) {
        Ok(l) => l,
        Err(e) => return Ok(error_report(e)),
    };
    let mut out = dispatch_value(&d);
    out.insert("simplexes".into(), Value::Array(lifted.simplexes.iter().map(|s| io::write_polytope(s.shape())).collect()));
    out.insert("M".into(), json!(lifted.index));
    out.insert(
        "certificates".into(),
        Value::Array(lifted.certificates.iter().map(|(n, b)| json!({"name": n, "holds": b})).collect()),
    );
    let all = lifted.certificates.iter().all(|(_, b)| *b);
    let dot = digraph(&lifted.labels(), &lifted.tree);
    Ok(Outcome { report: Value::Object(out), valid: all, dot: Some(dot) })
}

pub fn good_direction(root: &Value, ctx: &Context) -> Result<Outcome> {
    let family = root
        .get("polynomials")
        .and_then(Value::as_array)
        .ok_or_else(|| missing("polynomials"))?
        .iter()
        .map(io::parse_polynomial)
        .collect::<Result<Vec<_>>>()?;
    let s = root.get("s").map_or(Ok(0), |v| v.as_u64().ok_or_else(|| IoError::Malformed("s must be a nonnegative integer".into())))?;
    let lead = match leading_form(&family) {
        Ok(l) => l,
        Err(e) => return Ok(error_report(e)),
    };
    let eta = match root.get("eta") {
        Some(v) => v
            .as_array()
            .ok_or_else(|| IoError::Malformed("eta must be an array".into()))?
            .iter()
            .map(io::parse_rat)
            .collect::<Result<Vec<_>>>()?,
        None => match find_direction(&family, s as u32, ctx.p) {
            Ok(e) => e,
            Err(e) => return Ok(error_report(e)),
        },
    };
    if eta.len() + 1 != lead.nvars() {
        return Err(IoError::Malformed("eta has the wrong length".into()));
    }
    let eta_v = Value::Array(eta.iter().map(io::write_rat).collect());
    match certify_direction(&family, &eta, ctx.seed) {
        Ok(r) => {
            let sheared: Vec<Value> = family.iter().map(|f| io::write_polynomial(&shear(f, &eta))).collect();
            Ok(ok(
                json!({
                    "valid": true,
                    "eta": eta_v,
                    "leading_form": io::write_polynomial(&lead),
                    "lead_value": io::write_rat(&r.lead_value),
                    "leading": r.leading.iter().map(io::write_rat).collect::<Vec<_>>(),
                    "sheared": sheared,
                }),
                None,
            ))
        }
        Err(e) => Ok(fail(json!({"valid": false, "eta": eta_v, "error": e.to_string()}))),
    }
}

pub fn oracle(root: &Value, ctx: &Context, flags: &Flags) -> Result<Outcome> {
    let a = parse_or_report!(io::parse_polytope(polytope_value(root)));
    if let Some(n) = flags.samples {
        let m = root.get("M").map_or(Ok(1), |v| v.as_u64().ok_or_else(|| missing("M")))? as u32;
        let s = match PadicSimplex::new(m, a) {
            Ok(s) => s,
            Err(e) => return Ok(error_report(e)),
        };
        let depth = flags.depth.unwrap_or(4);
        let pts: Vec<Value> = sample_padic(&s, ctx.p, depth, n, ctx.seed).iter().map(|x| io::write_point(x)).collect();
        return Ok(ok(json!({"points": pts}), None));
    }
    let bound = match flags.depth {
        Some(d) => d,
        None => root.get("window").map_or(Ok(4), |v| v.as_i64().ok_or_else(|| missing("window")))?,
    };
    let w = Window::new(bound, a.dim());
    let closure = root.get("closure").and_then(Value::as_bool).unwrap_or(false);
    let pts = if closure { enumerate_closure(&a, &w) } else { enumerate_members(&a, &w) };
    match pts {
        Ok(pts) => {
            let pts: Vec<Value> = pts.iter().map(|p| io::write_gamma_point(p)).collect();
            Ok(ok(json!({"window": bound, "count": pts.len(), "points": pts}), None))
        }
        Err(e) => Ok(error_report(e)),
    }
}
