//! JSON forms of groups, difference sets, linking systems, difference
//! matrices and bent sets, plus the certificate envelope.
//!
//! Output is canonical: object keys are sorted and every set is listed in
//! increasing element-id order, so equal objects serialize identically.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::bent::{BentSet, BooleanFunction};
use crate::designs::{DSParams, DifferenceSetRecord};
use crate::diffmat::{verify_dm, DifferenceMatrix};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupSpec};
use crate::linking::{verify_reduced, ReducedLinkingSystem};

/// Version of the JSON layouts below.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Group,
    DifferenceSet,
    LinkingSystem,
    DifferenceMatrix,
    BentSet,
    CensusReport,
    NonexistenceReport,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::DifferenceSet => "difference-set",
            Kind::LinkingSystem => "linking-system",
            Kind::DifferenceMatrix => "difference-matrix",
            Kind::BentSet => "bent-set",
            Kind::CensusReport => "census-report",
            Kind::NonexistenceReport => "nonexistence-report",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        [
            Kind::Group,
            Kind::DifferenceSet,
            Kind::LinkingSystem,
            Kind::DifferenceMatrix,
            Kind::BentSet,
            Kind::CensusReport,
            Kind::NonexistenceReport,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
    }
}

fn parse_err(field: &str, msg: impl Into<String>) -> Error {
    Error::Parse {
        field: field.to_string(),
        msg: msg.into(),
    }
}

fn get<'a>(obj: &'a Value, key: &str, field: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(field, format!("missing key `{key}`")))
}

fn as_i64(v: &Value, field: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| parse_err(field, "expected an integer"))
}

fn as_array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(field, "expected an array"))
}

/// Wraps a payload with its kind, tool and format versions and the input
/// that produced it.
pub fn envelope(kind: Kind, input: Value, payload: Value) -> Value {
    json!({
        "kind": kind.as_str(),
        "version": env!("CARGO_PKG_VERSION"),
        "format_version": FORMAT_VERSION,
        "input": input,
        "payload": payload,
    })
}

/// The payload of an envelope (checking its kind when given) or the value
/// itself when it is not an envelope.
pub fn unwrap_envelope(value: &Value, expect: Option<Kind>) -> Result<&Value> {
    match (value.get("kind"), value.get("payload")) {
        (Some(kind), Some(payload)) => {
            let kind = kind.as_str().ok_or_else(|| parse_err("kind", "expected a string"))?;
            let parsed = Kind::parse(kind).ok_or_else(|| parse_err("kind", format!("unknown kind `{kind}`")))?;
            if let Some(want) = expect {
                if parsed != want {
                    return Err(parse_err(
                        "kind",
                        format!("expected `{}`, found `{kind}`", want.as_str()),
                    ));
                }
            }
            Ok(payload)
        }
        _ => Ok(value),
    }
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err("<document>", e.to_string()))
}

/// Compact canonical text.
pub fn to_canonical_string(value: &Value) -> String {
    serde_json::to_string(value).expect("values serialize")
}

pub fn spec_to_json(spec: &GroupSpec) -> Value {
    match spec {
        GroupSpec::Abelian { factors, names: None } => json!({ "abelian": factors }),
        GroupSpec::Abelian {
            factors,
            names: Some(n),
        } => json!({ "abelian": factors, "names": n }),
        GroupSpec::Dihedral8 => json!("D4"),
        GroupSpec::Quaternion8 => json!("Q8"),
        GroupSpec::Product(parts) => json!({ "product": parts.iter().map(spec_to_json).collect::<Vec<_>>() }),
    }
}

pub fn spec_from_json(v: &Value) -> Result<GroupSpec> {
    spec_from_json_at(v, "group")
}

fn spec_from_json_at(v: &Value, field: &str) -> Result<GroupSpec> {
    match v {
        Value::String(s) => match s.as_str() {
            "D4" | "D8" => Ok(GroupSpec::Dihedral8),
            "Q8" => Ok(GroupSpec::Quaternion8),
            other => Err(parse_err(
                field,
                format!("unknown group name `{other}` (expected D4 or Q8)"),
            )),
        },
        Value::Object(obj) => {
            if let Some(f) = obj.get("abelian") {
                let field_f = format!("{field}.abelian");
                let factors = as_array(f, &field_f)?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .filter(|&n| (2..=u32::MAX as u64).contains(&n))
                            .map(|n| n as u32)
                            .ok_or_else(|| parse_err(&field_f, "factors must be integers at least 2"))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let names = match obj.get("names") {
                    None | Some(Value::Null) => None,
                    Some(n) => Some(
                        as_array(n, &format!("{field}.names"))?
                            .iter()
                            .map(|s| {
                                s.as_str()
                                    .map(str::to_string)
                                    .ok_or_else(|| parse_err(&format!("{field}.names"), "expected strings"))
                            })
                            .collect::<Result<Vec<_>>>()?,
                    ),
                };
                Ok(GroupSpec::Abelian { factors, names })
            } else if let Some(p) = obj.get("product") {
                let field_p = format!("{field}.product");
                let parts = as_array(p, &field_p)?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| spec_from_json_at(x, &format!("{field_p}[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(GroupSpec::Product(parts))
            } else {
                Err(parse_err(field, "expected key `abelian` or `product`"))
            }
        }
        _ => Err(parse_err(field, "expected a group description")),
    }
}

pub fn group_from_json(v: &Value) -> Result<Arc<FiniteGroup>> {
    let spec = spec_from_json(v)?;
    FiniteGroup::from_spec(&spec)
        .map(FiniteGroup::into_ref)
        .map_err(|e| parse_err("group", e.to_string()))
}

/// Parses JSON text describing a group.
pub fn parse_group(text: &str) -> Result<Arc<FiniteGroup>> {
    group_from_json(&parse_json(text)?)
}

pub fn group_to_json(group: &FiniteGroup) -> Result<Value> {
    group
        .spec()
        .map(spec_to_json)
        .ok_or_else(|| Error::Unsupported("group has no serializable description".into()))
}

/// Element names in increasing id order.
pub fn set_to_json(group: &FiniteGroup, set: &[Elem]) -> Value {
    let mut s = set.to_vec();
    s.sort_unstable();
    json!(group.set_names(&s))
}

pub fn set_from_json(group: &FiniteGroup, v: &Value, field: &str) -> Result<Vec<Elem>> {
    let names = as_array(v, field)?
        .iter()
        .map(|x| x.as_str().ok_or_else(|| parse_err(field, "expected element names")))
        .collect::<Result<Vec<_>>>()?;
    group.parse_set(&names).map_err(|e| parse_err(field, e.to_string()))
}

fn params_from_json(v: &Value, field: &str) -> Result<[i64; 4]> {
    let a = as_array(v, field)?;
    if a.len() != 4 {
        return Err(parse_err(field, "expected [v, k, lambda, n]"));
    }
    Ok([
        as_i64(&a[0], field)?,
        as_i64(&a[1], field)?,
        as_i64(&a[2], field)?,
        as_i64(&a[3], field)?,
    ])
}

pub fn ds_to_json(rec: &DifferenceSetRecord) -> Result<Value> {
    Ok(json!({
        "group": group_to_json(&rec.group)?,
        "set": set_to_json(&rec.group, &rec.set),
        "params": rec.params.as_array(),
    }))
}

/// Parses and verifies a difference set; stated parameters must match.
pub fn ds_from_json(v: &Value) -> Result<DifferenceSetRecord> {
    let group = group_from_json(get(v, "group", "group")?)?;
    let set = set_from_json(&group, get(v, "set", "set")?, "set")?;
    let rec = DifferenceSetRecord::new(group, &set)?;
    if let Some(p) = v.get("params") {
        let stated = params_from_json(p, "params")?;
        if stated != rec.params.as_array() {
            return Err(Error::Verification(format!(
                "stated parameters {stated:?} but the set has {}",
                rec.params
            )));
        }
    }
    Ok(rec)
}

fn pair_key(i: usize, j: usize) -> String {
    format!("({i},{j})")
}

fn parse_pair_key(s: &str) -> Option<(usize, usize)> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

pub fn system_to_json(sys: &ReducedLinkingSystem) -> Result<Value> {
    let g = &sys.group;
    let witnesses: Map<String, Value> = sys
        .witnesses()
        .iter()
        .map(|(&(i, j), w)| (pair_key(i, j), set_to_json(g, w)))
        .collect();
    Ok(json!({
        "group": group_to_json(g)?,
        "params": sys.params.as_array(),
        "mu": sys.munu.mu,
        "nu": sys.munu.nu,
        "sets": sys.sets().iter().map(|s| set_to_json(g, s)).collect::<Vec<_>>(),
        "witnesses": witnesses,
    }))
}

/// Parses and verifies a reduced linking system. `mu`, `nu`, `params` and
/// `witnesses` are optional; whatever is present must match.
pub fn system_from_json(v: &Value) -> Result<ReducedLinkingSystem> {
    let group = group_from_json(get(v, "group", "group")?)?;
    let sets = as_array(get(v, "sets", "sets")?, "sets")?
        .iter()
        .enumerate()
        .map(|(i, s)| set_from_json(&group, s, &format!("sets[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let sys = match v.get("witnesses") {
        Some(w) => {
            let obj = w
                .as_object()
                .ok_or_else(|| parse_err("witnesses", "expected an object"))?;
            let mut map = BTreeMap::new();
            for (key, val) in obj {
                let field = format!("witnesses.{key}");
                let pair = parse_pair_key(key).ok_or_else(|| parse_err(&field, "key must look like (i,j)"))?;
                map.insert(pair, set_from_json(&group, val, &field)?);
            }
            let mu = as_i64(get(v, "mu", "mu")?, "mu")?;
            let nu = as_i64(get(v, "nu", "nu")?, "nu")?;
            ReducedLinkingSystem::from_parts(&group, &sets, mu, nu, &map)?
        }
        None => {
            let sys = verify_reduced(&group, &sets)
                .ok_or_else(|| Error::Verification("sets do not form a reduced linking system".into()))?;
            for (key, want) in [("mu", sys.munu.mu), ("nu", sys.munu.nu)] {
                if let Some(x) = v.get(key) {
                    if as_i64(x, key)? != want {
                        return Err(Error::Verification(format!("stated {key} does not match the system")));
                    }
                }
            }
            sys
        }
    };
    if let Some(p) = v.get("params") {
        if params_from_json(p, "params")? != sys.params.as_array() {
            return Err(Error::Verification("stated parameters do not match the system".into()));
        }
    }
    Ok(sys)
}

pub fn dm_to_json(m: &DifferenceMatrix) -> Result<Value> {
    Ok(json!({
        "group": group_to_json(&m.group)?,
        "lambda": m.lambda,
        "rows": m.rows.iter().map(|r| r.iter().map(|&x| m.group.name(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    }))
}

/// Parses a matrix without verifying it; see [`verify_dm`].
pub fn dm_from_json(v: &Value) -> Result<DifferenceMatrix> {
    let group = group_from_json(get(v, "group", "group")?)?;
    let lambda = get(v, "lambda", "lambda")?
        .as_u64()
        .filter(|&l| l >= 1)
        .ok_or_else(|| parse_err("lambda", "expected a positive integer"))? as usize;
    let rows = as_array(get(v, "rows", "rows")?, "rows")?
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let field = format!("rows[{i}]");
            as_array(r, &field)?
                .iter()
                .map(|x| {
                    let name = x.as_str().ok_or_else(|| parse_err(&field, "expected element names"))?;
                    group.parse_element(name).map_err(|e| parse_err(&field, e.to_string()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let cols = lambda * group.order();
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(parse_err(&format!("rows[{i}]"), format!("expected {cols} entries")));
    }
    Ok(DifferenceMatrix { group, lambda, rows })
}

/// Parses a matrix and requires it to verify.
pub fn dm_from_json_verified(v: &Value) -> Result<DifferenceMatrix> {
    let m = dm_from_json(v)?;
    if !verify_dm(&m) {
        return Err(Error::Verification("matrix is not a difference matrix".into()));
    }
    Ok(m)
}

pub fn bent_set_to_json(set: &BentSet) -> Value {
    json!({
        "arity": set.arity,
        "functions": set.functions.iter().map(BooleanFunction::to_hex).collect::<Vec<_>>(),
    })
}

/// Parses functions without checking the bent property.
pub fn functions_from_json(v: &Value) -> Result<Vec<BooleanFunction>> {
    let arity = get(v, "arity", "arity")?
        .as_u64()
        .ok_or_else(|| parse_err("arity", "expected a nonnegative integer"))? as u32;
    as_array(get(v, "functions", "functions")?, "functions")?
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let field = format!("functions[{i}]");
            let hex = h.as_str().ok_or_else(|| parse_err(&field, "expected a hex string"))?;
            BooleanFunction::from_hex(arity, hex).map_err(|e| parse_err(&field, e.to_string()))
        })
        .collect()
}

pub fn params_to_json(p: &DSParams) -> Value {
    json!(p.as_array())
}
