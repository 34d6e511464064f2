//! JSON formats for spaces, cochains, maps, groups and nullhomotopy
//! certificates.
//!
//! Every document carries `"schema_version": 1`. Integers below 2^53 in
//! absolute value are written as JSON numbers and larger ones as decimal
//! strings; both forms are accepted on input.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::abelian::GroupStructure;
use crate::error::{Error, Result};
use crate::homotopy::{ConeMapRep, MapRep};
use crate::postnikov::{em_target_data, sphere3_data, PostnikovData};
use crate::simplicial::{
    surjection_from_word, Cochain, CoeffGroup, FinSimplicialSet, SimplexRef, SimplicialMap, SimplicialSetBuilder,
};

pub const SCHEMA_VERSION: u64 = 1;

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn int_to_json(x: &BigInt) -> Value {
    if x.abs() < BigInt::from(1u64 << 53) {
        json!(x.to_i64().expect("fits"))
    } else {
        json!(x.to_string())
    }
}

pub fn int_from_json(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| parse_err(format!("{n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| parse_err(format!("{s:?} is not an integer"))),
        other => Err(parse_err(format!("expected an integer, got {other}"))),
    }
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err("expected a JSON object"))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn usize_field(o: &Map<String, Value>, key: &str) -> Result<usize> {
    field(o, key)?.as_u64().map(|v| v as usize).ok_or_else(|| parse_err(format!("field {key:?} must be a nonnegative integer")))
}

fn str_field<'a>(o: &'a Map<String, Value>, key: &str) -> Result<&'a str> {
    field(o, key)?.as_str().ok_or_else(|| parse_err(format!("field {key:?} must be a string")))
}

/// Checks the schema version of a parsed document.
pub fn check_version(v: &Value) -> Result<()> {
    let o = object(v)?;
    match o.get("schema_version").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => Err(parse_err(format!("unsupported schema_version {other}"))),
        None => Err(parse_err("missing schema_version")),
    }
}

pub fn parse_document(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    check_version(&v)?;
    Ok(v)
}

fn label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(parse_err(format!("vertex labels must be strings or integers, got {other}"))),
    }
}

/// Resolves a simplex specification against named simplices: a name, `"*"`
/// for the basepoint, or `[word, name]` for a degeneracy. Names of lower
/// dimension than `dim` are allowed only for vertices, which are degenerated
/// completely.
fn resolve(
    entry: &Value,
    dim: usize,
    lookup: &dyn Fn(&str) -> Option<(usize, usize)>,
    basepoint: Option<(usize, usize)>,
) -> Result<SimplexRef> {
    let (word, name): (Vec<usize>, &str) = match entry {
        Value::String(s) => (vec![], s.as_str()),
        Value::Array(a) if a.len() == 2 => {
            let w = a[0]
                .as_array()
                .ok_or_else(|| parse_err("degeneracy word must be an array"))?
                .iter()
                .map(|x| x.as_u64().map(|v| v as usize).ok_or_else(|| parse_err("degeneracy indices must be integers")))
                .collect::<Result<Vec<_>>>()?;
            let n = a[1].as_str().ok_or_else(|| parse_err("simplex name must be a string"))?;
            (w, n)
        }
        other => return Err(parse_err(format!("bad simplex specification {other}"))),
    };
    let found = lookup(name).or(if name == "*" { basepoint } else { None });
    let (bd, bi) = found.ok_or_else(|| Error::InvalidInput(format!("unknown simplex {name:?}")))?;
    if !word.is_empty() {
        let surj = surjection_from_word(&word, bd)?;
        if surj.len() != dim + 1 {
            return Err(Error::DimensionMismatch(format!("[{word:?}, {name:?}] is not a {dim}-simplex")));
        }
        return Ok(SimplexRef { base_dim: bd, base: bi, surj });
    }
    if bd == dim {
        Ok(SimplexRef::nondegenerate(bd, bi))
    } else if bd == 0 {
        Ok(SimplexRef { base_dim: 0, base: bi, surj: vec![0; dim + 1] })
    } else {
        Err(Error::DimensionMismatch(format!("{name:?} has dimension {bd}, expected {dim}")))
    }
}

/// Reads a space: either a simplicial complex `{"facets": [[v, …], …]}`
/// (optionally with `"vertices"` fixing the vertex order) or a simplicial set
/// `{"simplices": [{"name", "dim", "faces"}, …], "basepoint"}`.
pub fn space_from_json(v: &Value) -> Result<FinSimplicialSet> {
    check_version(v)?;
    let o = object(v)?;
    if let Some(facets) = o.get("facets") {
        let facets = facets
            .as_array()
            .ok_or_else(|| parse_err("facets must be an array"))?
            .iter()
            .map(|f| f.as_array().ok_or_else(|| parse_err("each facet must be an array"))?.iter().map(label).collect())
            .collect::<Result<Vec<Vec<String>>>>()?;
        let order = match o.get("vertices") {
            Some(vs) => vs.as_array().ok_or_else(|| parse_err("vertices must be an array"))?.iter().map(label).collect::<Result<Vec<_>>>()?,
            None => {
                let mut all: Vec<String> = facets.iter().flatten().cloned().collect();
                all.sort_by(|a, b| match (a.parse::<i64>(), b.parse::<i64>()) {
                    (Ok(x), Ok(y)) => x.cmp(&y),
                    _ => a.cmp(b),
                });
                all.dedup();
                all
            }
        };
        return FinSimplicialSet::from_complex(&order, &facets);
    }
    let simplices = field(o, "simplices")?.as_array().ok_or_else(|| parse_err("simplices must be an array"))?;
    let mut b = SimplicialSetBuilder::new();
    for s in simplices {
        let so = object(s)?;
        let name = str_field(so, "name")?;
        let dim = usize_field(so, "dim")?;
        let faces = match so.get("faces") {
            None => vec![],
            Some(fs) => fs
                .as_array()
                .ok_or_else(|| parse_err("faces must be an array"))?
                .iter()
                .map(|f| resolve(f, dim - 1, &|n| b.lookup(n), None))
                .collect::<Result<Vec<_>>>()?,
        };
        b.add(name, dim, faces)?;
    }
    let base = match o.get("basepoint") {
        None => 0,
        Some(v) => {
            let n = v.as_str().ok_or_else(|| parse_err("basepoint must be a vertex name"))?;
            match b.lookup(n) {
                Some((0, i)) => i,
                _ => return Err(Error::InvalidInput(format!("basepoint {n:?} is not a vertex"))),
            }
        }
    };
    b.build(base)
}

fn simplex_spec(x: &FinSimplicialSet, s: &SimplexRef) -> Value {
    let name = x.name(s.base_dim, s.base);
    if s.is_degenerate() {
        json!([s.word(), name])
    } else {
        json!(name)
    }
}

/// Writes a space in the simplicial-set form.
pub fn space_to_json(x: &FinSimplicialSet) -> Value {
    let mut simplices = Vec::new();
    for (n, &c) in x.counts().iter().enumerate() {
        for j in 0..c {
            let mut s = Map::new();
            s.insert("name".into(), json!(x.name(n, j)));
            s.insert("dim".into(), json!(n));
            if n > 0 {
                s.insert("faces".into(), Value::Array(x.nd_faces(n, j).iter().map(|f| simplex_spec(x, f)).collect()));
            }
            simplices.push(Value::Object(s));
        }
    }
    json!({
        "schema_version": SCHEMA_VERSION,
        "basepoint": x.name(0, x.basepoint()),
        "simplices": simplices,
    })
}

fn elem_to_json(v: &[BigInt]) -> Value {
    if v.len() == 1 {
        int_to_json(&v[0])
    } else {
        Value::Array(v.iter().map(int_to_json).collect())
    }
}

/// A cochain keyed by simplex names: `{"dim", "coeff", "values": {name: value}}`.
pub fn cochain_to_json(x: &FinSimplicialSet, c: &Cochain) -> Value {
    let values: Map<String, Value> = c.iter().map(|(j, v)| (x.name(c.dim, j).to_string(), elem_to_json(v))).collect();
    json!({
        "schema_version": SCHEMA_VERSION,
        "dim": c.dim,
        "coeff": c.coeff.to_string(),
        "values": values,
    })
}

pub fn cochain_from_json(x: &FinSimplicialSet, v: &Value) -> Result<Cochain> {
    check_version(v)?;
    let o = object(v)?;
    let dim = usize_field(o, "dim")?;
    let coeff: CoeffGroup = str_field(o, "coeff")?.parse()?;
    let mut c = Cochain::zero(dim, coeff.clone());
    for (name, val) in object(field(o, "values")?)? {
        let (d, j) = x.lookup(name).ok_or_else(|| Error::InvalidInput(format!("unknown simplex {name:?}")))?;
        if d != dim {
            return Err(Error::DimensionMismatch(format!("{name:?} is not a {dim}-simplex")));
        }
        let elem = match val {
            Value::Array(a) => a.iter().map(int_from_json).collect::<Result<Vec<_>>>()?,
            other => vec![int_from_json(other)?],
        };
        c.set(j, coeff.element(elem)?);
    }
    Ok(c)
}

/// Reads `{"assignments": {simplex: entry}}` as a simplicial map `x → y`.
/// Unassigned vertices go to the basepoint; every other nondegenerate
/// simplex of `x` must be assigned.
pub fn map_from_json(x: &FinSimplicialSet, y: &FinSimplicialSet, v: &Value) -> Result<SimplicialMap> {
    check_version(v)?;
    let o = object(v)?;
    let a = object(field(o, "assignments")?)?;
    let counts = x.counts();
    let mut images: Vec<Vec<Option<SimplexRef>>> = counts.iter().map(|&c| vec![None; c]).collect();
    let bp = Some((0, y.basepoint()));
    for (name, entry) in a {
        let (d, j) = x.lookup(name).ok_or_else(|| Error::InvalidInput(format!("unknown simplex {name:?} in the domain")))?;
        images[d][j] = Some(resolve(entry, d, &|n| y.lookup(n), bp)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(d, layer)| {
            layer
                .into_iter()
                .enumerate()
                .map(|(j, im)| match im {
                    Some(s) => Ok(s),
                    None if d == 0 => Ok(y.base_simplex(0)),
                    None => Err(Error::InvalidInput(format!("simplex {:?} is not assigned", x.name(d, j)))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(x, y, images)
}

pub fn map_to_json(x: &FinSimplicialSet, y: &FinSimplicialSet, f: &SimplicialMap) -> Value {
    let mut a = Map::new();
    for (d, layer) in f.images.iter().enumerate() {
        for (j, s) in layer.iter().enumerate() {
            a.insert(x.name(d, j).to_string(), simplex_spec(y, s));
        }
    }
    json!({"schema_version": SCHEMA_VERSION, "assignments": a})
}

pub fn group_to_json(g: &GroupStructure) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "free_rank": g.free_rank,
        "torsion": g.torsion.iter().map(int_to_json).collect::<Vec<_>>(),
    })
}

pub fn group_from_json(v: &Value) -> Result<GroupStructure> {
    check_version(v)?;
    let o = object(v)?;
    let free_rank = usize_field(o, "free_rank")?;
    let torsion = field(o, "torsion")?
        .as_array()
        .ok_or_else(|| parse_err("torsion must be an array"))?
        .iter()
        .map(int_from_json)
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupStructure { free_rank, torsion })
}

/// A map representation as a list of cochains on `x`.
pub fn map_rep_to_json(x: &FinSimplicialSet, m: &MapRep) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "d": m.d,
        "components": m.comps.iter().map(|c| cochain_to_json(x, c)).collect::<Vec<_>>(),
    })
}

pub fn map_rep_from_json(x: &FinSimplicialSet, v: &Value) -> Result<MapRep> {
    check_version(v)?;
    let o = object(v)?;
    let d = usize_field(o, "d")?;
    let comps = field(o, "components")?
        .as_array()
        .ok_or_else(|| parse_err("components must be an array"))?
        .iter()
        .map(|c| cochain_from_json(x, c))
        .collect::<Result<Vec<_>>>()?;
    if comps.is_empty() {
        return Err(Error::InvalidInput("map representation without components".into()));
    }
    Ok(MapRep { d, comps })
}

/// Nullhomotopy certificate: the cone CX and a map on it.
pub fn certificate_to_json(cone: &FinSimplicialSet, target: &str, b: &ConeMapRep) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "kind": "nullhomotopy",
        "target": target,
        "cone": space_to_json(cone),
        "map": map_rep_to_json(cone, &b.map),
    })
}

pub fn certificate_from_json(v: &Value) -> Result<(FinSimplicialSet, String, ConeMapRep)> {
    check_version(v)?;
    let o = object(v)?;
    if str_field(o, "kind")? != "nullhomotopy" {
        return Err(parse_err("not a nullhomotopy certificate"));
    }
    let cone = space_from_json(field(o, "cone")?)?;
    let map = map_rep_from_json(&cone, field(o, "map")?)?;
    Ok((cone, str_field(o, "target")?.to_string(), ConeMapRep { map }))
}

/// Parses a target token: `sphere:3` or `em:COEFF:N`.
pub fn parse_target(token: &str) -> Result<PostnikovData> {
    let parts: Vec<&str> = token.split(':').collect();
    match parts.as_slice() {
        ["sphere", "3"] => Ok(sphere3_data()),
        ["sphere", n] => Err(Error::Unsupported(format!("sphere:{n}; only sphere:3 ships with Postnikov data"))),
        ["em", coeff, n] => {
            let coeff: CoeffGroup = coeff.parse()?;
            let n: usize = n.parse().map_err(|_| parse_err(format!("bad degree {n:?}")))?;
            em_target_data(coeff, n)
        }
        _ => Err(parse_err(format!("unknown target {token:?}; expected sphere:3 or em:COEFF:N"))),
    }
}

/// Coordinates as JSON integers.
pub fn coords_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_to_json).collect())
}

/// Names of the nondegenerate simplices of each dimension.
pub fn simplex_names(x: &FinSimplicialSet) -> BTreeMap<usize, Vec<String>> {
    (0..=x.dim()).map(|d| (d, x.names(d).to_vec())).collect()
}
