//! JSON encodings of rationals, matrices, arrangements and diagrams.
//!
//! Rationals are bare integers when the denominator is 1 and `"p/q"` strings
//! otherwise. Matrices are `{"rows", "cols", "entries"}` in row-major order,
//! optionally with `"row_basis"` and `"col_basis"` labels. Parse errors carry
//! a dotted path to the offending field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError};
use crate::diagram::{DiagramError, HyperbolicDiagram, PairMaps};
use crate::linalg::{Rational, RationalMatrix};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("{path}: {reason}")]
    Field { path: String, reason: String },
    #[error("{path}: {source}")]
    Arrangement {
        path: String,
        source: ArrangementError,
    },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn field(path: &str, reason: impl Into<String>) -> JsonError {
    JsonError::Field {
        path: path.to_string(),
        reason: reason.into(),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn get<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, JsonError> {
    obj.get(key).ok_or_else(|| field(&join(path, key), "missing"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, JsonError> {
    v.as_object().ok_or_else(|| field(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| field(path, "expected an array"))
}

fn as_count(v: &Value, path: &str) -> Result<usize, JsonError> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| field(path, "expected a nonnegative integer"))
}

pub fn rational_to_json(x: &Rational) -> Value {
    if x.denom().is_one() {
        if let Ok(n) = i64::try_from(x.numer()) {
            return json!(n);
        }
        return json!(x.numer().to_string());
    }
    json!(format!("{}/{}", x.numer(), x.denom()))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational, JsonError> {
    let bad = || field(path, "expected an integer or a \"p/q\" string");
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(bad())
            }
        }
        Value::String(s) => parse_rational(s).ok_or_else(bad).and_then(|r| {
            r.ok_or_else(|| field(path, "zero denominator"))
        }),
        _ => Err(bad()),
    }
}

/// `None` on syntax errors, `Some(None)` on a zero denominator.
fn parse_rational(s: &str) -> Option<Option<Rational>> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return Some(None);
    }
    Some(Some(Rational::new(n, d)))
}

pub fn matrix_to_json(
    m: &RationalMatrix,
    row_basis: Option<&[String]>,
    col_basis: Option<&[String]>,
) -> Value {
    let mut obj = Map::new();
    obj.insert("rows".into(), json!(m.rows()));
    obj.insert("cols".into(), json!(m.cols()));
    obj.insert(
        "entries".into(),
        Value::Array(m.entries().iter().map(rational_to_json).collect()),
    );
    if let Some(b) = row_basis {
        obj.insert("row_basis".into(), json!(b));
    }
    if let Some(b) = col_basis {
        obj.insert("col_basis".into(), json!(b));
    }
    Value::Object(obj)
}

/// A matrix with its optional basis labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMatrix {
    pub matrix: RationalMatrix,
    pub row_basis: Option<Vec<String>>,
    pub col_basis: Option<Vec<String>>,
}

fn labels(obj: &Map<String, Value>, path: &str, key: &str, len: usize) -> Result<Option<Vec<String>>, JsonError> {
    let Some(v) = obj.get(key) else {
        return Ok(None);
    };
    let p = join(path, key);
    let items = as_array(v, &p)?;
    if items.len() != len {
        return Err(field(&p, format!("expected {len} labels, got {}", items.len())));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| field(&format!("{p}[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

pub fn matrix_from_json(v: &Value, path: &str) -> Result<LabeledMatrix, JsonError> {
    let obj = as_object(v, path)?;
    let rows = as_count(get(obj, path, "rows")?, &join(path, "rows"))?;
    let cols = as_count(get(obj, path, "cols")?, &join(path, "cols"))?;
    let ep = join(path, "entries");
    let raw = as_array(get(obj, path, "entries")?, &ep)?;
    if raw.len() != rows * cols {
        return Err(field(
            &ep,
            format!("expected {} entries for a {rows}x{cols} matrix, got {}", rows * cols, raw.len()),
        ));
    }
    let entries = raw
        .iter()
        .enumerate()
        .map(|(i, x)| rational_from_json(x, &format!("{ep}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let matrix = RationalMatrix::from_entries(rows, cols, entries).expect("length checked");
    Ok(LabeledMatrix {
        matrix,
        row_basis: labels(obj, path, "row_basis", rows)?,
        col_basis: labels(obj, path, "col_basis", cols)?,
    })
}

pub fn arrangement_to_json(a: &Arrangement) -> Value {
    json!({
        "dim": a.dim(),
        "hyperplanes": a
            .covectors()
            .iter()
            .map(|f| f.iter().map(rational_to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn arrangement_from_json(v: &Value, path: &str) -> Result<Arrangement, JsonError> {
    let obj = as_object(v, path)?;
    let dim = as_count(get(obj, path, "dim")?, &join(path, "dim"))?;
    let hp = join(path, "hyperplanes");
    let covectors = as_array(get(obj, path, "hyperplanes")?, &hp)?
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let fp = format!("{hp}[{i}]");
            as_array(f, &fp)?
                .iter()
                .enumerate()
                .map(|(j, x)| rational_from_json(x, &format!("{fp}[{j}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Arrangement::new(dim, covectors).map_err(|source| JsonError::Arrangement { path: hp, source })
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement, JsonError> {
    arrangement_from_json(&serde_json::from_str(text)?, "")
}

/// Only the maps on covering pairs are written; keys are `"lower->upper"`
/// for both `gamma` and `delta`.
pub fn diagram_to_json(d: &HyperbolicDiagram) -> Value {
    let p = d.poset();
    let dims: Map<String, Value> = (0..p.len())
        .map(|i| (p.face(i).key(), json!(d.dim(i))))
        .collect();
    let mut gamma = Map::new();
    let mut delta = Map::new();
    for ((a, b), (g, dl)) in d.cover_maps() {
        let key = format!("{}->{}", p.face(a).key(), p.face(b).key());
        gamma.insert(key.clone(), matrix_to_json(&g, d.basis(b), d.basis(a)));
        delta.insert(key, matrix_to_json(&dl, d.basis(a), d.basis(b)));
    }
    let mut obj = Map::new();
    obj.insert("arrangement".into(), arrangement_to_json(d.arrangement()));
    obj.insert("dims".into(), Value::Object(dims));
    obj.insert("gamma".into(), Value::Object(gamma));
    obj.insert("delta".into(), Value::Object(delta));
    let bases: Map<String, Value> = (0..p.len())
        .filter_map(|i| d.basis(i).map(|b| (p.face(i).key(), json!(b))))
        .collect();
    if !bases.is_empty() {
        obj.insert("bases".into(), Value::Object(bases));
    }
    Value::Object(obj)
}

pub fn diagram_from_json(v: &Value) -> Result<HyperbolicDiagram, JsonError> {
    let obj = as_object(v, "")?;
    let arrangement = arrangement_from_json(get(obj, "", "arrangement")?, "arrangement")?;
    let poset = arrangement.enumerate_faces();
    let face = |key: &str, path: &str| {
        poset.index_of_key(key).map_err(|source| JsonError::Arrangement {
            path: path.to_string(),
            source,
        })
    };

    let dims_obj = as_object(get(obj, "", "dims")?, "dims")?;
    let mut dims = vec![None; poset.len()];
    for (key, value) in dims_obj {
        let path = format!("dims.{key}");
        dims[face(key, &path)?] = Some(as_count(value, &path)?);
    }
    let dims = dims
        .into_iter()
        .enumerate()
        .map(|(i, d)| d.ok_or_else(|| field(&format!("dims.{}", poset.face(i).key()), "missing")))
        .collect::<Result<Vec<_>, _>>()?;

    let mut bases: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    if let Some(b) = obj.get("bases") {
        for (key, value) in as_object(b, "bases")? {
            let path = format!("bases.{key}");
            let i = face(key, &path)?;
            let names = as_array(value, &path)?
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| field(&path, "expected strings")))
                .collect::<Result<Vec<_>, _>>()?;
            if names.len() != dims[i] {
                return Err(field(&path, format!("expected {} labels, got {}", dims[i], names.len())));
            }
            bases.insert(i, names);
        }
    }

    let mut maps: [PairMaps; 2] = [PairMaps::new(), PairMaps::new()];
    for (slot, name) in ["gamma", "delta"].into_iter().enumerate() {
        for (key, value) in as_object(get(obj, "", name)?, name)? {
            let path = format!("{name}.{key}");
            let (lo, hi) = key
                .split_once("->")
                .ok_or_else(|| field(&path, "key must look like \"<lower>-><upper>\""))?;
            let (a, b) = (face(lo, &path)?, face(hi, &path)?);
            let m = matrix_from_json(value, &path)?;
            // gamma : E_a -> E_b, delta : E_b -> E_a
            let (target, source) = if slot == 0 { (b, a) } else { (a, b) };
            for (given, face_idx, what) in [(&m.row_basis, target, "row_basis"), (&m.col_basis, source, "col_basis")] {
                if let (Some(given), Some(expected)) = (given, bases.get(&face_idx)) {
                    if given != expected {
                        return Err(field(
                            &join(&path, what),
                            format!("labels disagree with bases.{}", poset.face(face_idx).key()),
                        ));
                    }
                }
            }
            maps[slot].insert((a, b), m.matrix);
        }
    }
    let [gamma, delta] = maps;
    Ok(HyperbolicDiagram::from_covers(poset, dims, gamma, delta)?.with_bases(bases)?)
}

pub fn parse_diagram(text: &str) -> Result<HyperbolicDiagram, JsonError> {
    diagram_from_json(&serde_json::from_str(text)?)
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
