//! Canonical JSON for curve specs, lattices, place systems and reports.
//!
//! Objects are emitted with sorted keys; integers beyond `2^53` in absolute
//! value are written as decimal strings, and readers accept either form.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::autgroup::{IsometryReport, ReportGenerators};
use crate::curves::{HyperellipticModel, PlaceKind, PlaceSystem};
use crate::error::{invalid, Error, Result};
use crate::latcore::{IntegerLattice, MinimaProfile, MinimalBasis};

const SAFE_INT: i64 = 1 << 53;

pub fn int_value(x: i64) -> Value {
    if x.abs() <= SAFE_INT {
        json!(x)
    } else {
        json!(x.to_string())
    }
}

pub fn bigint_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => int_value(v),
        None => json!(x.to_string()),
    }
}

pub fn biguint_value(x: &BigUint) -> Value {
    bigint_value(&BigInt::from(x.clone()))
}

fn read_int(v: &Value, what: &str) -> Result<i64> {
    match v {
        Value::Number(n) => n.as_i64().ok_or_else(|| Error::InvalidInput(format!("{what}: {n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::InvalidInput(format!("{what}: {s:?} is not an integer"))),
        other => invalid(format!("{what}: expected an integer, found {other}")),
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::InvalidInput(format!("missing field {key:?}")))
}

fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

/// Pretty-printed canonical text with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// `{"p": 11, "f": [9, 0, 2, 4, 9, 3, 5, 1]}`, coefficients ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub p: u64,
    pub f: Vec<i64>,
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let v = parse_json(text)?;
        let p = read_int(field(&v, "p")?, "p")?;
        if p < 2 {
            return invalid(format!("p = {p} is not a prime"));
        }
        let f = field(&v, "f")?
            .as_array()
            .ok_or_else(|| Error::InvalidInput("f must be an array of coefficients".into()))?
            .iter()
            .map(|c| read_int(c, "f"))
            .collect::<Result<Vec<_>>>()?;
        Ok(CurveSpec { p: p as u64, f })
    }

    pub fn model(&self) -> Result<HyperellipticModel> {
        HyperellipticModel::from_coeffs(self.p, &self.f)
    }

    pub fn to_json(&self) -> Value {
        json!({ "p": self.p, "f": self.f.iter().map(|&c| int_value(c)).collect::<Vec<_>>() })
    }
}

pub fn lattice_to_json(lat: &IntegerLattice) -> Value {
    let basis: Vec<Value> =
        lat.basis().iter().map(|r| Value::Array(r.iter().map(|&x| int_value(x)).collect())).collect();
    let mut obj = Map::new();
    obj.insert("ambient_dim".into(), json!(lat.ambient_dim()));
    obj.insert("rank".into(), json!(lat.rank()));
    obj.insert("basis".into(), Value::Array(basis));
    if let Some(labels) = lat.labels() {
        obj.insert("labels".into(), json!(labels));
    }
    Value::Object(obj)
}

pub fn lattice_from_json(text: &str) -> Result<IntegerLattice> {
    let v = parse_json(text)?;
    let m = read_int(field(&v, "ambient_dim")?, "ambient_dim")?;
    if m < 1 {
        return invalid("ambient_dim must be positive");
    }
    let rows = field(&v, "basis")?
        .as_array()
        .ok_or_else(|| Error::InvalidInput("basis must be an array of rows".into()))?
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::InvalidInput("basis rows must be arrays".into()))?
                .iter()
                .map(|x| read_int(x, "basis entry"))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(bad) = rows.iter().find(|r| r.len() != m as usize) {
        return Err(Error::DimensionMismatch { expected: m as usize, got: bad.len() });
    }
    let lat = IntegerLattice::new(rows)?;
    if let Some(rank) = v.get("rank") {
        let rank = read_int(rank, "rank")?;
        if rank != lat.rank() as i64 {
            return Err(Error::DimensionMismatch { expected: rank as usize, got: lat.rank() });
        }
    }
    match v.get("labels") {
        Some(Value::Array(ls)) => {
            let labels = ls
                .iter()
                .map(|l| l.as_str().map(str::to_owned).ok_or_else(|| Error::InvalidInput("labels must be strings".into())))
                .collect::<Result<Vec<_>>>()?;
            lat.with_labels(labels)
        }
        Some(Value::Null) | None => Ok(lat),
        Some(_) => invalid("labels must be an array"),
    }
}

fn place_json(kind: PlaceKind, degree: u32) -> Value {
    let (name, value, sheet) = match kind {
        PlaceKind::Rational(i) => ("rational", Some(i as u64), None),
        PlaceKind::Infinity => ("infinity", None, None),
        PlaceKind::Ramified(a) => ("ramified", Some(a), None),
        PlaceKind::Inert(b) => ("inert", Some(b), None),
        PlaceKind::Split { beta, sheet } => ("split", Some(beta), Some(sheet)),
    };
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(name));
    obj.insert("beta_or_alpha".into(), value.map_or(Value::Null, |x| json!(x)));
    obj.insert("degree".into(), json!(degree));
    if let Some(s) = sheet {
        obj.insert("sheet".into(), json!(s));
    }
    Value::Object(obj)
}

/// Place sidecar: selector, counts `r, s, t` and the ordered places.
pub fn places_to_json(sys: &PlaceSystem) -> Value {
    let places: Vec<Value> = sys
        .places
        .iter()
        .map(|p| {
            let mut v = place_json(p.kind, p.degree);
            v.as_object_mut().unwrap().insert("label".into(), json!(p.label()));
            v
        })
        .collect();
    json!({
        "selector": sys.selector.name(),
        "r": sys.r,
        "s": sys.s,
        "t": sys.t,
        "places": places,
    })
}

/// Invariant report; `None` entries are omitted.
#[derive(Debug, Clone, Default)]
pub struct InvariantReport {
    pub det2: Option<BigInt>,
    pub minimum2: Option<i64>,
    pub minima: Option<MinimaProfile>,
    pub kissing: Option<usize>,
    pub well_rounded: Option<bool>,
    pub minimal_basis: Option<MinimalBasis>,
}

impl InvariantReport {
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        if let Some(d) = &self.det2 {
            obj.insert("det2".into(), bigint_value(d));
        }
        if let Some(m) = self.minimum2 {
            obj.insert("minimum2".into(), int_value(m));
        }
        if let Some(p) = &self.minima {
            obj.insert("lambda2".into(), Value::Array(p.lambda2.iter().map(|&x| int_value(x)).collect()));
        }
        if let Some(k) = self.kissing {
            obj.insert("kissing".into(), json!(k));
        }
        if let Some(w) = self.well_rounded {
            obj.insert("well_rounded".into(), json!(w));
        }
        if let Some(b) = &self.minimal_basis {
            let v = match b {
                MinimalBasis::Found(rows) => json!({
                    "found": true,
                    "basis": rows.iter().map(|r| r.iter().map(|&x| int_value(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
                MinimalBasis::NotFound(reason) => json!({ "found": false, "reason": reason }),
            };
            obj.insert("minimal_vector_basis".into(), v);
        }
        Value::Object(obj)
    }
}

pub fn isometry_report_to_json(r: &IsometryReport) -> Value {
    let generators = match &r.generators {
        ReportGenerators::Permutations(ps) => json!({ "kind": "permutations", "images": ps }),
        ReportGenerators::Matrices { basis, images } => json!({
            "kind": "basis_images",
            "basis": basis.iter().map(|r| r.iter().map(|&x| int_value(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "matrices": images
                .iter()
                .map(|m| m.iter().map(|r| r.iter().map(|&x| int_value(x)).collect::<Vec<_>>()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        }),
    };
    json!({
        "order": r.order.to_string(),
        "factored": r.factored.iter().map(|&(p, e)| json!([p, e])).collect::<Vec<_>>(),
        "includes_minus_id": r.includes_minus_id,
        "generators": generators,
    })
}
