//! JSON views of the core types and parsers for the input file formats.
//!
//! Rationals are written as strings `"p"` or `"p/q"`; roots are written as
//! coordinate vectors in the standard realization.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::classify::{Certificate, Classification};
use crate::complete::{is_complete, RootSet};
use crate::concave::ConcaveFn;
use crate::rational::{fmt_q, parse_q, Q};
use crate::rootsys::{Family, RootSystem, RootSystemType};
use crate::zeta::ZetaCertificate;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("expected {0}")]
    Shape(&'static str),
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("{0:?} is not a root of {1}")]
    NotARoot(Vec<String>, RootSystemType),
    #[error("root {0} listed twice")]
    Duplicate(String),
    #[error("no value given for root {0}")]
    Missing(String),
    #[error("the root set is not downward closed")]
    NotComplete,
}

pub fn coords_json(rs: &RootSystem, a: usize) -> Vec<String> {
    rs.coords(a).iter().map(fmt_q).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct RootJson {
    pub index: usize,
    pub label: String,
    pub coords: Vec<String>,
    pub coeffs: Vec<i32>,
    pub epsilon: i64,
    pub height: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootDatumJson {
    #[serde(rename = "type")]
    pub ty: RootSystemType,
    pub rank: usize,
    pub coxeter_number: i64,
    /// Set for non-reduced systems, whose heights come from the affine system.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height_convention: Option<&'static str>,
    pub simple_roots: Vec<usize>,
    pub highest_root: usize,
    pub extended_basis: Vec<usize>,
    pub gram: Vec<Vec<String>>,
    pub roots: Vec<RootJson>,
}

pub fn root_datum(rs: &RootSystem) -> RootDatumJson {
    RootDatumJson {
        ty: rs.ty(),
        rank: rs.rank(),
        coxeter_number: rs.coxeter_number(),
        height_convention: (rs.ty().family == Family::BC).then_some("via affine system"),
        simple_roots: rs.simple_roots().collect(),
        highest_root: rs.highest_root(),
        extended_basis: rs.extended_basis().to_vec(),
        gram: rs
            .gram()
            .iter()
            .map(|row| row.iter().map(fmt_q).collect())
            .collect(),
        roots: rs
            .roots()
            .map(|a| RootJson {
                index: a,
                label: rs.label(a),
                coords: coords_json(rs, a),
                coeffs: rs.coeffs(a).to_vec(),
                epsilon: rs.epsilon(a),
                height: rs.height(a),
            })
            .collect(),
    }
}

/// Members of `set` as coordinate vectors, sorted.
pub fn root_set_json(rs: &RootSystem, set: &RootSet) -> Vec<Vec<String>> {
    let mut v: Vec<&[Q]> = set.iter().map(|a| rs.coords(a)).collect();
    v.sort();
    v.into_iter()
        .map(|c| c.iter().map(fmt_q).collect())
        .collect()
}

fn family_json(rs: &RootSystem, fam: &[usize]) -> Vec<Vec<String>> {
    fam.iter().map(|&a| coords_json(rs, a)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ZetaJson {
    pub z_low: String,
    pub z_high: String,
    pub low_witness: Option<Vec<Vec<String>>>,
    pub high_witness: Option<Vec<Vec<String>>>,
}

pub fn zeta_json(rs: &RootSystem, z: &ZetaCertificate) -> ZetaJson {
    ZetaJson {
        z_low: fmt_q(&z.z_low),
        z_high: fmt_q(&z.z_high),
        low_witness: z.low_witness.as_deref().map(|w| family_json(rs, w)),
        high_witness: z.high_witness.as_deref().map(|w| family_json(rs, w)),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FnEntry {
    pub root: Vec<String>,
    pub value: String,
}

pub fn fn_json(rs: &RootSystem, f: &ConcaveFn) -> Vec<FnEntry> {
    rs.roots()
        .map(|a| FnEntry {
            root: coords_json(rs, a),
            value: fmt_q(&f.get(a)),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationJson {
    pub branch: &'static str,
    pub x: Vec<String>,
    pub r: String,
    pub r_prime: Option<String>,
    pub levi: Option<Vec<Vec<String>>>,
    pub zeta: ZetaJson,
}

/// `x` is given by the values `α_i(x)` on the simple roots.
pub fn classification_json(rs: &RootSystem, c: &Certificate) -> ClassificationJson {
    let (r_prime, levi) = match &c.classification {
        Classification::Type1 { .. } => (None, None),
        Classification::TypeLevi { r_prime, levi, .. } => {
            (Some(fmt_q(r_prime)), Some(root_set_json(rs, levi)))
        }
    };
    ClassificationJson {
        branch: c.branch.name(),
        x: c.classification.x().iter().map(fmt_q).collect(),
        r: fmt_q(&c.classification.r()),
        r_prime,
        levi,
        zeta: zeta_json(rs, &c.zeta),
    }
}

fn rational(v: &Value) -> Result<Q, InputError> {
    match v {
        Value::String(s) => parse_q(s).ok_or_else(|| InputError::Rational(s.clone())),
        Value::Number(n) => n
            .as_i64()
            .map(Q::from_integer)
            .ok_or_else(|| InputError::Rational(n.to_string())),
        _ => Err(InputError::Shape("a rational as a string or integer")),
    }
}

fn root(rs: &RootSystem, v: &Value) -> Result<usize, InputError> {
    let arr = v
        .as_array()
        .ok_or(InputError::Shape("a root as an array of coordinates"))?;
    let c = arr.iter().map(rational).collect::<Result<Vec<_>, _>>()?;
    rs.lookup_coords(&c)
        .ok_or_else(|| InputError::NotARoot(c.iter().map(fmt_q).collect(), rs.ty()))
}

fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))
}

/// Parses a JSON array of root coordinate vectors and checks that the set is
/// downward closed.
pub fn parse_psi(rs: &RootSystem, text: &str) -> Result<RootSet, InputError> {
    let v = parse_json(text)?;
    let arr = v.as_array().ok_or(InputError::Shape("an array of roots"))?;
    let mut set = RootSet::empty(rs.len());
    for item in arr {
        let a = root(rs, item)?;
        if set.contains(a) {
            return Err(InputError::Duplicate(rs.label(a)));
        }
        set.insert(a);
    }
    if !is_complete(rs, &set) {
        return Err(InputError::NotComplete);
    }
    Ok(set)
}

/// Parses `[{"root": [...], "value": "p/q"}, ...]`, which must list every
/// root exactly once.
pub fn parse_fn(rs: &RootSystem, text: &str) -> Result<ConcaveFn, InputError> {
    let v = parse_json(text)?;
    let arr = v
        .as_array()
        .ok_or(InputError::Shape("an array of {root, value} objects"))?;
    let mut vals: Vec<Option<Q>> = vec![None; rs.len()];
    for item in arr {
        let obj = item
            .as_object()
            .ok_or(InputError::Shape("an object with `root` and `value`"))?;
        let r = obj.get("root").ok_or(InputError::Shape("a `root` field"))?;
        let val = obj
            .get("value")
            .ok_or(InputError::Shape("a `value` field"))?;
        let a = root(rs, r)?;
        if vals[a].is_some() {
            return Err(InputError::Duplicate(rs.label(a)));
        }
        vals[a] = Some(rational(val)?);
    }
    let values = vals
        .into_iter()
        .enumerate()
        .map(|(a, v)| v.ok_or_else(|| InputError::Missing(rs.label(a))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ConcaveFn::new(values))
}
