//! JSON and CSV interchange. Rationals travel as `"p/q"` strings, integers as
//! JSON numbers (or decimal strings when they exceed 64 bits).

use std::io::{self, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactlin::{Rational, RationalVector};
use crate::fan::{Divisor, Fan, FanError};
use crate::stability::{AffineSlice, RegionRow};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("{what}: expected {expected} entries, found {found}")]
    Length {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Int(BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|x| Int(x.into()))
                .ok_or_else(|| D::Error::custom(format!("{n} is not an integer"))),
            serde_json::Value::String(t) => BigInt::from_str(t.trim())
                .map(Int)
                .map_err(|_| D::Error::custom(format!("{t:?} is not an integer"))),
            other => Err(D::Error::custom(format!("expected an integer, found {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Frac(Rational);

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|x| Frac(Rational::from_integer(x.into())))
                .ok_or_else(|| D::Error::custom(format!("{n}: write non-integers as \"p/q\" strings"))),
            serde_json::Value::String(t) => parse_rational(&t).map(Frac).map_err(D::Error::custom),
            other => Err(D::Error::custom(format!("expected a \"p/q\" string, found {other}"))),
        }
    }
}

/// Parses `"p/q"` or `"p"`; the denominator must be nonzero.
pub fn parse_rational(t: &str) -> Result<Rational, String> {
    let t = t.trim();
    let bad = || format!("{t:?} is not a fraction p/q");
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(format!("{t:?} has zero denominator"));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    dim: usize,
    rays: Vec<Vec<Int>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorFile {
    coeffs: Vec<Frac>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    vertices: Vec<Vec<Frac>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SliceFile {
    base: Vec<Frac>,
    dir1: Vec<Frac>,
    dir2: Vec<Frac>,
}

fn fracs(v: Vec<Frac>) -> Vec<Rational> {
    v.into_iter().map(|f| f.0).collect()
}

fn to_fracs(v: &[Rational]) -> Vec<Frac> {
    v.iter().cloned().map(Frac).collect()
}

fn pretty<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("in-memory serialization") + "\n"
}

pub fn parse_fan(text: &str) -> Result<Fan, FormatError> {
    let f: FanFile = serde_json::from_str(text)?;
    let rays = f.rays.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
    Ok(Fan::new(f.dim, rays, f.max_cones)?)
}

pub fn fan_to_json(fan: &Fan) -> String {
    pretty(&FanFile {
        dim: fan.dim(),
        rays: fan.rays().iter().map(|r| r.iter().cloned().map(Int).collect()).collect(),
        max_cones: fan.max_cones().to_vec(),
    })
}

pub fn parse_divisor(text: &str) -> Result<Divisor, FormatError> {
    let f: DivisorFile = serde_json::from_str(text)?;
    Ok(Divisor::new(fracs(f.coeffs)))
}

/// Parses a divisor and checks it has one coefficient per ray of `fan`.
pub fn parse_divisor_for(text: &str, fan: &Fan) -> Result<Divisor, FormatError> {
    let d = parse_divisor(text)?;
    if d.len() != fan.n_rays() {
        return Err(FormatError::Length {
            what: "divisor coefficients",
            expected: fan.n_rays(),
            found: d.len(),
        });
    }
    Ok(d)
}

pub fn divisor_to_json(d: &Divisor) -> String {
    pretty(&DivisorFile {
        coeffs: to_fracs(&d.coeffs),
    })
}

pub fn parse_polytope(text: &str) -> Result<Vec<RationalVector>, FormatError> {
    let f: PolytopeFile = serde_json::from_str(text)?;
    Ok(f.vertices.into_iter().map(|v| RationalVector(fracs(v))).collect())
}

pub fn polytope_to_json(vertices: &[RationalVector]) -> String {
    pretty(&PolytopeFile {
        vertices: vertices.iter().map(|v| to_fracs(&v.0)).collect(),
    })
}

/// `{"base": [...], "dir1": [...], "dir2": [...]}`, each aligned with the
/// ray order of the fan.
pub fn parse_slice(text: &str) -> Result<AffineSlice, FormatError> {
    let f: SliceFile = serde_json::from_str(text)?;
    Ok(AffineSlice {
        base: fracs(f.base),
        dir1: fracs(f.dir1),
        dir2: fracs(f.dir2),
    })
}

pub fn slice_to_json(s: &AffineSlice) -> String {
    pretty(&SliceFile {
        base: to_fracs(&s.base),
        dir1: to_fracs(&s.dir1),
        dir2: to_fracs(&s.dir2),
    })
}

pub const REGION_CSV_HEADER: &str = "t1,t2,status,margin,witness";

/// Writes rows in the given order with LF line endings. Witness labels use
/// `;` between ray indices, so no field needs quoting.
pub fn write_region_csv<W: Write>(rows: &[RegionRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{REGION_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.t1,
            r.t2,
            r.status,
            r.margin.as_ref().map(|m| m.to_string()).unwrap_or_default(),
            r.witness.as_deref().unwrap_or("")
        )?;
    }
    out.flush()
}

pub fn region_csv_string(rows: &[RegionRow]) -> String {
    let mut buf = Vec::new();
    write_region_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
