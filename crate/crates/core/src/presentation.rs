//! JSON presentations of finite dg categories.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "objects": ["X", "Y"],
//!   "homs": [{"source": "X", "target": "Y", "dims": {"0": 1}, "d": {}}],
//!   "comp": [{"objects": ["X", "Y", "Y"], "degrees": [0, 0], "g": 0, "f": 0, "value": ["1"]}],
//!   "ids": {"X": ["1"], "Y": ["1"]}
//! }
//! ```
//!
//! `d` maps a degree `n` to the row-major matrix of `d: Hom^n -> Hom^{n+1}`.
//! A `comp` entry gives the product of basis element `g` of
//! `Hom(y,z)^m` with basis element `f` of `Hom(x,y)^n`. Rationals are written
//! as strings `"p/q"` in lowest terms, prime-field residues as integers.
//! Serialization sorts keys and omits zero data, so it is byte-stable.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Map, Value};

use crate::complexes::{Complex, Degree};
use crate::dgcat::validate::validate_dgcat;
use crate::dgcat::{DgCat, FiniteDgCategory};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::twisted::generators::build_generators;

/// Names of the built-in documents.
pub const BUILTINS: [&str; 5] = ["point", "suspension", "cosuspension", "morphism", "cone"];

pub fn builtin(name: &str, field: Field) -> Option<FiniteDgCategory> {
    let g = build_generators(field);
    let gen = match name {
        "point" => g.point,
        "suspension" => g.suspension,
        "cosuspension" => g.cosuspension,
        "morphism" => g.morphism,
        "cone" => g.cone,
        _ => return None,
    };
    Some((*gen.cat).clone())
}

fn scalar_json(s: &Scalar) -> Value {
    match s {
        Scalar::Q(_) => json!(s.to_canonical_string()),
        Scalar::Fp { value, .. } => json!(value),
    }
}

fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn to_document(cat: &FiniteDgCategory) -> Value {
    let names = cat.names();
    let n = names.len();
    let mut homs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let h = cat.hom_complex(x, y);
            if h.dims().is_empty() {
                continue;
            }
            let dims: Map<String, Value> = h.dims().iter().map(|(d, k)| (d.to_string(), json!(k))).collect();
            let mut diffs = Map::new();
            for &d in h.dims().keys() {
                let m = h.d(d);
                if m.rows() > 0 && !m.is_zero() {
                    let rows: Vec<Value> = (0..m.rows()).map(|r| vector_json(m.row(r))).collect();
                    diffs.insert(d.to_string(), Value::Array(rows));
                }
            }
            homs.push(json!({"source": names[x], "target": names[y], "dims": dims, "d": diffs}));
        }
    }
    let mut comp = Vec::new();
    for ((x, y, z, m, k), block) in cat.structure_blocks() {
        let df = cat.hom_complex(x, y).dim(k);
        for col in 0..block.cols() {
            let value = block.column(col);
            if value.iter().all(Scalar::is_zero) {
                continue;
            }
            comp.push(json!({
                "objects": [names[x], names[y], names[z]],
                "degrees": [m, k],
                "g": col / df,
                "f": col % df,
                "value": vector_json(&value),
            }));
        }
    }
    let ids: Map<String, Value> = (0..n).map(|x| (names[x].clone(), vector_json(cat.identity_coeffs(x)))).collect();
    json!({
        "field": cat.field().tag(),
        "objects": names,
        "homs": homs,
        "comp": comp,
        "ids": ids,
    })
}

/// Canonical text of a category, ending in a newline.
pub fn serialize(cat: &FiniteDgCategory) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(cat)).expect("documents serialize");
    s.push('\n');
    s
}

fn err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}

struct Reader {
    field: Field,
    index: HashMap<String, usize>,
}

impl Reader {
    fn scalar(&self, at: &str, v: &Value) -> Result<Scalar> {
        match v {
            Value::String(s) => self.field.parse_scalar(s).map_err(|e| err(at, e.to_string())),
            Value::Number(k) => k
                .as_i64()
                .map(|k| self.field.from_i64(k))
                .ok_or_else(|| err(at, format!("{k} is not an integer"))),
            _ => Err(err(at, "expected a scalar")),
        }
    }

    fn vector(&self, at: &str, v: &Value, len: usize) -> Result<Vec<Scalar>> {
        let items = v.as_array().ok_or_else(|| err(at, "expected an array of scalars"))?;
        if items.len() != len {
            return Err(err(at, format!("expected {len} coefficients, found {}", items.len())));
        }
        items.iter().enumerate().map(|(i, s)| self.scalar(&format!("{at}[{i}]"), s)).collect()
    }

    fn object(&self, at: &str, v: &Value) -> Result<usize> {
        let name = v.as_str().ok_or_else(|| err(at, "expected an object name"))?;
        self.index.get(name).copied().ok_or_else(|| err(at, format!("unknown object {name:?}")))
    }
}

fn field_of<'a>(at: &str, doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| err(at, format!("missing field {key:?}")))
}

fn degree(at: &str, key: &str) -> Result<Degree> {
    key.parse().map_err(|_| err(at, format!("{key:?} is not a degree")))
}

fn usize_of(at: &str, v: &Value) -> Result<usize> {
    v.as_u64().map(|k| k as usize).ok_or_else(|| err(at, "expected a nonnegative integer"))
}

fn read_hom(r: &Reader, at: &str, h: &Value) -> Result<(usize, usize, Complex)> {
    let x = r.object(&format!("{at}.source"), field_of(at, h, "source")?)?;
    let y = r.object(&format!("{at}.target"), field_of(at, h, "target")?)?;
    let mut dims = BTreeMap::new();
    let dims_at = format!("{at}.dims");
    let raw = field_of(at, h, "dims")?.as_object().ok_or_else(|| err(&dims_at, "expected an object"))?;
    for (k, v) in raw {
        let here = format!("{dims_at}.{k}");
        dims.insert(degree(&here, k)?, usize_of(&here, v)?);
    }
    let mut diffs = BTreeMap::new();
    if let Some(raw) = h.get("d") {
        let d_at = format!("{at}.d");
        for (k, v) in raw.as_object().ok_or_else(|| err(&d_at, "expected an object"))? {
            let here = format!("{d_at}.{k}");
            let n = degree(&here, k)?;
            let (rows, cols) = (dims.get(&(n + 1)).copied().unwrap_or(0), dims.get(&n).copied().unwrap_or(0));
            let raw_rows = v.as_array().ok_or_else(|| err(&here, "expected a matrix"))?;
            if raw_rows.len() != rows {
                return Err(err(&here, format!("expected {rows} rows, found {}", raw_rows.len())));
            }
            let rows: Vec<Vec<Scalar>> = raw_rows
                .iter()
                .enumerate()
                .map(|(i, row)| r.vector(&format!("{here}[{i}]"), row, cols))
                .collect::<Result<_>>()?;
            diffs.insert(n, Matrix::from_rows(r.field, cols, rows));
        }
    }
    let complex = Complex::new(r.field, dims, diffs);
    let issues = complex.validate();
    if !issues.is_empty() {
        return Err(err(at, format!("not a complex: {issues:?}")));
    }
    Ok((x, y, complex))
}

/// Builds the category a document describes, checking shapes but not the
/// dg category axioms.
pub fn from_document(doc: &Value) -> Result<FiniteDgCategory> {
    let tag = field_of("document", doc, "field")?.as_str().ok_or_else(|| err("field", "expected a field tag"))?;
    let field = Field::parse_tag(tag).map_err(|e| err("field", e.to_string()))?;
    let names = field_of("document", doc, "objects")?.as_array().ok_or_else(|| err("objects", "expected an array"))?;
    let mut cat = FiniteDgCategory::new(field);
    let mut index = HashMap::new();
    for (i, v) in names.iter().enumerate() {
        let at = format!("objects[{i}]");
        let name = v.as_str().ok_or_else(|| err(&at, "expected a name"))?;
        if index.insert(name.to_string(), cat.add_object(name)).is_some() {
            return Err(err(at, format!("duplicate object {name:?}")));
        }
    }
    let r = Reader { field, index };
    let mut seen = HashMap::new();
    let homs = field_of("document", doc, "homs")?.as_array().ok_or_else(|| err("homs", "expected an array"))?;
    for (i, h) in homs.iter().enumerate() {
        let at = format!("homs[{i}]");
        let (x, y, complex) = read_hom(&r, &at, h)?;
        if let Some(j) = seen.insert((x, y), i) {
            return Err(err(at, format!("repeats the pair of homs[{j}]")));
        }
        cat.set_hom(x, y, complex);
    }
    let comp = field_of("document", doc, "comp")?.as_array().ok_or_else(|| err("comp", "expected an array"))?;
    for (i, c) in comp.iter().enumerate() {
        let at = format!("comp[{i}]");
        let objs = field_of(&at, c, "objects")?.as_array().filter(|o| o.len() == 3).ok_or_else(|| err(&at, "expected three objects"))?;
        let x = r.object(&format!("{at}.objects[0]"), &objs[0])?;
        let y = r.object(&format!("{at}.objects[1]"), &objs[1])?;
        let z = r.object(&format!("{at}.objects[2]"), &objs[2])?;
        let degs = field_of(&at, c, "degrees")?.as_array().filter(|d| d.len() == 2).ok_or_else(|| err(&at, "expected two degrees"))?;
        let to_deg = |v: &Value| v.as_i64().map(|d| d as Degree).ok_or_else(|| err(&at, "degrees must be integers"));
        let (m, n) = (to_deg(&degs[0])?, to_deg(&degs[1])?);
        let (a, b) = (usize_of(&at, field_of(&at, c, "g")?)?, usize_of(&at, field_of(&at, c, "f")?)?);
        let location = format!("{at} ({}, {}, {}; degrees {m}, {n})", cat.name(x), cat.name(y), cat.name(z));
        let (dg, df) = (cat.hom_complex(y, z).dim(m), cat.hom_complex(x, y).dim(n));
        if a >= dg || b >= df {
            return Err(err(location, format!("basis index ({a}, {b}) outside {dg} x {df}")));
        }
        let rows = cat.hom_complex(x, z).dim(m + n);
        let value = r.vector(&location, field_of(&at, c, "value")?, rows)?;
        cat.set_product((x, y, z), (m, a), (n, b), value);
    }
    let ids = field_of("document", doc, "ids")?.as_object().ok_or_else(|| err("ids", "expected an object"))?;
    for x in 0..cat.len() {
        let name = cat.name(x).to_string();
        let at = format!("ids.{name}");
        let v = ids.get(&name).ok_or_else(|| err(&at, "missing identity"))?;
        let coeffs = r.vector(&at, v, cat.hom_complex(x, x).dim(0))?;
        cat.set_identity(x, coeffs);
    }
    if let Some(extra) = ids.keys().find(|k| !r.index.contains_key(*k)) {
        return Err(err(format!("ids.{extra}"), "unknown object"));
    }
    Ok(cat)
}

/// Parses and validates a document. Axiom failures are reported at the
/// first failing law and sample.
pub fn parse(text: &str) -> Result<FiniteDgCategory> {
    let doc: Value = serde_json::from_str(text).map_err(|e| err(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    let cat = from_document(&doc)?;
    let objs: Vec<usize> = (0..cat.len()).collect();
    let report = validate_dgcat(&cat, &objs);
    if let Some(c) = report.failures().next() {
        return Err(err(c.sample.clone(), format!("{} fails: {}", c.law, c.witness)));
    }
    Ok(cat)
}
