//! Cone file format.
//!
//! ```json
//! {"name": "orthant3", "ambient_dim": 3, "field": "Q",
//!  "rays": [["1","0","0"], ...], "lineality": [],
//!  "inequalities": [...], "equations": [...]}
//! ```
//!
//! An absent array means that side was not provided. Scalars are strings
//! `"p"` / `"p/q"`, JSON integers, or `{"a": "p/q", "b": "p/q", "d": 7}`.

use serde_json::{json, Map, Value};

use super::{Cone, Generators, Halfspaces};
use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar, Vector};

/// A named cone as read from or written to disk.
#[derive(Clone, Debug)]
pub struct ConeFile {
    pub name: Option<String>,
    pub cone: Cone,
}

fn parse_err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse { path: path.to_string(), message: message.into() }
}

fn parse_rows(v: &Value, path: &str, n: usize, field: Field) -> Result<Vec<Vector>> {
    let rows = v.as_array().ok_or_else(|| parse_err(path, "expected an array of vectors"))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let rp = format!("{path}[{i}]");
            let entries = row.as_array().ok_or_else(|| parse_err(&rp, "expected an array of scalars"))?;
            if entries.len() != n {
                return Err(parse_err(&rp, format!("expected {n} entries, found {}", entries.len())));
            }
            entries
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    let sp = format!("{rp}[{j}]");
                    let s = Scalar::from_json(x).map_err(|m| parse_err(&sp, m))?;
                    if field.join(s.field()).ok() != Some(field) {
                        return Err(parse_err(&sp, format!("scalar {s} is not in declared field {}", field.label())));
                    }
                    Ok(s)
                })
                .collect::<Result<Vector>>()
        })
        .collect()
}

/// Parse a cone file. Errors name the offending JSON path.
pub fn parse_cone_json(text: &str) -> Result<ConeFile> {
    let root: Value = serde_json::from_str(text).map_err(|e| parse_err("$", e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| parse_err("$", "expected an object"))?;
    let n = obj
        .get("ambient_dim")
        .ok_or_else(|| parse_err("$.ambient_dim", "missing"))?
        .as_u64()
        .ok_or_else(|| parse_err("$.ambient_dim", "expected a nonnegative integer"))? as usize;
    let field = match obj.get("field") {
        None => Field::Rational,
        Some(f) => {
            let s = f.as_str().ok_or_else(|| parse_err("$.field", "expected a string"))?;
            Field::parse_label(s).ok_or_else(|| parse_err("$.field", format!("unknown field {s:?}")))?
        }
    };
    let name = match obj.get("name") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(parse_err("$.name", "expected a string")),
    };
    let known = ["name", "ambient_dim", "field", "rays", "lineality", "inequalities", "equations"];
    if let Some(k) = obj.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(parse_err(&format!("$.{k}"), "unknown key"));
    }
    let get = |key: &str| -> Result<Option<Vec<Vector>>> {
        obj.get(key).map(|v| parse_rows(v, &format!("$.{key}"), n, field)).transpose()
    };
    let rays = get("rays")?;
    let lineality = get("lineality")?;
    let inequalities = get("inequalities")?;
    let equations = get("equations")?;

    let gens = (rays.is_some() || lineality.is_some())
        .then(|| Generators { rays: rays.unwrap_or_default(), lineality: lineality.unwrap_or_default() });
    let halfs = (inequalities.is_some() || equations.is_some()).then(|| Halfspaces {
        inequalities: inequalities.unwrap_or_default(),
        equations: equations.unwrap_or_default(),
    });
    let cone = match (gens, halfs) {
        (Some(g), Some(h)) => Cone::from_both(g, h, n).map_err(|e| parse_err("$", e.to_string()))?,
        (Some(g), None) => Cone::from_generators(g.rays, g.lineality, n)?,
        (None, Some(h)) => Cone::from_halfspaces(h.inequalities, h.equations, n)?,
        (None, None) => {
            return Err(parse_err("$", "neither a generator side (rays/lineality) nor a halfspace side is present"))
        }
    };
    Ok(ConeFile { name, cone })
}

fn rows_json(rows: &[Vector]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(Scalar::to_json).collect())).collect())
}

/// Serialize the minimal (canonical) description of both sides.
pub fn cone_to_json(name: Option<&str>, cone: &Cone) -> Value {
    let c = cone.canonical();
    let mut m = Map::new();
    if let Some(name) = name {
        m.insert("name".into(), json!(name));
    }
    m.insert("ambient_dim".into(), json!(c.ambient_dim));
    m.insert("field".into(), json!(cone.field().label()));
    m.insert("rays".into(), rows_json(&c.rays));
    m.insert("lineality".into(), rows_json(&c.lineality));
    m.insert("inequalities".into(), rows_json(&c.facets));
    m.insert("equations".into(), rows_json(&c.equations));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"name":"q","ambient_dim":2,"rays":[["1","0"],[0,1],["2","2"]]}"#;
        let f = parse_cone_json(text).unwrap();
        assert_eq!(f.name.as_deref(), Some("q"));
        let out = cone_to_json(f.name.as_deref(), &f.cone).to_string();
        let again = parse_cone_json(&out).unwrap();
        assert!(again.cone.equals(&f.cone));
        assert_eq!(cone_to_json(Some("q"), &again.cone).to_string(), out);
    }

    #[test]
    fn errors_name_the_path() {
        let bad = r#"{"ambient_dim":2,"rays":[["1","0"],["x","1"]]}"#;
        match parse_cone_json(bad) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "$.rays[1][0]"),
            other => panic!("unexpected {other:?}"),
        }
        let short = r#"{"ambient_dim":3,"inequalities":[["1","0"]]}"#;
        match parse_cone_json(short) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "$.inequalities[0]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn surds_need_a_declared_field() {
        let text = r#"{"ambient_dim":2,"rays":[[{"a":"0","b":"1","d":2},"1"]]}"#;
        assert!(matches!(parse_cone_json(text), Err(Error::Parse { .. })));
        let text = r#"{"ambient_dim":2,"field":"Q(sqrt(2))","rays":[[{"a":"0","b":"1","d":2},"1"]]}"#;
        assert_eq!(parse_cone_json(text).unwrap().cone.field(), Field::Quadratic(2));
    }
}
