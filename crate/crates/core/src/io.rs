//! JSON file formats.
//!
//! ```text
//! line measure   {"space": "line", "atoms": ["0", "1/4"], "weights": ["2/3", "1/3"]}
//! finite space   {"space": {"n": 3, "dist": [["0", "1", "2"], ...]}, "atoms": [0, 2], "weights": [...]}
//! distribution   {"breakpoints": [...], "values": [...], "slopes": [...]}
//! corpus         {"sequence": ["a.json", {...inline...}], "limit": "f.json"}
//! ```
//!
//! Numbers are strings `"p/q"` or `"p"`, or JSON integers.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::measures::{Atoms, DiscreteMeasure, FiniteMetricSpace, Law, PiecewiseCdf, Space};
use crate::scalar::Scalar;

fn number<T: Scalar>(v: &Value, field: &str) -> Result<T> {
    match v {
        Value::String(s) => {
            T::parse_rational(s).ok_or_else(|| Error::invalid(field, format!("malformed rational {s:?}")))
        }
        Value::Number(n) if n.is_i64() => Ok(T::from_int(n.as_i64().expect("checked"))),
        other => Err(Error::invalid(
            field,
            format!("expected a rational like \"3/8\", found {other}"),
        )),
    }
}

fn array<'a>(obj: &'a Map<String, Value>, field: &str) -> Result<&'a Vec<Value>> {
    obj.get(field)
        .ok_or_else(|| Error::invalid(field, "missing"))?
        .as_array()
        .ok_or_else(|| Error::invalid(field, "expected an array"))
}

fn numbers<T: Scalar>(obj: &Map<String, Value>, field: &str) -> Result<Vec<T>> {
    array(obj, field)?
        .iter()
        .enumerate()
        .map(|(i, v)| number(v, &format!("{field}[{i}]")))
        .collect()
}

fn parse_space<T: Scalar>(v: &Value) -> Result<Space<T>> {
    match v {
        Value::String(s) if s == "line" => Ok(Space::Line),
        Value::Object(o) => {
            let rows = array(o, "dist").map_err(|e| prefix("space", e))?;
            let dist = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let row = row
                        .as_array()
                        .ok_or_else(|| Error::invalid(format!("space.dist[{i}]"), "expected an array"))?;
                    row.iter()
                        .enumerate()
                        .map(|(j, x)| number(x, &format!("space.dist[{i}][{j}]")))
                        .collect()
                })
                .collect::<Result<Vec<Vec<T>>>>()?;
            if let Some(n) = o.get("n") {
                if n.as_u64() != Some(dist.len() as u64) {
                    return Err(Error::invalid(
                        "space.n",
                        format!("{n} does not match {} rows", dist.len()),
                    ));
                }
            }
            Ok(Space::Finite(Arc::new(
                FiniteMetricSpace::new(dist).map_err(|e| prefix("space", e))?,
            )))
        }
        other => Err(Error::invalid(
            "space",
            format!("expected \"line\" or an object, found {other}"),
        )),
    }
}

fn prefix(field: &str, e: Error) -> Error {
    match e {
        Error::Invalid { field: f, message } => Error::invalid(format!("{field}.{f}"), message),
        other => other,
    }
}

/// Parses a measure or distribution function from a JSON value.
pub fn law_from_json<T: Scalar>(v: &Value) -> Result<Law<T>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::invalid("measure", "expected a JSON object"))?;
    if obj.contains_key("breakpoints") {
        let f = PiecewiseCdf::new(
            numbers(obj, "breakpoints")?,
            numbers(obj, "values")?,
            numbers(obj, "slopes")?,
        )?;
        return Ok(f.into());
    }
    let space = parse_space(obj.get("space").unwrap_or(&Value::String("line".into())))?;
    let weights = numbers(obj, "weights")?;
    let atoms = match &space {
        Space::Line => Atoms::Line(numbers(obj, "atoms")?),
        Space::Finite(_) => Atoms::Points(
            array(obj, "atoms")?
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    a.as_u64()
                        .map(|k| k as usize)
                        .ok_or_else(|| Error::invalid(format!("atoms[{i}]"), "expected a point index"))
                })
                .collect::<Result<_>>()?,
        ),
    };
    Ok(DiscreteMeasure::new(space, atoms, weights)?.into())
}

pub fn parse_law<T: Scalar>(text: &str) -> Result<Law<T>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::invalid("json", e.to_string()))?;
    law_from_json(&v)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Io { .. } => e,
        other => Error::Io {
            path: path.display().to_string(),
            message: other.to_string(),
        },
    }
}

/// Reads a measure file; errors carry the path.
pub fn read_law<T: Scalar>(path: &Path) -> Result<Law<T>> {
    parse_law(&read(path)?).map_err(|e| in_file(path, e))
}

pub fn render<T: Scalar>(x: &T) -> Value {
    Value::String(x.render())
}

pub fn approx<T: Scalar>(x: &T) -> Value {
    json!(x.to_f64_approx())
}

/// `{"name": "p/q", "name_approx": 0.375}` style pair.
pub fn put_number<T: Scalar>(obj: &mut Map<String, Value>, name: &str, x: &T) {
    obj.insert(name.to_string(), render(x));
    obj.insert(format!("{name}_approx"), approx(x));
}

pub fn space_to_json<T: Scalar>(space: &Space<T>) -> Value {
    match space {
        Space::Line => json!("line"),
        Space::Finite(fs) => json!({
            "n": fs.len(),
            "dist": fs.matrix().iter().map(|r| r.iter().map(render).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
    }
}

pub fn measure_to_json<T: Scalar>(m: &DiscreteMeasure<T>) -> Value {
    let atoms: Vec<Value> = match m.atoms() {
        Atoms::Line(a) => a.iter().map(render).collect(),
        Atoms::Points(p) => p.iter().map(|&i| json!(i)).collect(),
    };
    json!({
        "space": space_to_json(m.space()),
        "atoms": atoms,
        "weights": m.weights().iter().map(render).collect::<Vec<_>>(),
    })
}

pub fn cdf_to_json<T: Scalar>(f: &PiecewiseCdf<T>) -> Value {
    json!({
        "breakpoints": f.breakpoints().iter().map(render).collect::<Vec<_>>(),
        "values": f.values().iter().map(render).collect::<Vec<_>>(),
        "slopes": f.slopes().iter().map(render).collect::<Vec<_>>(),
    })
}

pub fn law_to_json<T: Scalar>(law: &Law<T>) -> Value {
    match law {
        Law::Discrete(m) => measure_to_json(m),
        Law::Cdf(f) => cdf_to_json(f),
    }
}

#[derive(Debug, Clone)]
pub struct Corpus<T> {
    pub sequence: Vec<Law<T>>,
    pub limit: Option<Law<T>>,
}

fn corpus_entry<T: Scalar>(v: &Value, base: &Path, field: &str) -> Result<Law<T>> {
    match v {
        Value::String(p) => {
            let path: PathBuf = base.join(p);
            read_law(&path)
        }
        Value::Object(_) => law_from_json(v).map_err(|e| prefix(field, e)),
        other => Err(Error::invalid(
            field,
            format!("expected a file name or a measure, found {other}"),
        )),
    }
}

/// Reads a sequence corpus; file names are relative to the corpus file.
pub fn read_corpus<T: Scalar>(path: &Path) -> Result<Corpus<T>> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| in_file(path, Error::invalid("json", e.to_string())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    let obj = v
        .as_object()
        .ok_or_else(|| in_file(path, Error::invalid("corpus", "expected a JSON object")))?;
    let items = array(obj, "sequence").map_err(|e| in_file(path, e))?;
    if items.is_empty() {
        return Err(in_file(path, Error::invalid("sequence", "must not be empty")));
    }
    let sequence = items
        .iter()
        .enumerate()
        .map(|(i, v)| corpus_entry(v, base, &format!("sequence[{i}]")))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| in_file(path, e))?;
    let limit = match obj.get("limit") {
        None | Some(Value::Null) => None,
        Some(v) => Some(corpus_entry(v, base, "limit").map_err(|e| in_file(path, e))?),
    };
    Ok(Corpus { sequence, limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{arb_cdf, arb_measure, r};
    use num_rational::BigRational;
    use proptest::prelude::*;

    type L = Law<BigRational>;

    #[test]
    fn worked_example_file() {
        let nu: L = parse_law(r#"{"space": "line", "atoms": ["0", "1/4"], "weights": ["2/3", "1/3"]}"#).unwrap();
        let m = nu.discrete().unwrap();
        assert_eq!(m.line_atoms().unwrap(), &[r("0"), r("1/4")]);
        let f: L = parse_law(r#"{"breakpoints": ["0", "1"], "values": ["0", "1"], "slopes": ["1"]}"#).unwrap();
        assert_eq!(f.cdf().unwrap().eval(&r("1/2")), r("1/2"));
    }

    #[test]
    fn validation_errors_name_fields() {
        let err = |t: &str| parse_law::<BigRational>(t).unwrap_err().to_string();
        assert!(err(r#"{"atoms": [], "weights": []}"#).contains("atoms"));
        assert!(err(r#"{"atoms": ["0", "1"], "weights": ["1/2", "1/3"]}"#).contains("sum to 5/6"));
        assert!(err(r#"{"atoms": ["0", "x"], "weights": ["1/2", "1/2"]}"#).contains("atoms[1]: malformed rational"));
        assert!(err(r#"{"atoms": ["0"], "weights": [0.5]}"#).contains("weights[0]"));
        let dec = err(r#"{"breakpoints": ["0", "1", "2"], "values": ["1/2", "1/4", "1"], "slopes": ["0", "-1/4"]}"#);
        assert!(dec.contains("slopes[1]") && dec.contains("breakpoint 1"), "{dec}");
        assert!(err("{").contains("line 1"));
        let bad_space = err(r#"{"space": {"n": 2, "dist": [["0", "1"], ["2", "0"]]}, "atoms": [0], "weights": ["1"]}"#);
        assert!(bad_space.contains("space.dist[0][1]"), "{bad_space}");
    }

    #[test]
    fn finite_space_round_trip() {
        let text = r#"{"space": {"n": 3, "dist": [["0", "1", "2"], ["1", "0", "1"], ["2", "1", "0"]]},
                       "atoms": [2, 0], "weights": ["1/4", "3/4"]}"#;
        let m: L = parse_law(text).unwrap();
        assert_eq!(parse_law::<BigRational>(&law_to_json(&m).to_string()).unwrap(), m);
        assert!(parse_law::<BigRational>(&text.replace("[2, 0]", "[5, 0]")).is_err());
    }

    #[test]
    fn corpus_files() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("a.json"), r#"{"atoms": ["1"], "weights": ["1"]}"#).unwrap();
        std::fs::write(
            dir.path().join("c.json"),
            r#"{"sequence": ["a.json", {"atoms": ["1/2"], "weights": ["1"]}], "limit": {"atoms": ["0"], "weights": ["1"]}}"#,
        )
        .unwrap();
        let c: Corpus<BigRational> = read_corpus(&dir.path().join("c.json")).unwrap();
        assert_eq!(c.sequence.len(), 2);
        assert!(c.limit.is_some());
        std::fs::write(dir.path().join("d.json"), r#"{"sequence": ["missing.json"]}"#).unwrap();
        assert!(read_corpus::<BigRational>(&dir.path().join("d.json"))
            .unwrap_err()
            .to_string()
            .contains("missing.json"));
    }

    proptest! {
        #[test]
        fn measure_round_trip(m in arb_measure(6)) {
            let law: L = m.into();
            prop_assert_eq!(parse_law::<BigRational>(&law_to_json(&law).to_string()).unwrap(), law);
        }

        #[test]
        fn cdf_round_trip(f in arb_cdf()) {
            let law: L = f.clone().into();
            let back: L = parse_law(&law_to_json(&law).to_string()).unwrap();
            prop_assert_eq!(back.cdf().unwrap(), f);
        }
    }
}
