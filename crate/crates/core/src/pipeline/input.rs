//! The versioned JSON input document.
//!
//! ```json
//! {"version": 1, "kind": "tensor", "n": 1,
//!  "tensor_components": [[1, 1, 3, 1.0], [1, 3, 1, -1.0]], "tol": 1e-9}
//! {"version": 1, "kind": "lie3",
//!  "structure_constants": {"c12": [0, 0, 2], "c13": [0, 0, 0], "c23": [0, 0, 0]}}
//! ```
//!
//! Tensor indices are 1-based and range over `1..=2n+1`.

use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::decomposition::DEFAULT_TOL;
use crate::lie3::LieAlgebra3;
use crate::space::ApcSpace;
use crate::tensor::Tensor3;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Lie3(LieAlgebra3),
    Tensor {
        n: usize,
        /// 1-based `(i, j, k, value)`.
        components: Vec<(usize, usize, usize, f64)>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub payload: Payload,
    pub tol: f64,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

impl InputDocument {
    pub fn lie3(l: LieAlgebra3, tol: f64) -> Self {
        Self {
            payload: Payload::Lie3(l),
            tol,
        }
    }

    /// Sparse document holding the nonzero components of `f`.
    pub fn from_tensor(f: &Tensor3, tol: f64) -> Self {
        let components = f
            .nonzero()
            .into_iter()
            .map(|(i, j, k, v)| (i + 1, j + 1, k + 1, v))
            .collect();
        Self {
            payload: Payload::Tensor {
                n: f.space().n(),
                components,
            },
            tol,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.payload {
            Payload::Lie3(_) => "lie3",
            Payload::Tensor { .. } => "tensor",
        }
    }

    pub fn n(&self) -> usize {
        match self.payload {
            Payload::Lie3(_) => 1,
            Payload::Tensor { n, .. } => n,
        }
    }

    /// The dense tensor of a `tensor` document. Not available for `lie3`
    /// documents, whose tensor depends on the Jacobi check.
    pub fn tensor(&self) -> Result<Tensor3> {
        match &self.payload {
            Payload::Tensor { n, components } => {
                let mut f = Tensor3::zeros(ApcSpace::new(*n)?);
                for &(i, j, k, v) in components {
                    f.set(i - 1, j - 1, k - 1, v);
                }
                Ok(f)
            }
            Payload::Lie3(_) => Err(invalid("lie3 document has no explicit tensor")),
        }
    }

    pub fn to_value(&self) -> Value {
        match &self.payload {
            Payload::Lie3(l) => json!({
                "version": SCHEMA_VERSION,
                "kind": "lie3",
                "n": 1,
                "structure_constants": {"c12": l.c12, "c13": l.c13, "c23": l.c23},
                "tol": self.tol,
            }),
            Payload::Tensor { n, components } => {
                let comps: Vec<Value> = components
                    .iter()
                    .map(|&(i, j, k, v)| json!([i, j, k, v]))
                    .collect();
                json!({
                    "version": SCHEMA_VERSION,
                    "kind": "tensor",
                    "n": n,
                    "tensor_components": comps,
                    "tol": self.tol,
                })
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values are finite")
    }
}

fn get_u64(obj: &Map<String, Value>, key: &str) -> Result<Option<u64>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v
            .as_u64()
            .map(Some)
            .ok_or_else(|| invalid(format!("`{key}` must be a non-negative integer"))),
    }
}

fn as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| invalid(format!("{what} must be a finite number")))
}

fn vec3(v: &Value, what: &str) -> Result<[f64; 3]> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| invalid(format!("{what} must be a list of 3 numbers")))?;
    Ok([
        as_f64(&arr[0], what)?,
        as_f64(&arr[1], what)?,
        as_f64(&arr[2], what)?,
    ])
}

const KEYS: [&str; 6] = [
    "version",
    "kind",
    "n",
    "structure_constants",
    "tensor_components",
    "tol",
];

pub fn parse_input(text: &str) -> Result<InputDocument> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
        message: e
            .to_string()
            .split(" at line")
            .next()
            .unwrap_or_default()
            .to_string(),
        line: e.line(),
        column: e.column(),
    })?;
    let obj = root
        .as_object()
        .ok_or_else(|| invalid("document must be a JSON object"))?;
    if let Some(key) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(invalid(format!("unknown key `{key}`")));
    }
    match get_u64(obj, "version")? {
        Some(SCHEMA_VERSION) => {}
        Some(v) => return Err(invalid(format!("unsupported version {v}"))),
        None => return Err(invalid("missing `version`")),
    }
    let tol = match obj.get("tol") {
        None => DEFAULT_TOL,
        Some(v) => {
            let t = as_f64(v, "`tol`")?;
            if t <= 0.0 {
                return Err(invalid("`tol` must be positive"));
            }
            t
        }
    };
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| invalid("missing or non-string `kind`"))?;
    let n = get_u64(obj, "n")?;

    let payload = match kind {
        "lie3" => {
            if let Some(n) = n.filter(|&n| n != 1) {
                return Err(invalid(format!("lie3 documents require n = 1, got {n}")));
            }
            if obj.contains_key("tensor_components") {
                return Err(invalid("lie3 documents take no `tensor_components`"));
            }
            let sc = obj
                .get("structure_constants")
                .and_then(Value::as_object)
                .ok_or_else(|| invalid("lie3 documents require `structure_constants`"))?;
            if let Some(key) = sc
                .keys()
                .find(|k| !["c12", "c13", "c23"].contains(&k.as_str()))
            {
                return Err(invalid(format!("unknown structure constant `{key}`")));
            }
            let field = |name: &str| {
                sc.get(name)
                    .ok_or_else(|| invalid(format!("missing structure constant `{name}`")))
                    .and_then(|v| vec3(v, name))
            };
            Payload::Lie3(LieAlgebra3::new(
                field("c12")?,
                field("c13")?,
                field("c23")?,
            ))
        }
        "tensor" => {
            if obj.contains_key("structure_constants") {
                return Err(invalid("tensor documents take no `structure_constants`"));
            }
            let n = n.ok_or_else(|| invalid("tensor documents require `n`"))? as usize;
            if n == 0 {
                return Err(invalid("`n` must be at least 1"));
            }
            let dim = 2 * n + 1;
            let list = match obj.get("tensor_components") {
                None => Vec::new(),
                Some(v) => v
                    .as_array()
                    .ok_or_else(|| invalid("`tensor_components` must be a list"))?
                    .clone(),
            };
            let mut seen = BTreeSet::new();
            let mut components = Vec::with_capacity(list.len());
            for (pos, entry) in list.iter().enumerate() {
                let arr = entry.as_array().filter(|a| a.len() == 4).ok_or_else(|| {
                    invalid(format!("component #{} must be [i, j, k, value]", pos + 1))
                })?;
                let mut idx = [0usize; 3];
                for (slot, v) in idx.iter_mut().zip(arr) {
                    let i = v.as_u64().ok_or_else(|| {
                        invalid(format!(
                            "component #{}: indices must be positive integers",
                            pos + 1
                        ))
                    })? as usize;
                    if i < 1 || i > dim {
                        return Err(invalid(format!(
                            "component #{}: index {i} out of range 1..={dim}",
                            pos + 1
                        )));
                    }
                    *slot = i;
                }
                let value = as_f64(&arr[3], &format!("component #{} value", pos + 1))?;
                if !seen.insert(idx) {
                    return Err(invalid(format!(
                        "duplicate component ({}, {}, {})",
                        idx[0], idx[1], idx[2]
                    )));
                }
                components.push((idx[0], idx[1], idx[2], value));
            }
            Payload::Tensor { n, components }
        }
        other => {
            return Err(invalid(format!(
                "unknown kind `{other}` (expected lie3 or tensor)"
            )))
        }
    };
    Ok(InputDocument { payload, tol })
}

pub fn read_input(path: &Path) -> Result<InputDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lie3_document() {
        let doc = parse_input(
            r#"{"version":1,"kind":"lie3","structure_constants":{"c12":[0,0,2],"c13":[0,0,0],"c23":[0,0,0]}}"#,
        )
        .unwrap();
        assert_eq!(
            doc.payload,
            Payload::Lie3(LieAlgebra3::new([0.0, 0.0, 2.0], [0.0; 3], [0.0; 3]))
        );
        assert_eq!(doc.tol, DEFAULT_TOL);
    }

    #[test]
    fn empty_tensor_document() {
        let doc =
            parse_input(r#"{"version":1,"kind":"tensor","n":2,"tensor_components":[]}"#).unwrap();
        assert_eq!(doc.tensor().unwrap().max_abs(), 0.0);
        assert_eq!(doc.tensor().unwrap().space().dim(), 5);
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            r#"{"version":1,"kind":"tensor","n":2,"tensor_components":[[6,1,1,1.0]]}"#,
            r#"{"version":1,"kind":"tensor","n":1,"tensor_components":[[1,1,3,1.0],[1,1,3,2.0]]}"#,
            r#"{"version":1,"kind":"lie3","n":2,"structure_constants":{"c12":[0,0,1],"c13":[0,0,0],"c23":[0,0,0]}}"#,
            r#"{"version":2,"kind":"tensor","n":1}"#,
            r#"{"version":1,"kind":"tensor","n":1,"extra":0}"#,
            r#"{"version":1,"kind":"tensor","n":1,"tol":-1}"#,
            r#"{"version":1,"kind":"tensor","n":0}"#,
        ];
        for text in cases {
            assert!(
                matches!(parse_input(text), Err(Error::Validation(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_input("{\n  \"version\": 1,\n  \"kind\": tensor\n}").unwrap_err();
        match err {
            Error::Syntax { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn round_trip() {
        let docs = [
            InputDocument::lie3(
                LieAlgebra3::new([0.1, -0.2, 0.3], [1e-17, 0.0, 5.0], [0.0; 3]),
                1e-8,
            ),
            InputDocument {
                payload: Payload::Tensor {
                    n: 2,
                    components: vec![(1, 2, 5, 0.1 + 0.2), (5, 5, 1, -3.0)],
                },
                tol: 1e-9,
            },
        ];
        for doc in docs {
            assert_eq!(parse_input(&doc.to_json()).unwrap(), doc);
        }
    }
}
