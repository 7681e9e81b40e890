//! The matrix file format and canonical JSON output.
//!
//! A matrix document is a JSON object with a `nodes` array of labels and a
//! square row-major `matrix`. Entries are either all JSON integers (a flow
//! network) or include rational strings such as `"1/2"` (a stochastic
//! matrix). Nodes may be listed in any order on input; output always uses
//! sorted node order.

use std::str::FromStr;

use ifn_core::rational::rational;
use ifn_core::sigtext::MAX_COEFFICIENT;
use ifn_core::{FlowNetwork, NodeId, Rational, RationalMatrix};
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::error::{AppError, AppResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    Integer,
    Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixDocument {
    matrix: RationalMatrix,
    kind: EntryKind,
}

impl MatrixDocument {
    pub fn from_network(net: &FlowNetwork) -> Self {
        let entries = net
            .to_dense()
            .into_iter()
            .map(|row| row.into_iter().map(rational).collect())
            .collect();
        MatrixDocument {
            matrix: RationalMatrix::new(net.node_list(), entries)
                .expect("network nodes are sorted and distinct"),
            kind: EntryKind::Integer,
        }
    }

    pub fn from_rational(matrix: RationalMatrix) -> Self {
        MatrixDocument {
            matrix,
            kind: EntryKind::Rational,
        }
    }

    pub fn parse(text: &str) -> AppResult<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| {
            AppError::input(
                "InvalidJson",
                format!("matrix document is not valid JSON: {e}"),
            )
        })?;
        Self::from_json(&value)
    }

    pub fn from_json(value: &Value) -> AppResult<Self> {
        let object = value.as_object().ok_or_else(|| {
            AppError::input("InvalidDocument", "matrix document must be a JSON object")
        })?;
        let nodes = object
            .get("nodes")
            .and_then(Value::as_array)
            .ok_or_else(|| {
                AppError::input("MissingField", "matrix document needs a \"nodes\" array")
            })?
            .iter()
            .map(|v| {
                let label = v.as_str().ok_or_else(|| {
                    AppError::input("InvalidDocument", "node labels must be strings")
                })?;
                Ok(NodeId::new(label)?)
            })
            .collect::<AppResult<Vec<_>>>()?;
        let rows = object
            .get("matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| {
                AppError::input("MissingField", "matrix document needs a \"matrix\" array")
            })?;

        let mut kind = EntryKind::Integer;
        let mut entries = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| {
                AppError::input("InvalidDocument", format!("matrix row {i} is not an array"))
            })?;
            let mut parsed = Vec::with_capacity(row.len());
            for (j, entry) in row.iter().enumerate() {
                let (value, entry_kind) = parse_entry(entry).map_err(|why| {
                    AppError::input("InvalidEntry", format!("matrix entry [{i}][{j}]: {why}"))
                })?;
                if entry_kind == EntryKind::Rational {
                    kind = EntryKind::Rational;
                }
                parsed.push(value);
            }
            entries.push(parsed);
        }
        let matrix = RationalMatrix::from_unsorted(nodes, entries)?;
        Ok(MatrixDocument { matrix, kind })
    }

    pub fn kind(&self) -> EntryKind {
        self.kind
    }

    pub fn nodes(&self) -> &[NodeId] {
        self.matrix.nodes()
    }

    pub fn rational_matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    /// Reads the document as a flow network. Every entry must be an integer
    /// between 0 and the coefficient cap, whether written as a number or a
    /// string.
    pub fn to_network(&self) -> AppResult<FlowNetwork> {
        let mut dense = Vec::with_capacity(self.matrix.size());
        for (i, row) in self.matrix.entries().iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, x) in row.iter().enumerate() {
                let flow = x
                    .is_integer()
                    .then(|| x.to_integer().to_u64())
                    .flatten()
                    .filter(|&f| f <= MAX_COEFFICIENT)
                    .ok_or_else(|| {
                        AppError::input(
                            "InvalidEntry",
                            format!(
                                "matrix entry [{i}][{j}] = {x}: flows must be integers between 0 and {MAX_COEFFICIENT}"
                            ),
                        )
                    })?;
                out.push(flow);
            }
            dense.push(out);
        }
        Ok(FlowNetwork::from_dense(self.matrix.nodes(), &dense)?)
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .matrix
            .entries()
            .iter()
            .map(|row| Value::Array(row.iter().map(|x| entry_json(x, self.kind)).collect()))
            .collect();
        json!({
            "nodes": node_labels(self.matrix.nodes()),
            "matrix": rows,
        })
    }
}

fn parse_entry(entry: &Value) -> Result<(Rational, EntryKind), String> {
    match entry {
        Value::Number(n) => n
            .as_u64()
            .filter(|&v| v <= MAX_COEFFICIENT)
            .map(|v| (rational(v), EntryKind::Integer))
            .ok_or_else(|| format!("{n} is not an integer between 0 and {MAX_COEFFICIENT}")),
        Value::String(s) => rational_from_str(s).map(|r| (r, EntryKind::Rational)),
        other => Err(format!(
            "{other} is neither an integer nor a rational string"
        )),
    }
}

/// Parses `"n"` or `"p/q"` with `q > 0`.
pub fn rational_from_str(s: &str) -> Result<Rational, String> {
    let well_formed = !s.is_empty()
        && s.split('/').count() <= 2
        && s.split('/').enumerate().all(|(i, part)| {
            let digits = if i == 0 {
                part.strip_prefix('-').unwrap_or(part)
            } else {
                part
            };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        });
    if !well_formed {
        return Err(format!("{s:?} is not a rational of the form \"p/q\""));
    }
    let value = Rational::from_str(s).map_err(|_| format!("{s:?} has a zero denominator"))?;
    Ok(value)
}

fn entry_json(x: &Rational, kind: EntryKind) -> Value {
    match kind {
        EntryKind::Integer => match x.to_integer().to_u64() {
            Some(v) if x.is_integer() && !x.is_negative() => Value::from(v),
            _ => Value::String(x.to_string()),
        },
        EntryKind::Rational => Value::String(x.to_string()),
    }
}

pub fn rational_json(x: &Rational) -> Value {
    Value::String(x.to_string())
}

pub fn rational_matrix_json(m: &RationalMatrix) -> Value {
    Value::Array(
        m.entries()
            .iter()
            .map(|row| Value::Array(row.iter().map(rational_json).collect()))
            .collect(),
    )
}

pub fn node_labels<'a>(nodes: impl IntoIterator<Item = &'a NodeId>) -> Value {
    Value::Array(nodes.into_iter().map(|n| Value::from(n.as_str())).collect())
}

/// Compact JSON with object keys in sorted order, followed by a newline.
pub fn canonical_json(value: &Value) -> String {
    let mut text = serde_json::to_string(&sorted(value)).expect("JSON values always serialize");
    text.push('\n');
    text
}

fn sorted(value: &Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), sorted(&map[k]));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.iter().map(sorted).collect()),
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_documents_round_trip() {
        let text =
            r#"{"matrix":[[1,1,0,0],[0,3,1,1],[0,0,0,1],[1,1,0,0]],"nodes":["a","b","c","d"]}"#;
        let doc = MatrixDocument::parse(text).unwrap();
        assert_eq!(doc.kind(), EntryKind::Integer);
        assert_eq!(canonical_json(&doc.to_json()), format!("{text}\n"));
        let net = doc.to_network().unwrap();
        assert_eq!(MatrixDocument::from_network(&net), doc);
    }

    #[test]
    fn nodes_are_sorted_on_input() {
        let doc = MatrixDocument::parse(r#"{"nodes":["b","a"],"matrix":[[0,2],[1,0]]}"#).unwrap();
        assert_eq!(
            canonical_json(&doc.to_json()),
            "{\"matrix\":[[0,1],[2,0]],\"nodes\":[\"a\",\"b\"]}\n"
        );
    }

    #[test]
    fn rational_entries_switch_the_kind() {
        let doc =
            MatrixDocument::parse(r#"{"nodes":["a","b"],"matrix":[[0,1],["1/2","2/4"]]}"#).unwrap();
        assert_eq!(doc.kind(), EntryKind::Rational);
        assert_eq!(
            canonical_json(&doc.to_json()),
            "{\"matrix\":[[\"0\",\"1\"],[\"1/2\",\"1/2\"]],\"nodes\":[\"a\",\"b\"]}\n"
        );
        assert!(doc.to_network().is_err());
    }

    #[test]
    fn integral_rational_strings_read_as_flows() {
        let doc = MatrixDocument::parse(r#"{"nodes":["a"],"matrix":[["3"]]}"#).unwrap();
        assert_eq!(doc.to_network().unwrap().total_flow(), 3);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let bad = [
            "[1]",
            "not json",
            r#"{"nodes":["a"]}"#,
            r#"{"matrix":[[1]]}"#,
            r#"{"nodes":["a","a"],"matrix":[[1,0],[0,1]]}"#,
            r#"{"nodes":["a","b"],"matrix":[[1,0]]}"#,
            r#"{"nodes":["a","b"],"matrix":[[1,0],[0]]}"#,
            r#"{"nodes":["a"],"matrix":[[-1]]}"#,
            r#"{"nodes":["a"],"matrix":[[1.5]]}"#,
            r#"{"nodes":["a"],"matrix":[[4294967296]]}"#,
            r#"{"nodes":["a"],"matrix":[["1/0"]]}"#,
            r#"{"nodes":["a"],"matrix":[["x"]]}"#,
            r#"{"nodes":["1a"],"matrix":[[1]]}"#,
            r#"{"nodes":[3],"matrix":[[1]]}"#,
            r#"{"nodes":["a"],"matrix":[null]}"#,
        ];
        for text in bad {
            let err = MatrixDocument::parse(text).unwrap_err();
            assert!(!err.is_domain(), "{text}: {err}");
        }
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_from_str("3").unwrap().to_string(), "3");
        assert_eq!(rational_from_str("-6/4").unwrap().to_string(), "-3/2");
        for s in ["", "/", "1/", "/2", "1/2/3", "+1", "1 /2", "1/-2", "0x1"] {
            assert!(rational_from_str(s).is_err(), "{s}");
        }
    }

    #[test]
    fn canonical_json_sorts_nested_keys() {
        let v = json!({"b": {"z": 1, "y": [{"d": 1, "c": 2}]}, "a": true});
        assert_eq!(
            canonical_json(&v),
            "{\"a\":true,\"b\":{\"y\":[{\"c\":2,\"d\":1}],\"z\":1}}\n"
        );
    }
}
