//! Instance documents.
//!
//! The structured form is a JSON object with exactly the keys `universe`,
//! `blocks` and `x`:
//!
//! ```json
//! {"universe": ["1", "2", "3"], "blocks": [["1", "2"], ["3"]], "x": ["1"]}
//! ```
//!
//! The compact form is line based, for writing instances by hand:
//!
//! ```text
//! universe: 1, 2, 3
//! blocks: 1, 2 | 3
//! x: 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored in the compact form.

use std::collections::HashMap;
use std::fmt;

use rough_matroid::{ParametricInstance, Partition, Subset, Universe};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceErrorKind {
    Malformed,
    InvalidPartition,
    XNotSubset,
}

impl fmt::Display for InstanceErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceErrorKind::Malformed => "malformed-document",
            InstanceErrorKind::InvalidPartition => "invalid-partition",
            InstanceErrorKind::XNotSubset => "x-not-subset",
        })
    }
}

/// A rejected document, with the path of the offending field
/// (`blocks[1][0]`, `x[2]`, ...).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at {path}: {message}")]
pub struct InstanceError {
    pub kind: InstanceErrorKind,
    pub path: String,
    pub message: String,
}

fn err(
    kind: InstanceErrorKind,
    path: impl Into<String>,
    message: impl Into<String>,
) -> InstanceError {
    InstanceError {
        kind,
        path: path.into(),
        message: message.into(),
    }
}

/// The three fields of a document before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RawInstance {
    pub universe: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    pub x: Vec<String>,
}

/// Parses either form; a document whose first non-blank character is `{` is
/// read as JSON.
pub fn parse_instance(text: &str) -> Result<ParametricInstance, InstanceError> {
    let raw = if text.trim_start().starts_with('{') {
        parse_structured(text)?
    } else {
        parse_compact(text)?
    };
    validate(&raw)
}

fn string_array(v: &Value, path: &str) -> Result<Vec<String>, InstanceError> {
    let items = v
        .as_array()
        .ok_or_else(|| err(InstanceErrorKind::Malformed, path, "expected an array"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            item.as_str().map(str::to_owned).ok_or_else(|| {
                err(
                    InstanceErrorKind::Malformed,
                    format!("{path}[{i}]"),
                    "expected a string",
                )
            })
        })
        .collect()
}

pub fn parse_structured(text: &str) -> Result<RawInstance, InstanceError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| err(InstanceErrorKind::Malformed, "$", e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| err(InstanceErrorKind::Malformed, "$", "expected an object"))?;
    if let Some(k) = obj
        .keys()
        .find(|k| !["universe", "blocks", "x"].contains(&k.as_str()))
    {
        return Err(err(InstanceErrorKind::Malformed, k.as_str(), "unknown key"));
    }
    let field = |k: &str| {
        obj.get(k)
            .ok_or_else(|| err(InstanceErrorKind::Malformed, k, "missing key"))
    };
    let universe = string_array(field("universe")?, "universe")?;
    let blocks = field("blocks")?
        .as_array()
        .ok_or_else(|| err(InstanceErrorKind::Malformed, "blocks", "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, b)| string_array(b, &format!("blocks[{i}]")))
        .collect::<Result<_, _>>()?;
    let x = string_array(field("x")?, "x")?;
    Ok(RawInstance {
        universe,
        blocks,
        x,
    })
}

fn split_ids(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}

pub fn parse_compact(text: &str) -> Result<RawInstance, InstanceError> {
    let mut fields: HashMap<&str, &str> = HashMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let path = format!("line {}", n + 1);
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(InstanceErrorKind::Malformed, &path, "expected `key: value`"))?;
        let key = key.trim();
        if !["universe", "blocks", "x"].contains(&key) {
            return Err(err(
                InstanceErrorKind::Malformed,
                path,
                format!("unknown key `{key}`"),
            ));
        }
        if fields.insert(key, value.trim()).is_some() {
            return Err(err(
                InstanceErrorKind::Malformed,
                path,
                format!("repeated key `{key}`"),
            ));
        }
    }
    let field = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| err(InstanceErrorKind::Malformed, k, "missing key"))
    };
    let universe = split_ids(field("universe")?);
    let blocks_text = field("blocks")?;
    let blocks = if blocks_text.is_empty() {
        Vec::new()
    } else {
        blocks_text.split('|').map(split_ids).collect()
    };
    let x = split_ids(field("x")?);
    Ok(RawInstance {
        universe,
        blocks,
        x,
    })
}

pub fn validate(raw: &RawInstance) -> Result<ParametricInstance, InstanceError> {
    use InstanceErrorKind::*;
    let mut index = HashMap::new();
    for (i, id) in raw.universe.iter().enumerate() {
        if index.insert(id.as_str(), i).is_some() {
            return Err(err(
                Malformed,
                format!("universe[{i}]"),
                format!("duplicate element `{id}`"),
            ));
        }
    }
    if raw.universe.is_empty() {
        return Err(err(Malformed, "universe", "universe is empty"));
    }
    let universe = Universe::new(raw.universe.iter().cloned())
        .map_err(|e| err(Malformed, "universe", e.to_string()))?;
    let mut owner: Vec<Option<usize>> = vec![None; raw.universe.len()];
    let mut blocks = Vec::with_capacity(raw.blocks.len());
    for (b, ids) in raw.blocks.iter().enumerate() {
        if ids.is_empty() {
            return Err(err(InvalidPartition, format!("blocks[{b}]"), "empty block"));
        }
        let mut block = universe.empty_set();
        for (j, id) in ids.iter().enumerate() {
            let path = format!("blocks[{b}][{j}]");
            let &i = index.get(id.as_str()).ok_or_else(|| {
                err(
                    InvalidPartition,
                    &path,
                    format!("`{id}` is not in the universe"),
                )
            })?;
            if let Some(prev) = owner[i] {
                return Err(err(
                    InvalidPartition,
                    path,
                    format!("element `{id}` already appears in blocks[{prev}]"),
                ));
            }
            owner[i] = Some(b);
            block.insert(i);
        }
        blocks.push(block);
    }
    if let Some(i) = owner.iter().position(Option::is_none) {
        return Err(err(
            InvalidPartition,
            "blocks",
            format!("element `{}` is in no block", raw.universe[i]),
        ));
    }
    let mut x = universe.empty_set();
    for (j, id) in raw.x.iter().enumerate() {
        let &i = index.get(id.as_str()).ok_or_else(|| {
            err(
                XNotSubset,
                format!("x[{j}]"),
                format!("`{id}` is not in the universe"),
            )
        })?;
        x.insert(i);
    }
    let partition = Partition::new(universe, blocks)
        .map_err(|e| err(InvalidPartition, "blocks", e.to_string()))?;
    ParametricInstance::from_partition(partition, x).map_err(|e| err(Malformed, "x", e.to_string()))
}

fn ids(universe: &Universe, s: &Subset) -> Vec<String> {
    universe.ids(s).map(str::to_owned).collect()
}

/// Canonical field values: blocks in canonical order, members in universe order.
pub fn to_raw(inst: &ParametricInstance) -> RawInstance {
    let u = inst.universe();
    RawInstance {
        universe: u.elements().to_vec(),
        blocks: inst
            .partition()
            .blocks()
            .iter()
            .map(|b| ids(u, b))
            .collect(),
        x: ids(u, inst.x()),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("string arrays serialize")
}

/// Structured form, one key per line.
pub fn serialize_instance(inst: &ParametricInstance) -> String {
    let raw = to_raw(inst);
    format!(
        "{{\n  \"universe\": {},\n  \"blocks\": {},\n  \"x\": {}\n}}\n",
        json(&raw.universe),
        json(&raw.blocks),
        json(&raw.x)
    )
}

pub fn serialize_compact(inst: &ParametricInstance) -> String {
    let raw = to_raw(inst);
    let blocks: Vec<String> = raw.blocks.iter().map(|b| b.join(", ")).collect();
    format!(
        "universe: {}\nblocks: {}\nx: {}\n",
        raw.universe.join(", "),
        blocks.join(" | "),
        raw.x.join(", ")
    )
}

/// SHA-256 of the structured serialization, hex encoded.
pub fn instance_digest(inst: &ParametricInstance) -> String {
    hex::encode(Sha256::digest(serialize_instance(inst).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX2: &str = "universe: 1, 2, 3\nblocks: 1, 2 | 3\nx: 1\n";

    #[test]
    fn compact_and_structured_agree() {
        let a = parse_instance(EX2).unwrap();
        let b =
            parse_instance(r#"{"universe":["1","2","3"],"blocks":[["1","2"],["3"]],"x":["1"]}"#)
                .unwrap();
        assert_eq!(a.partition(), b.partition());
        assert_eq!(a.x(), b.x());
        assert_eq!(
            a.universe().format_partition(a.partition()),
            "{{1, 2}, {3}}"
        );
    }

    #[test]
    fn round_trips() {
        let a = parse_instance("# comment\nx: 5\nblocks: 5 | 4, 1 | 2,3\nuniverse: 1,2,3,4,5\n")
            .unwrap();
        for text in [serialize_instance(&a), serialize_compact(&a)] {
            let b = parse_instance(&text).unwrap();
            assert_eq!(serialize_instance(&b), serialize_instance(&a));
            assert_eq!(instance_digest(&b), instance_digest(&a));
        }
        assert_eq!(
            serialize_compact(&a),
            "universe: 1, 2, 3, 4, 5\nblocks: 1, 4 | 2, 3 | 5\nx: 5\n"
        );
    }

    #[test]
    fn empty_parameter() {
        let a = parse_instance("universe: a\nblocks: a\nx:\n").unwrap();
        assert!(a.x().is_empty());
        assert_eq!(serialize_compact(&a), "universe: a\nblocks: a\nx: \n");
        parse_instance(&serialize_compact(&a)).unwrap();
    }

    #[test]
    fn rejections_carry_paths() {
        let cases = [
            (
                "universe: 1,2,3\nblocks: 1 | 1,2\nx: 1",
                InstanceErrorKind::InvalidPartition,
                "blocks[1][0]",
            ),
            (
                "universe: 1,2,3\nblocks: 1,2\nx: 1",
                InstanceErrorKind::InvalidPartition,
                "blocks",
            ),
            (
                "universe: 1,2,3\nblocks: 1,2 | 3\nx: 9",
                InstanceErrorKind::XNotSubset,
                "x[0]",
            ),
            (
                "universe: 1,2,3\nblocks: 1,2 | 3, 7\nx:",
                InstanceErrorKind::InvalidPartition,
                "blocks[1][1]",
            ),
            (
                "universe: 1,1\nblocks: 1\nx:",
                InstanceErrorKind::Malformed,
                "universe[1]",
            ),
            ("universe: 1\nblocks: 1", InstanceErrorKind::Malformed, "x"),
            (
                "universe: 1\nblocks 1\nx:",
                InstanceErrorKind::Malformed,
                "line 2",
            ),
            (
                r#"{"universe":["1"],"blocks":[["1"]],"x":[],"y":1}"#,
                InstanceErrorKind::Malformed,
                "y",
            ),
            (
                r#"{"universe":["1"],"blocks":[[1]],"x":[]}"#,
                InstanceErrorKind::Malformed,
                "blocks[0][0]",
            ),
            (
                r#"{"universe":["1"],"blocks":[["1"]]"#,
                InstanceErrorKind::Malformed,
                "$",
            ),
        ];
        for (text, kind, path) in cases {
            let e = parse_instance(text).unwrap_err();
            assert_eq!((e.kind, e.path.as_str()), (kind, path), "{text}");
        }
    }
}
