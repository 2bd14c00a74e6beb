//! The matroid interchange document.
//!
//! ```json
//! {"rank": 3, "columns": ["001", "010", "011"], "labels": ["a", "b", "c"]}
//! ```
//!
//! Each column string has exactly `rank` characters; the leftmost is
//! coordinate `rank`, the rightmost coordinate 1. `labels` is optional.
//! Writers emit columns sorted ascending as integers.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Gf2Point;
use crate::matroid::BinaryMatroid;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidDocument {
    pub rank: usize,
    pub columns: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&BinaryMatroid> for MatroidDocument {
    fn from(m: &BinaryMatroid) -> Self {
        MatroidDocument {
            rank: m.ambient_rank(),
            columns: m.points().iter().map(|p| p.to_column(m.ambient_rank())).collect(),
            labels: m.labels().map(<[String]>::to_vec),
        }
    }
}

impl TryFrom<MatroidDocument> for BinaryMatroid {
    type Error = Error;

    fn try_from(doc: MatroidDocument) -> Result<Self> {
        let points = doc
            .columns
            .iter()
            .map(|c| parse_column(c, doc.rank))
            .collect::<Result<Vec<_>>>()?;
        let built = match doc.labels {
            Some(labels) => BinaryMatroid::with_labels(doc.rank, points, labels),
            None => BinaryMatroid::new(doc.rank, points),
        };
        built.map_err(|e| match e {
            Error::Domain(msg) => Error::Format(msg),
            other => other,
        })
    }
}

/// Parses one column string of length `rank`.
pub fn parse_column(column: &str, rank: usize) -> Result<Gf2Point> {
    if column.len() != rank {
        return Err(Error::Format(format!(
            "column {column:?} has length {}, expected {rank}",
            column.len()
        )));
    }
    let mut bits = 0u32;
    for ch in column.chars() {
        bits = bits << 1
            | match ch {
                '0' => 0,
                '1' => 1,
                _ => return Err(Error::Format(format!("column {column:?} is not over {{0,1}}"))),
            };
    }
    Ok(Gf2Point(bits))
}

pub fn to_json(m: &BinaryMatroid) -> String {
    serde_json::to_string(&MatroidDocument::from(m)).expect("document serializes")
}

pub fn from_json(text: &str) -> Result<BinaryMatroid> {
    let doc: MatroidDocument =
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    doc.try_into()
}

pub fn read_matroid(path: &Path) -> Result<BinaryMatroid> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    from_json(&text)
}

pub fn read_matroid_from(mut reader: impl Read) -> Result<BinaryMatroid> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|source| Error::Io {
        path: "-".into(),
        source,
    })?;
    from_json(&text)
}

pub fn write_matroid(m: &BinaryMatroid, path: &Path) -> Result<()> {
    fs::write(path, to_json(m) + "\n").map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_sorts_columns() {
        let text = r#"{"rank":3,"columns":["111","001","010"],"labels":["t","x","y"]}"#;
        let m = from_json(text).unwrap();
        assert_eq!(m.points(), &[Gf2Point(1), Gf2Point(2), Gf2Point(7)]);
        assert_eq!(m.label(2), Some("t"));
        let out = to_json(&m);
        assert_eq!(out, r#"{"rank":3,"columns":["001","010","111"],"labels":["x","y","t"]}"#);
        assert_eq!(from_json(&out).unwrap(), m);
    }

    #[test]
    fn leftmost_character_is_highest_coordinate() {
        assert_eq!(parse_column("100", 3).unwrap(), Gf2Point(4));
        assert_eq!(parse_column("001", 3).unwrap(), Gf2Point(1));
    }

    #[test]
    fn rejects_malformed_documents() {
        for bad in [
            r#"{"rank":2,"columns":["001"]}"#,
            r#"{"rank":2,"columns":["00"]}"#,
            r#"{"rank":2,"columns":["01","01"]}"#,
            r#"{"rank":2,"columns":["0x"]}"#,
            r#"{"rank":2,"columns":["01"],"labels":[]}"#,
            r#"{"rank":2,"columns":["01"],"extra":1}"#,
            r#"not json"#,
        ] {
            assert!(matches!(from_json(bad), Err(Error::Format(_))), "{bad}");
        }
    }

    #[test]
    fn empty_matroid_document() {
        let m = from_json(r#"{"rank":0,"columns":[]}"#).unwrap();
        assert!(m.is_empty());
        assert_eq!(to_json(&m), r#"{"rank":0,"columns":[]}"#);
    }
}
