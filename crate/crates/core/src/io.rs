//! JSON file formats and canonical output.
//!
//! Tables are stored as `{"n": 4, "constants": [{"i": 0, "j": 0, "k": 2, "c": "1"}, ...]}`
//! listing nonzero constants only. Canonical output sorts object keys and
//! writes scalars in their canonical text form.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::StructureTable;
use crate::scalars::GaussianRational;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantRecord {
    i: usize,
    j: usize,
    k: usize,
    c: GaussianRational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRecord {
    n: usize,
    constants: Vec<ConstantRecord>,
}

impl Serialize for StructureTable {
    fn serialize<Ser: serde::Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let constants = self
            .nonzero_entries()
            .map(|(i, j, k, c)| ConstantRecord { i, j, k, c: c.clone() })
            .collect();
        TableRecord { n: self.n(), constants }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StructureTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let record = TableRecord::deserialize(deserializer)?;
        StructureTable::from_entries(record.n, record.constants.into_iter().map(|e| (e.i, e.j, e.k, e.c)))
            .map_err(serde::de::Error::custom)
    }
}

/// Parses JSON text into `T`.
pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Reads and parses a JSON file.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json_str(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    // serde_json::Value keeps object keys in a sorted map
    let value = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Writes [`canonical_json`] output to `path`.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = canonical_json(value)?;
    fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{Family2Params, FamilyParams};
    use crate::isomorphism::Witness;

    #[test]
    fn table_round_trip() {
        let p = Family2Params::new(4, vec!["1/2".parse().unwrap(), "i".parse().unwrap()], "3".parse().unwrap())
            .unwrap();
        let t = p.table();
        let text = canonical_json(&t).unwrap();
        let back: StructureTable = from_json_str(&text).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn canonical_output_sorts_keys() {
        let t = StructureTable::from_entries(3, [(0, 0, 2, GaussianRational::from_int(1))]).unwrap();
        let text = canonical_json(&t).unwrap();
        let compact: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(compact.to_string(), r#"{"constants":[{"c":"1","i":0,"j":0,"k":2}],"n":3}"#);
        let p: FamilyParams = from_json_str(r#"{"n":3,"family":1,"theta":"0","alpha":["2"]}"#).unwrap();
        let text = canonical_json(&p).unwrap();
        assert!(text.find("alpha").unwrap() < text.find("family").unwrap());
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(from_json_str::<StructureTable>("{"), Err(Error::Parse(_))));
        let out_of_range = r#"{"n":2,"constants":[{"i":0,"j":0,"k":5,"c":"1"}]}"#;
        assert!(from_json_str::<StructureTable>(out_of_range).is_err());
        assert!(from_json_str::<Witness>(r#"{"A":"1","B":"x"}"#).is_err());
        let w: Witness = from_json_str(r#"{"A":"2","B":"1"}"#).unwrap();
        assert_eq!(w, Witness::family1(GaussianRational::from_int(2), GaussianRational::from_int(1)));
    }
}
