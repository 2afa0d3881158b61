use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use super::{parse_tag, LangTag};

const STARTER: &str = include_str!("../../data/abbreviations.json");

#[derive(Debug, Error)]
pub enum AbbrevError {
    #[error("cannot read abbreviation table {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("abbreviation table is not a JSON object of strings: {0}")]
    Json(#[from] serde_json::Error),
    #[error("abbreviation {abbrev:?} maps to malformed tag {tag:?}")]
    MalformedTag { abbrev: String, tag: String },
}

/// Maps printed language labels (`mhd.`, `Ahd.`) to BCP 47 tags.
///
/// Keys are trimmed and case-folded on insert and on lookup. Values are
/// checked for well-formedness when the table is built.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AbbrevTable {
    rows: BTreeMap<String, String>,
}

fn fold(key: &str) -> String {
    key.trim().to_lowercase()
}

impl AbbrevTable {
    /// The starter table shipped with the crate.
    pub fn starter() -> Self {
        Self::from_json(STARTER).expect("starter abbreviation table is valid")
    }

    pub fn load(path: &Path) -> Result<Self, AbbrevError> {
        let text = std::fs::read_to_string(path).map_err(|source| AbbrevError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, AbbrevError> {
        let raw: BTreeMap<String, String> = serde_json::from_str(text)?;
        let mut table = Self::default();
        for (k, v) in raw {
            table.insert(&k, &v)?;
        }
        Ok(table)
    }

    pub fn insert(&mut self, abbrev: &str, tag: &str) -> Result<(), AbbrevError> {
        if !parse_tag(tag).well_formed {
            return Err(AbbrevError::MalformedTag {
                abbrev: abbrev.to_string(),
                tag: tag.to_string(),
            });
        }
        self.rows.insert(fold(abbrev), tag.to_string());
        Ok(())
    }

    /// Overlay `other` on top of this table; its rows win.
    pub fn merge(&mut self, other: AbbrevTable) {
        self.rows.extend(other.rows);
    }

    pub fn get(&self, abbrev: &str) -> Option<&str> {
        self.rows.get(&fold(abbrev)).map(String::as_str)
    }

    pub fn values(&self) -> impl Iterator<Item = &str> {
        self.rows.values().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.rows.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

pub fn expand_abbreviation(label: &str, table: &AbbrevTable) -> Option<LangTag> {
    table.get(label).map(parse_tag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::langtag::{registry_lookup, RegistrySnapshot, RegistryStatus};

    #[test]
    fn middle_high_german() {
        let t = AbbrevTable::starter();
        assert_eq!(expand_abbreviation("mhd.", &t).unwrap().raw, "gmh");
        assert_eq!(expand_abbreviation("  MHD. ", &t).unwrap().raw, "gmh");
    }

    #[test]
    fn old_high_german_matches_registry_description() {
        // the registry names goh "Old High German (ca. 750-1050)"
        let snap = RegistrySnapshot::bundled();
        let hits = snap.find_language("Old High German");
        assert_eq!(hits.len(), 1);
        let t = AbbrevTable::starter();
        assert_eq!(expand_abbreviation("Ahd.", &t).unwrap().raw, hits[0].0);
    }

    #[test]
    fn unmapped_label() {
        assert!(expand_abbreviation("Xyz.", &AbbrevTable::starter()).is_none());
    }

    #[test]
    fn starter_values_are_registered() {
        let snap = RegistrySnapshot::bundled();
        for v in AbbrevTable::starter().values() {
            let status = registry_lookup(&parse_tag(v), snap).unwrap();
            assert_eq!(status, RegistryStatus::Registered, "{v}");
        }
    }

    #[test]
    fn rejects_malformed_values() {
        let err = AbbrevTable::from_json(r#"{"foo.": "not a tag"}"#).unwrap_err();
        assert!(matches!(err, AbbrevError::MalformedTag { .. }));
    }
}
