//! Snapshot of the IANA language subtag registry, read from its native
//! record-jar text format.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;
use std::sync::OnceLock;

use thiserror::Error;

use super::{LangTag, RegistryStatus};

const BUNDLED: &str = include_str!("../../data/language-subtag-registry.txt");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubtagType {
    Language,
    Extlang,
    Script,
    Region,
    Variant,
}

impl SubtagType {
    fn from_field(s: &str) -> Option<Self> {
        match s {
            "language" => Some(Self::Language),
            "extlang" => Some(Self::Extlang),
            "script" => Some(Self::Script),
            "region" => Some(Self::Region),
            "variant" => Some(Self::Variant),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtagRecord {
    pub subtag_type: SubtagType,
    pub description: String,
    pub deprecated: bool,
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error("registry file has no File-Date header")]
    MissingFileDate,
    #[error("cannot read registry {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed registry range {0:?}")]
    BadRange(String),
    #[error("tag {0:?} is not well-formed")]
    NotWellFormed(String),
}

/// Immutable registry contents keyed by (type, lowercased subtag).
#[derive(Debug, Clone)]
pub struct RegistrySnapshot {
    entries: HashMap<(SubtagType, String), SubtagRecord>,
    grandfathered: BTreeSet<String>,
    snapshot_date: String,
}

impl RegistrySnapshot {
    /// The snapshot compiled into the crate, parsed once.
    pub fn bundled() -> &'static RegistrySnapshot {
        static SNAP: OnceLock<RegistrySnapshot> = OnceLock::new();
        SNAP.get_or_init(|| {
            RegistrySnapshot::parse(BUNDLED).expect("bundled registry snapshot is valid")
        })
    }

    pub fn load(path: &Path) -> Result<Self, RegistryError> {
        let text = std::fs::read_to_string(path).map_err(|source| RegistryError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, RegistryError> {
        let mut entries = HashMap::new();
        let mut grandfathered = BTreeSet::new();
        let mut snapshot_date = None;

        for record in records(text) {
            if let Some(date) = field(&record, "File-Date") {
                snapshot_date = Some(date.to_string());
                continue;
            }
            let Some(kind) = field(&record, "Type") else {
                continue;
            };
            if kind == "grandfathered" || kind == "redundant" {
                if kind == "grandfathered" {
                    if let Some(tag) = field(&record, "Tag") {
                        grandfathered.insert(tag.to_ascii_lowercase());
                    }
                }
                continue;
            }
            let Some(subtag_type) = SubtagType::from_field(kind) else {
                continue;
            };
            let Some(subtag) = field(&record, "Subtag") else {
                continue;
            };
            let rec = SubtagRecord {
                subtag_type,
                description: field(&record, "Description").unwrap_or_default().to_string(),
                deprecated: field(&record, "Deprecated").is_some(),
            };
            for s in expand_range(subtag)? {
                entries.insert((subtag_type, s), rec.clone());
            }
        }

        Ok(Self {
            entries,
            grandfathered,
            snapshot_date: snapshot_date.ok_or(RegistryError::MissingFileDate)?,
        })
    }

    pub fn snapshot_date(&self) -> &str {
        &self.snapshot_date
    }

    pub fn get(&self, subtag_type: SubtagType, subtag: &str) -> Option<&SubtagRecord> {
        self.entries.get(&(subtag_type, subtag.to_ascii_lowercase()))
    }

    pub fn contains(&self, subtag_type: SubtagType, subtag: &str) -> bool {
        self.get(subtag_type, subtag).is_some()
    }

    pub fn is_grandfathered(&self, tag: &str) -> bool {
        self.grandfathered.contains(&tag.to_ascii_lowercase())
    }

    /// All subtags of one type, in no particular order.
    pub fn subtags(&self, subtag_type: SubtagType) -> impl Iterator<Item = &str> {
        self.entries
            .keys()
            .filter(move |(t, _)| *t == subtag_type)
            .map(|(_, s)| s.as_str())
    }

    /// Language subtags whose description contains `needle`, case-insensitively.
    pub fn find_language(&self, needle: &str) -> Vec<(&str, &SubtagRecord)> {
        let needle = needle.to_lowercase();
        let mut out: Vec<_> = self
            .entries
            .iter()
            .filter(|((t, _), r)| {
                *t == SubtagType::Language && r.description.to_lowercase().contains(&needle)
            })
            .map(|((_, s), r)| (s.as_str(), r))
            .collect();
        out.sort_by(|a, b| a.0.cmp(b.0));
        out
    }
}

/// Validity check of a well-formed tag: every subtag must be registered
/// under the type its position implies.
pub fn registry_lookup(tag: &LangTag, snap: &RegistrySnapshot) -> Result<RegistryStatus, RegistryError> {
    if !tag.well_formed {
        return Err(RegistryError::NotWellFormed(tag.raw.clone()));
    }
    if snap.is_grandfathered(&tag.raw) {
        return Ok(RegistryStatus::Registered);
    }
    if tag.is_irregular() {
        return Ok(RegistryStatus::Unregistered);
    }
    // a bare private-use tag has nothing to look up
    if tag.primary_subtag.is_empty() {
        return Ok(RegistryStatus::Registered);
    }
    let registered = snap.contains(SubtagType::Language, &tag.primary_subtag)
        && tag.extlangs.iter().all(|s| snap.contains(SubtagType::Extlang, s))
        && tag.script.iter().all(|s| snap.contains(SubtagType::Script, s))
        && tag.region.iter().all(|s| snap.contains(SubtagType::Region, s))
        && tag.variants.iter().all(|s| snap.contains(SubtagType::Variant, s));
    Ok(if registered {
        RegistryStatus::Registered
    } else {
        RegistryStatus::Unregistered
    })
}

type Record<'a> = Vec<(&'a str, String)>;

fn records(text: &str) -> Vec<Record<'_>> {
    let mut out = Vec::new();
    let mut current: Record<'_> = Vec::new();
    for line in text.lines() {
        if line.trim() == "%%" {
            out.push(std::mem::take(&mut current));
            continue;
        }
        if line.starts_with(' ') || line.starts_with('\t') {
            // continuation of the previous field body
            if let Some((_, body)) = current.last_mut() {
                body.push(' ');
                body.push_str(line.trim());
            }
            continue;
        }
        if let Some((name, body)) = line.split_once(':') {
            current.push((name.trim(), body.trim().to_string()));
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

fn field<'r>(record: &'r Record<'_>, name: &str) -> Option<&'r str> {
    record
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, b)| b.as_str())
}

/// Expand `qaa..qtz` style ranges. Endpoints share a length and only the
/// alphabetic/numeric positions vary.
fn expand_range(subtag: &str) -> Result<Vec<String>, RegistryError> {
    let lower = subtag.to_ascii_lowercase();
    let Some((lo, hi)) = lower.split_once("..") else {
        return Ok(vec![lower]);
    };
    if lo.len() != hi.len() || lo > hi {
        return Err(RegistryError::BadRange(subtag.to_string()));
    }
    let mut out = Vec::new();
    let mut cur = lo.as_bytes().to_vec();
    loop {
        out.push(String::from_utf8(cur.clone()).expect("ascii subtag"));
        if cur.as_slice() == hi.as_bytes() {
            break;
        }
        // odometer increment over a-z / 0-9
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                return Err(RegistryError::BadRange(subtag.to_string()));
            }
            pos -= 1;
            match cur[pos] {
                b'z' => cur[pos] = b'a',
                b'9' => cur[pos] = b'0',
                c => {
                    cur[pos] = c + 1;
                    break;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::langtag::parse_tag;

    #[test]
    fn snapshot_date_matches_header() {
        let snap = RegistrySnapshot::bundled();
        let header = BUNDLED.lines().next().unwrap();
        assert_eq!(header, format!("File-Date: {}", snap.snapshot_date()));
    }

    #[test]
    fn old_french_registered() {
        let snap = RegistrySnapshot::bundled();
        let status = registry_lookup(&parse_tag("fro"), snap).unwrap();
        assert_eq!(status, RegistryStatus::Registered);
    }

    #[test]
    fn emodeng_is_only_a_variant() {
        let snap = RegistrySnapshot::bundled();
        assert!(snap.contains(SubtagType::Variant, "emodeng"));
        assert!(!snap.contains(SubtagType::Language, "emodeng"));
        assert_eq!(
            registry_lookup(&parse_tag("emodeng"), snap).unwrap(),
            RegistryStatus::Unregistered
        );
        assert_eq!(
            registry_lookup(&parse_tag("en-emodeng"), snap).unwrap(),
            RegistryStatus::Registered
        );
    }

    #[test]
    fn ranges_expand() {
        let r = expand_range("qaa..qad").unwrap();
        assert_eq!(r, vec!["qaa", "qab", "qac", "qad"]);
        assert_eq!(expand_range("QM..QO").unwrap(), vec!["qm", "qn", "qo"]);
        let snap = RegistrySnapshot::bundled();
        assert!(snap.contains(SubtagType::Language, "qtz"));
        assert!(snap.contains(SubtagType::Region, "XZ"));
    }

    #[test]
    fn malformed_tag_is_rejected() {
        let snap = RegistrySnapshot::bundled();
        assert!(matches!(
            registry_lookup(&parse_tag("en-"), snap),
            Err(RegistryError::NotWellFormed(_))
        ));
    }

    #[test]
    fn grandfathered_entries_are_registered() {
        let snap = RegistrySnapshot::bundled();
        assert!(snap.is_grandfathered("i-klingon"));
        assert_eq!(
            registry_lookup(&parse_tag("i-klingon"), snap).unwrap(),
            RegistryStatus::Registered
        );
    }
}
