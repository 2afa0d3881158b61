//! BCP 47 language tags: well-formedness, registry validity, and expansion of
//! legacy abbreviations such as `mhd.` into proper tags.
//!
//! Well-formedness and registration are deliberately separate. Historical
//! dictionaries routinely need tags the IANA registry lacks, so an
//! unregistered tag is a warning for the linter, never a parse failure.

mod abbrev;
mod registry;

pub use abbrev::{expand_abbreviation, AbbrevError, AbbrevTable};
pub use registry::{registry_lookup, RegistryError, RegistrySnapshot, SubtagRecord, SubtagType};

use std::fmt;

/// Outcome of checking a tag against a registry snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegistryStatus {
    Registered,
    Unregistered,
    NotChecked,
}

/// A parsed `xml:lang` value.
///
/// Subtag fields are only filled when the tag is well-formed; a malformed
/// tag keeps its `raw` text so diagnostics can quote it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LangTag {
    pub raw: String,
    pub primary_subtag: String,
    pub extlangs: Vec<String>,
    pub script: Option<String>,
    pub region: Option<String>,
    pub variants: Vec<String>,
    pub extensions: Vec<String>,
    pub private_use: Option<String>,
    pub well_formed: bool,
    pub registry_status: RegistryStatus,
}

impl LangTag {
    pub fn as_str(&self) -> &str {
        &self.raw
    }

    /// True for the irregular grandfathered tags that escape the regular grammar.
    pub fn is_irregular(&self) -> bool {
        is_irregular(&self.raw)
    }
}

impl fmt::Display for LangTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

/// Irregular grandfathered tags from RFC 5646 section 2.2.8. They are
/// well-formed by enumeration only.
const IRREGULAR: &[&str] = &[
    "en-gb-oed",
    "i-ami",
    "i-bnn",
    "i-default",
    "i-enochian",
    "i-hak",
    "i-klingon",
    "i-lux",
    "i-mingo",
    "i-navajo",
    "i-pwn",
    "i-tao",
    "i-tay",
    "i-tsu",
    "sgn-be-fr",
    "sgn-be-nl",
    "sgn-ch-de",
];

fn is_irregular(raw: &str) -> bool {
    let lower = raw.to_ascii_lowercase();
    IRREGULAR.contains(&lower.as_str())
}

fn is_alpha(s: &str) -> bool {
    s.bytes().all(|b| b.is_ascii_alphabetic())
}

fn is_digit(s: &str) -> bool {
    s.bytes().all(|b| b.is_ascii_digit())
}

fn is_alnum(s: &str) -> bool {
    s.bytes().all(|b| b.is_ascii_alphanumeric())
}

fn len_in(s: &str, lo: usize, hi: usize) -> bool {
    (lo..=hi).contains(&s.len())
}

fn malformed(raw: &str) -> LangTag {
    LangTag {
        raw: raw.to_string(),
        primary_subtag: String::new(),
        extlangs: Vec::new(),
        script: None,
        region: None,
        variants: Vec::new(),
        extensions: Vec::new(),
        private_use: None,
        well_formed: false,
        registry_status: RegistryStatus::NotChecked,
    }
}

/// Parse a tag against the RFC 5646 `Language-Tag` production.
///
/// Never fails: a tag outside the grammar comes back with
/// `well_formed == false`.
pub fn parse_tag(raw: &str) -> LangTag {
    let mut tag = malformed(raw);
    if raw.is_empty() {
        return tag;
    }
    if is_irregular(raw) {
        let mut parts = raw.split('-');
        tag.primary_subtag = parts.next().unwrap_or_default().to_string();
        tag.well_formed = true;
        return tag;
    }

    let subtags: Vec<&str> = raw.split('-').collect();
    if subtags.iter().any(|s| s.is_empty() || s.len() > 8 || !is_alnum(s)) {
        return tag;
    }

    // privateuse = "x" 1*("-" (1*8alphanum))
    if subtags[0].eq_ignore_ascii_case("x") {
        if subtags.len() < 2 {
            return tag;
        }
        tag.private_use = Some(raw.to_string());
        tag.well_formed = true;
        return tag;
    }

    let mut i = 0;
    let primary = subtags[0];
    if !is_alpha(primary) || !len_in(primary, 2, 8) {
        return tag;
    }
    tag.primary_subtag = primary.to_string();
    i += 1;

    // extlang only follows a 2-3 letter primary subtag, at most three of them
    if primary.len() <= 3 {
        while i < subtags.len() && tag.extlangs.len() < 3 {
            let s = subtags[i];
            if s.len() == 3 && is_alpha(s) {
                tag.extlangs.push(s.to_string());
                i += 1;
            } else {
                break;
            }
        }
    }

    if i < subtags.len() && subtags[i].len() == 4 && is_alpha(subtags[i]) {
        tag.script = Some(subtags[i].to_string());
        i += 1;
    }

    if i < subtags.len() {
        let s = subtags[i];
        if (s.len() == 2 && is_alpha(s)) || (s.len() == 3 && is_digit(s)) {
            tag.region = Some(s.to_string());
            i += 1;
        }
    }

    while i < subtags.len() {
        let s = subtags[i];
        let is_variant = len_in(s, 5, 8) || (s.len() == 4 && s.as_bytes()[0].is_ascii_digit());
        if is_variant {
            tag.variants.push(s.to_string());
            i += 1;
        } else {
            break;
        }
    }

    // extension = singleton 1*("-" (2*8alphanum))
    while i < subtags.len() {
        let s = subtags[i];
        if s.len() != 1 || s.eq_ignore_ascii_case("x") {
            break;
        }
        let start = i;
        i += 1;
        let mut count = 0;
        while i < subtags.len() && len_in(subtags[i], 2, 8) {
            i += 1;
            count += 1;
        }
        if count == 0 {
            return malformed(raw);
        }
        tag.extensions.push(subtags[start..i].join("-"));
    }

    if i < subtags.len() {
        if !subtags[i].eq_ignore_ascii_case("x") || i + 1 == subtags.len() {
            return malformed(raw);
        }
        tag.private_use = Some(subtags[i..].join("-"));
        i = subtags.len();
    }

    debug_assert_eq!(i, subtags.len());
    tag.well_formed = true;
    tag
}
