//! BCP 47 well-formedness against an independent regex of the
//! `langtag` production, plus registry lookups on the bundled snapshot.

use etymograph::langtag::{parse_tag, registry_lookup, RegistrySnapshot, RegistryStatus};
use proptest::prelude::*;
use regex::Regex;

/// `langtag` / `privateuse` from RFC 5646 section 2.1, written out as a
/// regex. Grandfathered tags are left out.
fn oracle() -> Regex {
    let language = r"(?:[a-z]{2,3}(?:-[a-z]{3}){0,3}|[a-z]{4}|[a-z]{5,8})";
    let script = r"(?:-[a-z]{4})?";
    let region = r"(?:-(?:[a-z]{2}|[0-9]{3}))?";
    let variant = r"(?:-(?:[a-z0-9]{5,8}|[0-9][a-z0-9]{3}))*";
    let extension = r"(?:-[0-9a-wy-z](?:-[a-z0-9]{2,8})+)*";
    let private = r"(?:-x(?:-[a-z0-9]{1,8})+)?";
    let privateuse = r"x(?:-[a-z0-9]{1,8})+";
    Regex::new(&format!(
        "(?i)^(?:{language}{script}{region}{variant}{extension}{private}|{privateuse})$"
    ))
    .unwrap()
}

fn subtag() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-zA-Z]{1,9}",
        "[0-9]{1,4}",
        "[a-z0-9]{1,8}",
        Just("x".to_string()),
        Just("u".to_string()),
        Just(String::new()),
    ]
}

fn candidate() -> impl Strategy<Value = String> {
    prop::collection::vec(subtag(), 1..6).prop_map(|parts| parts.join("-"))
}

proptest! {
    #[test]
    fn well_formedness_matches_grammar(tag in candidate()) {
        prop_assume!(!parse_tag(&tag).is_irregular());
        prop_assert_eq!(parse_tag(&tag).well_formed, oracle().is_match(&tag), "tag {:?}", tag);
    }

    #[test]
    fn structured_tags_are_well_formed(
        lang in "[a-z]{2,3}",
        script in prop::option::of("[A-Z][a-z]{3}"),
        region in prop::option::of(prop_oneof!["[A-Z]{2}", "[0-9]{3}"]),
    ) {
        let mut tag = lang;
        if let Some(s) = script { tag = format!("{tag}-{s}"); }
        if let Some(r) = region { tag = format!("{tag}-{r}"); }
        let parsed = parse_tag(&tag);
        prop_assert!(parsed.well_formed, "{}", tag);
        prop_assert_eq!(parsed.raw, tag);
    }

    #[test]
    fn lookup_never_panics(tag in candidate()) {
        let parsed = parse_tag(&tag);
        let res = registry_lookup(&parsed, RegistrySnapshot::bundled());
        if !parsed.well_formed {
            prop_assert!(matches!(res, Err(_) | Ok(RegistryStatus::NotChecked)));
        }
    }
}

#[test]
fn subtags_are_split() {
    let t = parse_tag("sr-Latn-RS-x-old");
    assert!(t.well_formed);
    assert_eq!(t.primary_subtag, "sr");
    assert_eq!(t.script.as_deref(), Some("Latn"));
    assert_eq!(t.region.as_deref(), Some("RS"));
    assert_eq!(t.private_use.as_deref(), Some("x-old"));
}

#[test]
fn fixture_languages_against_bundled_registry() {
    let snap = RegistrySnapshot::bundled();
    assert_eq!(snap.snapshot_date(), "2021-08-06");
    let status = |t: &str| registry_lookup(&parse_tag(t), snap).unwrap();
    for t in ["mix", "scn", "fr", "la", "gmh", "goh", "fro", "frm", "ang", "enm", "nl", "ja", "ur", "de", "it"] {
        assert_eq!(status(t), RegistryStatus::Registered, "{t}");
    }
    for t in ["srd", "emodeng", "lat"] {
        assert_eq!(status(t), RegistryStatus::Unregistered, "{t}");
    }
}
