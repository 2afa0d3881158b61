//! Upgrading legacy etymologies.
//!
//! [`lift_flat_etym`] turns flat `<lang>`/`<mentioned>` runs into etymon
//! citations; [`normalize_entry`] removes a few known anti-patterns from
//! already structured entries.

mod normalize;

pub use normalize::{normalize_entry, normalize_entry_at, NormalizeOptions};

use thiserror::Error;

use crate::diagnostic::{Diagnostic, Location};
use crate::langtag::{expand_abbreviation, AbbrevTable};
use crate::lint::rules as r;
use crate::model::{Citation, EtymologyBlock, LegacyItem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("etym block has no <mentioned> content to lift")]
    NotLegacy,
}

/// Text that ends the reach of a preceding language label.
fn ends_sentence(t: &str) -> bool {
    t.contains(['.', ';', '!', '?'])
}

fn is_prose(t: &str) -> bool {
    t.chars().any(char::is_alphanumeric)
}

/// Lift a legacy block. Each `<mentioned>` becomes an etymon whose form is
/// the mentioned text; the nearest preceding `<lang>` in the same sentence
/// becomes its display label and, through `table`, its `xml:lang`. Prose
/// between pairs is kept as notes, `<lbl>` as block labels. The block type
/// is left as it was.
pub fn lift_flat_etym(
    block: &EtymologyBlock,
    table: &AbbrevTable,
) -> Result<(EtymologyBlock, Vec<Diagnostic>), LiftError> {
    lift_flat_etym_at(block, table, &Location::default())
}

/// [`lift_flat_etym`] with diagnostics reported at `loc`.
pub fn lift_flat_etym_at(
    block: &EtymologyBlock,
    table: &AbbrevTable,
    loc: &Location,
) -> Result<(EtymologyBlock, Vec<Diagnostic>), LiftError> {
    if !block.is_legacy() {
        return Err(LiftError::NotLegacy);
    }
    let mut out = block.clone();
    out.legacy.clear();
    let mut lifted = Vec::new();
    let mut diags = Vec::new();
    let mut label: Option<String> = None;
    for item in &block.legacy {
        match item {
            LegacyItem::Lang(l) => label = Some(l.clone()),
            LegacyItem::Label(l) => out.labels.push(l.clone()),
            LegacyItem::Text(t) => {
                if is_prose(t) {
                    out.notes.push(t.clone());
                }
                if ends_sentence(t) {
                    label = None;
                }
            }
            LegacyItem::Mentioned(m) => {
                let mut c = Citation::etymon(m);
                c.span = block.span;
                c.lang_label = label.clone();
                c.lang = label.as_deref().and_then(|l| expand_abbreviation(l, table));
                if c.lang.is_none() {
                    let why = match &label {
                        Some(l) => format!("language label \"{l}\" is not in the abbreviation table"),
                        None => "no language label precedes it".to_string(),
                    };
                    diags.push(Diagnostic::new(
                        r::W_LIFT_NOLANG,
                        r::info(r::W_LIFT_NOLANG).severity,
                        loc.clone(),
                        format!("etymon \"{m}\" lifted without xml:lang: {why}"),
                    ));
                }
                lifted.push(c);
            }
        }
    }
    lifted.append(&mut out.citations);
    out.citations = lifted;
    Ok((out, diags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tei::parse_etym;

    #[test]
    fn abend() {
        let (b, _) = parse_etym(
            "<etym><lang>Ahd.</lang> <mentioned>âband</mentioned>, <lang>mhd.</lang> <mentioned>âbent</mentioned>; <bibl>Kluge</bibl></etym>",
            0,
        )
        .unwrap();
        let (l, d) = lift_flat_etym(&b, &AbbrevTable::starter()).unwrap();
        assert!(d.is_empty());
        let got: Vec<_> = l
            .citations
            .iter()
            .map(|c| (c.form_text().unwrap(), c.lang_label.clone().unwrap(), c.lang.clone().unwrap().raw))
            .collect();
        assert_eq!(
            got,
            vec![
                ("âband".to_string(), "Ahd.".to_string(), "goh".to_string()),
                ("âbent".to_string(), "mhd.".to_string(), "gmh".to_string()),
            ]
        );
        assert_eq!(l.bibls, vec!["Kluge"]);
        assert!(l.notes.is_empty());
        assert!(!l.is_legacy());
    }

    #[test]
    fn no_label() {
        let (b, _) = parse_etym("<etym><mentioned>x</mentioned></etym>", 0).unwrap();
        let (l, d) = lift_flat_etym(&b, &AbbrevTable::starter()).unwrap();
        assert_eq!(l.citations.len(), 1);
        assert!(l.citations[0].lang.is_none());
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].rule, r::W_LIFT_NOLANG);
    }

    #[test]
    fn sentence_bound_and_prose() {
        let (b, _) = parse_etym(
            "<etym><lang>mhd.</lang> <mentioned>a</mentioned>. Compare also <mentioned>b</mentioned></etym>",
            0,
        )
        .unwrap();
        let (l, d) = lift_flat_etym(&b, &AbbrevTable::starter()).unwrap();
        assert_eq!(l.citations[0].lang.as_ref().unwrap().raw, "gmh");
        assert!(l.citations[1].lang.is_none());
        assert_eq!(d.len(), 1);
        assert_eq!(l.notes, vec![". Compare also"]);
    }

    #[test]
    fn structured_block_is_rejected() {
        let (b, _) = parse_etym(r#"<etym type="borrowing"><cit type="etymon"><oRef>x</oRef></cit></etym>"#, 0).unwrap();
        assert_eq!(lift_flat_etym(&b, &AbbrevTable::starter()), Err(LiftError::NotLegacy));
    }
}
