//! The rule catalogue. Ids are stable and appear verbatim in output.

use crate::diagnostic::Severity;

pub const E_LANG_MISSING: &str = "E-LANG-MISSING";
pub const E_LANG_MALFORMED: &str = "E-LANG-MALFORMED";
pub const W_LANG_UNREGISTERED: &str = "W-LANG-UNREGISTERED";
pub const E_ETYM_PLACE: &str = "E-ETYM-PLACE";
pub const E_ID_DUP: &str = "E-ID-DUP";
pub const E_CHAIN_DANGLING: &str = "E-CHAIN-DANGLING";
pub const E_CHAIN_SELF: &str = "E-CHAIN-SELF";
pub const E_CHAIN_ASYM: &str = "E-CHAIN-ASYM";
pub const E_CHAIN_CYCLE: &str = "E-CHAIN-CYCLE";
pub const W_CHAIN_BRANCH: &str = "W-CHAIN-BRANCH";
pub const W_CHAIN_LONG: &str = "W-CHAIN-LONG";
pub const E_DATE_FORMAT: &str = "E-DATE-FORMAT";
pub const E_DATE_INVERTED: &str = "E-DATE-INVERTED";
pub const E_REF_UNRESOLVED: &str = "E-REF-UNRESOLVED";
pub const E_REF_KIND: &str = "E-REF-KIND";
pub const E_COMP_SEG: &str = "E-COMP-SEG";
pub const W_COMPOUND_DECOMP: &str = "W-COMPOUND-DECOMP";
pub const W_ETYM_UNTYPED: &str = "W-ETYM-UNTYPED";
pub const I_ETYM_OPENTYPE: &str = "I-ETYM-OPENTYPE";
pub const E_ETYMON_EMPTY: &str = "E-ETYMON-EMPTY";
pub const W_PRON_NOTATION: &str = "W-PRON-NOTATION";
pub const I_PRON_NOTATION_UNKNOWN: &str = "I-PRON-NOTATION-UNKNOWN";
pub const W_CIT_REDUNDANT: &str = "W-CIT-REDUNDANT";
pub const W_CIT_UNKNOWN_TYPE: &str = "W-CIT-UNKNOWN-TYPE";
pub const E_CIT_SHAPE: &str = "E-CIT-SHAPE";
pub const W_ENTRY_NOFORM: &str = "W-ENTRY-NOFORM";
pub const I_PARSE_SKIPPED: &str = "I-PARSE-SKIPPED";
pub const W_PARSE_OPAQUE: &str = "W-PARSE-OPAQUE";
pub const E_ETYM_DEPTH: &str = "E-ETYM-DEPTH";
pub const W_LIFT_NOLANG: &str = "W-LIFT-NOLANG";
pub const I_NORM_UNWRAP: &str = "I-NORM-UNWRAP";
pub const I_NORM_DUPID: &str = "I-NORM-DUPID";
pub const I_NORM_REF: &str = "I-NORM-REF";
pub const I_NORM_DUPCIT: &str = "I-NORM-DUPCIT";

pub struct RuleInfo {
    pub id: &'static str,
    pub severity: Severity,
    pub summary: &'static str,
}

const fn rule(id: &'static str, severity: Severity, summary: &'static str) -> RuleInfo {
    RuleInfo { id, severity, summary }
}

use Severity::{Error, Info, Warning};

pub const CATALOGUE: &[RuleInfo] = &[
    rule(E_LANG_MISSING, Error, "entry has no xml:lang"),
    rule(E_LANG_MALFORMED, Error, "xml:lang is not a well-formed BCP 47 tag"),
    rule(W_LANG_UNREGISTERED, Warning, "xml:lang uses subtags missing from the registry snapshot"),
    rule(E_ETYM_PLACE, Error, "top-level etym placed under the wrong parent for its type"),
    rule(E_ID_DUP, Error, "xml:id used more than once"),
    rule(E_CHAIN_DANGLING, Error, "prev/next points to no citation in the block"),
    rule(E_CHAIN_SELF, Error, "prev/next points to the citation itself"),
    rule(E_CHAIN_ASYM, Error, "prev/next pointers disagree"),
    rule(E_CHAIN_CYCLE, Error, "prev/next pointers form a cycle"),
    rule(W_CHAIN_BRANCH, Warning, "block holds more than one chain, or a chain forks"),
    rule(W_CHAIN_LONG, Warning, "chain longer than the configured maximum"),
    rule(E_DATE_FORMAT, Error, "date attribute is not a four-digit year"),
    rule(E_DATE_INVERTED, Error, "notBefore is later than notAfter"),
    rule(E_REF_UNRESOLVED, Error, "internal pointer names no id, or external pointer is not a URI"),
    rule(E_REF_KIND, Info, "form-targeted etym points at something other than a form"),
    rule(E_COMP_SEG, Error, "component does not point at a seg of its etymon"),
    rule(W_COMPOUND_DECOMP, Warning, "compound entry without decomposition, or compounding etym on a non-compound"),
    rule(W_ETYM_UNTYPED, Warning, "etym without @type"),
    rule(I_ETYM_OPENTYPE, Info, "etym @type outside the named process types"),
    rule(E_ETYMON_EMPTY, Error, "etymon without oRef or pRef"),
    rule(W_PRON_NOTATION, Warning, "pron or pRef without @notation"),
    rule(I_PRON_NOTATION_UNKNOWN, Info, "@notation outside the known notation list"),
    rule(W_CIT_REDUNDANT, Warning, "etymon whose only content is one nested etymon"),
    rule(W_CIT_UNKNOWN_TYPE, Warning, "cit @type outside etymon/attestation/translation/component"),
    rule(E_CIT_SHAPE, Error, "citation lacks the content its type requires"),
    rule(W_ENTRY_NOFORM, Warning, "entry without form"),
    rule(I_PARSE_SKIPPED, Info, "content outside entries skipped"),
    rule(W_PARSE_OPAQUE, Warning, "unmodeled content kept verbatim"),
    rule(E_ETYM_DEPTH, Error, "etym nesting deeper than the supported maximum"),
    rule(W_LIFT_NOLANG, Warning, "lifted etymon has no resolvable language label"),
    rule(I_NORM_UNWRAP, Info, "redundant etymon wrapper removed"),
    rule(I_NORM_DUPID, Info, "duplicate xml:id reported, kept"),
    rule(I_NORM_REF, Info, "ref used as etymon form rewritten to oRef"),
    rule(I_NORM_DUPCIT, Info, "identical consecutive etymon"),
];

pub fn lookup(id: &str) -> Option<&'static RuleInfo> {
    CATALOGUE.iter().find(|r| r.id == id)
}

/// Catalogue entry for a known id. Panics on an unknown id, which would be
/// a programming error.
pub(crate) fn info(id: &str) -> &'static RuleInfo {
    lookup(id).unwrap_or_else(|| panic!("rule {id} missing from catalogue"))
}

pub fn default_severity(id: &str) -> Option<Severity> {
    lookup(id).map(|r| r.severity)
}
