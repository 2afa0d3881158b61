//! In-memory model of TEI dictionary entries and their etymologies.
//!
//! Values are plain data: immutable once built, `Send + Sync`, and compared
//! structurally. Source positions ([`Span`]) ride along for diagnostics but
//! never take part in equality, so a document re-parsed from its own
//! serialization compares equal to the original.

mod path;
mod resolve;

pub use path::{NodePath, NodeRef, Step};
pub use resolve::{effective_language, resolve_ref, ModelError, Resolution};

use std::collections::BTreeMap;
use std::fmt;

pub use crate::langtag::LangTag;
pub use crate::tei::date::{DateAttrs, DateError, DateSpan};

/// 1-based line and column of an element in its source file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub fn new(line: u32, col: u32) -> Self {
        Self { line, col }
    }

    pub fn is_known(&self) -> bool {
        self.line > 0
    }
}

impl PartialEq for Span {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Span {}

/// A pointer attribute value: `#id` or an external URI.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossRef {
    pub raw: String,
    pub kind: RefKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RefKind {
    InternalFragment(String),
    ExternalUri(String),
}

impl CrossRef {
    pub fn parse(raw: &str) -> Self {
        let raw = raw.trim();
        let kind = match raw.strip_prefix('#') {
            Some(id) => RefKind::InternalFragment(id.to_string()),
            None => RefKind::ExternalUri(raw.to_string()),
        };
        Self {
            raw: raw.to_string(),
            kind,
        }
    }

    pub fn internal(id: &str) -> Self {
        Self::parse(&format!("#{id}"))
    }

    /// The fragment id for `#id` pointers; `None` for external URIs.
    pub fn fragment(&self) -> Option<&str> {
        match &self.kind {
            RefKind::InternalFragment(id) => Some(id),
            RefKind::ExternalUri(_) => None,
        }
    }

    pub fn uri(&self) -> Option<&str> {
        match &self.kind {
            RefKind::ExternalUri(u) => Some(u),
            RefKind::InternalFragment(_) => None,
        }
    }
}

impl fmt::Display for CrossRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

/// The `<date>` element as written: raw attribute strings plus any
/// human-readable text such as `IVe2`. [`DateRecord::span`] validates it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DateRecord {
    pub attrs: DateAttrs,
    pub text: Option<String>,
}

impl DateRecord {
    pub fn span(&self) -> Result<DateSpan, DateError> {
        crate::tei::date::parse_date_attrs(&self.attrs, self.text.as_deref())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrammarGroup {
    pub pos: Option<String>,
    pub gender: Option<String>,
    pub number: Option<String>,
    pub case: Option<String>,
    pub person: Option<String>,
    pub tense: Option<String>,
    pub mood: Option<String>,
    pub inflection_type: Option<String>,
    /// `<gram type="...">` values and any other grammatical category.
    pub extra: Vec<(String, String)>,
}

impl GrammarGroup {
    pub fn is_empty(&self) -> bool {
        self.pos.is_none()
            && self.gender.is_none()
            && self.number.is_none()
            && self.case.is_none()
            && self.person.is_none()
            && self.tense.is_none()
            && self.mood.is_none()
            && self.inflection_type.is_none()
            && self.extra.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    Orth,
    Pron,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Seg {
        text: String,
        id: Option<String>,
        corresp: Option<CrossRef>,
        ana: Option<String>,
    },
    /// `<pc>` content; never alphanumeric.
    Punct(String),
    Plain(String),
}

impl Segment {
    pub fn text(&self) -> &str {
        match self {
            Segment::Seg { text, .. } | Segment::Punct(text) | Segment::Plain(text) => text,
        }
    }
}

/// `<orth>`, `<pron>`, `<oRef>` or `<pRef>` content, split into its
/// `<seg>`/`<pc>` parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentedForm {
    pub kind: FormKind,
    pub notation: Option<String>,
    pub lang: Option<LangTag>,
    pub type_label: Option<String>,
    pub corresp: Option<CrossRef>,
    pub ana: Option<String>,
    pub segments: Vec<Segment>,
}

impl SegmentedForm {
    pub fn plain(kind: FormKind, text: &str) -> Self {
        Self {
            kind,
            notation: None,
            lang: None,
            type_label: None,
            corresp: None,
            ana: None,
            segments: vec![Segment::Plain(text.to_string())],
        }
    }

    /// The surface form: all segment texts concatenated.
    pub fn text(&self) -> String {
        self.segments.iter().map(Segment::text).collect()
    }

    pub fn seg_ids(&self) -> impl Iterator<Item = &str> {
        self.segments.iter().filter_map(|s| match s {
            Segment::Seg { id: Some(id), .. } => Some(id.as_str()),
            _ => None,
        })
    }

    pub fn has_segs(&self) -> bool {
        self.segments.iter().any(|s| matches!(s, Segment::Seg { .. }))
    }
}

/// Text paired with an optional explicit language: `<gloss>`, `<def>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangText {
    pub text: String,
    pub lang: Option<LangTag>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageDomain {
    pub usage_type: String,
    pub text: String,
    pub corresp: Option<CrossRef>,
}

/// `<ref>` with an optional `@target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefItem {
    pub target: Option<CrossRef>,
    pub text: String,
}

/// `<lang>` display label; never used for language identification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangLabel {
    pub text: String,
    pub corresp: Option<CrossRef>,
}

/// Mixed content of a `<quote>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotePart {
    Text(String),
    /// The attested form, marked with `<oRef>` inside the quotation.
    ORef { text: String, ana: Option<String> },
    Seg {
        id: Option<String>,
        ana: Option<String>,
        parts: Vec<QuotePart>,
    },
}

impl QuotePart {
    fn push_text(&self, out: &mut String) {
        match self {
            QuotePart::Text(t) | QuotePart::ORef { text: t, .. } => out.push_str(t),
            QuotePart::Seg { parts, .. } => parts.iter().for_each(|p| p.push_text(out)),
        }
    }

    fn collect_orefs<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            QuotePart::Text(_) => {}
            QuotePart::ORef { text, .. } => out.push(text),
            QuotePart::Seg { parts, .. } => parts.iter().for_each(|p| p.collect_orefs(out)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Quote {
    pub parts: Vec<QuotePart>,
}

impl Quote {
    pub fn text(&self) -> String {
        let mut s = String::new();
        self.parts.iter().for_each(|p| p.push_text(&mut s));
        s
    }

    /// Texts of the embedded `<oRef>` markers, in order.
    pub fn marked_forms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.parts.iter().for_each(|p| p.collect_orefs(&mut out));
        out
    }

    /// `<seg>` parts in document order, flattened.
    pub fn segs(&self) -> Vec<&QuotePart> {
        fn walk<'a>(parts: &'a [QuotePart], out: &mut Vec<&'a QuotePart>) {
            for p in parts {
                if let QuotePart::Seg { parts: inner, .. } = p {
                    out.push(p);
                    walk(inner, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.parts, &mut out);
        out
    }
}

/// Content the model does not interpret, kept verbatim so that
/// serialization does not lose it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Opaque {
    /// A whole element, as canonical XML.
    Element { name: String, xml: String },
    /// Stray non-whitespace text.
    Text(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CitationKind {
    Etymon,
    Attestation,
    Translation,
    Component,
}

impl CitationKind {
    pub fn from_type(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "etymon" => Some(Self::Etymon),
            "attestation" => Some(Self::Attestation),
            "translation" => Some(Self::Translation),
            "component" => Some(Self::Component),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Etymon => "etymon",
            Self::Attestation => "attestation",
            Self::Translation => "translation",
            Self::Component => "component",
        }
    }
}

/// `<cit>`: etymon, attestation, translation or component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Citation {
    pub kind: CitationKind,
    pub id: Option<String>,
    pub prev: Option<CrossRef>,
    pub next: Option<CrossRef>,
    pub lang: Option<LangTag>,
    pub oref: Option<SegmentedForm>,
    pub pref: Option<SegmentedForm>,
    pub date: Option<DateRecord>,
    pub grammar: Option<GrammarGroup>,
    pub glosses: Vec<LangText>,
    pub usages: Vec<UsageDomain>,
    pub sense_refs: Vec<CrossRef>,
    pub quote: Option<Quote>,
    /// `@corresp` of a component citation: the `<seg>` it describes.
    pub component_corresp: Option<CrossRef>,
    pub ana: Option<String>,
    pub notes: Vec<String>,
    pub bibls: Vec<String>,
    pub refs: Vec<RefItem>,
    pub label: Option<String>,
    pub lang_label: Option<String>,
    pub nested: Vec<Citation>,
    pub opaque: Vec<Opaque>,
    pub span: Span,
}

impl Citation {
    pub fn new(kind: CitationKind) -> Self {
        Self {
            kind,
            id: None,
            prev: None,
            next: None,
            lang: None,
            oref: None,
            pref: None,
            date: None,
            grammar: None,
            glosses: Vec::new(),
            usages: Vec::new(),
            sense_refs: Vec::new(),
            quote: None,
            component_corresp: None,
            ana: None,
            notes: Vec::new(),
            bibls: Vec::new(),
            refs: Vec::new(),
            label: None,
            lang_label: None,
            nested: Vec::new(),
            opaque: Vec::new(),
            span: Span::default(),
        }
    }

    /// Minimal etymon with an orthographic reference.
    pub fn etymon(form: &str) -> Self {
        let mut c = Self::new(CitationKind::Etymon);
        c.oref = Some(SegmentedForm::plain(FormKind::Orth, form));
        c
    }

    /// The etymon's surface form, orthographic first.
    pub fn form_text(&self) -> Option<String> {
        self.oref
            .as_ref()
            .or(self.pref.as_ref())
            .map(SegmentedForm::text)
    }

    /// True when the citation carries nothing except nested citations.
    pub fn has_own_content(&self) -> bool {
        self.oref.is_some()
            || self.pref.is_some()
            || self.date.is_some()
            || self.grammar.is_some()
            || !self.glosses.is_empty()
            || !self.usages.is_empty()
            || !self.sense_refs.is_empty()
            || self.quote.is_some()
            || !self.notes.is_empty()
            || !self.bibls.is_empty()
            || !self.refs.is_empty()
            || self.label.is_some()
            || self.lang_label.is_some()
            || !self.opaque.is_empty()
    }

    pub fn has_attributes(&self) -> bool {
        self.id.is_some()
            || self.prev.is_some()
            || self.next.is_some()
            || self.lang.is_some()
            || self.component_corresp.is_some()
            || self.ana.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EtymType {
    Inheritance,
    Borrowing,
    Metaphor,
    Metonymy,
    Compounding,
    Grammaticalization,
    /// Any other `@type`, verbatim; empty when the attribute is missing.
    Other(String),
}

impl EtymType {
    pub const NAMED: [EtymType; 6] = [
        EtymType::Inheritance,
        EtymType::Borrowing,
        EtymType::Metaphor,
        EtymType::Metonymy,
        EtymType::Compounding,
        EtymType::Grammaticalization,
    ];

    pub fn from_type(s: &str) -> Self {
        match s.trim().to_ascii_lowercase().as_str() {
            "inheritance" => Self::Inheritance,
            "borrowing" => Self::Borrowing,
            "metaphor" => Self::Metaphor,
            "metonymy" => Self::Metonymy,
            "compounding" => Self::Compounding,
            "grammaticalization" => Self::Grammaticalization,
            _ => Self::Other(s.to_string()),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            Self::Inheritance => "inheritance",
            Self::Borrowing => "borrowing",
            Self::Metaphor => "metaphor",
            Self::Metonymy => "metonymy",
            Self::Compounding => "compounding",
            Self::Grammaticalization => "grammaticalization",
            Self::Other(s) => s,
        }
    }
}

impl fmt::Display for EtymType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One item of a legacy flat etymology, in document order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LegacyItem {
    Lang(String),
    Mentioned(String),
    Label(String),
    Text(String),
}

/// `<etym>`, possibly nested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtymologyBlock {
    pub etym_type: EtymType,
    pub lang: Option<LangTag>,
    pub corresp: Option<CrossRef>,
    pub date: Option<DateRecord>,
    pub citations: Vec<Citation>,
    pub nested: Vec<EtymologyBlock>,
    pub lang_labels: Vec<LangLabel>,
    /// `<lbl>` display labels such as "from" or "source".
    pub labels: Vec<String>,
    pub notes: Vec<String>,
    pub bibls: Vec<String>,
    pub refs: Vec<RefItem>,
    /// Flat `<lang>`/`<mentioned>` content of an unconverted etymology.
    pub legacy: Vec<LegacyItem>,
    pub opaque: Vec<Opaque>,
    pub span: Span,
}

impl EtymologyBlock {
    pub fn new(etym_type: EtymType) -> Self {
        Self {
            etym_type,
            lang: None,
            corresp: None,
            date: None,
            citations: Vec::new(),
            nested: Vec::new(),
            lang_labels: Vec::new(),
            labels: Vec::new(),
            notes: Vec::new(),
            bibls: Vec::new(),
            refs: Vec::new(),
            legacy: Vec::new(),
            opaque: Vec::new(),
            span: Span::default(),
        }
    }

    pub fn is_legacy(&self) -> bool {
        self.legacy
            .iter()
            .any(|i| matches!(i, LegacyItem::Mentioned(_)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormBlock {
    pub id: Option<String>,
    pub form_type: Option<String>,
    pub lang: Option<LangTag>,
    pub orths: Vec<SegmentedForm>,
    pub prons: Vec<SegmentedForm>,
    pub grammar: Option<GrammarGroup>,
    pub nested: Vec<FormBlock>,
    pub opaque: Vec<Opaque>,
    pub span: Span,
}

impl FormBlock {
    pub fn new(form_type: Option<&str>) -> Self {
        Self {
            id: None,
            form_type: form_type.map(str::to_string),
            lang: None,
            orths: Vec::new(),
            prons: Vec::new(),
            grammar: None,
            nested: Vec::new(),
            opaque: Vec::new(),
            span: Span::default(),
        }
    }

    /// First orthographic form, searching nested forms depth-first.
    pub fn headword(&self) -> Option<String> {
        self.orths
            .first()
            .map(SegmentedForm::text)
            .or_else(|| self.nested.iter().find_map(FormBlock::headword))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseBlock {
    pub id: Option<String>,
    pub lang: Option<LangTag>,
    pub corresp: Option<CrossRef>,
    pub definitions: Vec<LangText>,
    pub usages: Vec<UsageDomain>,
    pub translations: Vec<Citation>,
    pub etymologies: Vec<EtymologyBlock>,
    pub opaque: Vec<Opaque>,
    pub span: Span,
}

impl SenseBlock {
    pub fn new() -> Self {
        Self {
            id: None,
            lang: None,
            corresp: None,
            definitions: Vec::new(),
            usages: Vec::new(),
            translations: Vec::new(),
            etymologies: Vec::new(),
            opaque: Vec::new(),
            span: Span::default(),
        }
    }
}

impl Default for SenseBlock {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexicalEntry {
    pub id: Option<String>,
    pub lang: Option<LangTag>,
    pub entry_type: Option<String>,
    pub entry_subtype: Option<String>,
    pub forms: Vec<FormBlock>,
    pub grammar: Option<GrammarGroup>,
    pub senses: Vec<SenseBlock>,
    pub etymologies: Vec<EtymologyBlock>,
    pub opaque: Vec<Opaque>,
    pub source_span: Span,
}

impl LexicalEntry {
    pub fn new(id: Option<&str>, lang: Option<&str>) -> Self {
        Self {
            id: id.map(str::to_string),
            lang: lang.map(crate::langtag::parse_tag),
            entry_type: None,
            entry_subtype: None,
            forms: Vec::new(),
            grammar: None,
            senses: Vec::new(),
            etymologies: Vec::new(),
            opaque: Vec::new(),
            source_span: Span::default(),
        }
    }

    pub fn headword(&self) -> Option<String> {
        self.forms.iter().find_map(FormBlock::headword)
    }

    pub fn is_compound(&self) -> bool {
        self.entry_type.as_deref() == Some("compound")
    }
}

/// What an `xml:id` names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdKind {
    Entry,
    Form,
    Sense,
    Citation,
    Seg,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdTarget {
    pub path: NodePath,
    pub kind: IdKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplicateId {
    pub id: String,
    pub path: NodePath,
    pub first: NodePath,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub entries: Vec<LexicalEntry>,
    pub id_index: BTreeMap<String, IdTarget>,
    pub duplicate_ids: Vec<DuplicateId>,
    pub source_name: String,
}

impl Document {
    /// Build a document from entries, indexing every `xml:id`.
    pub fn from_entries(source_name: &str, entries: Vec<LexicalEntry>) -> Self {
        let mut doc = Self {
            entries,
            id_index: BTreeMap::new(),
            duplicate_ids: Vec::new(),
            source_name: source_name.to_string(),
        };
        doc.reindex();
        doc
    }

    /// Rebuild `id_index` and `duplicate_ids` from the entries. The first
    /// occurrence of an id wins.
    pub fn reindex(&mut self) {
        let mut index = BTreeMap::new();
        let mut dups = Vec::new();
        for (path, id, kind) in path::collect_ids(&self.entries) {
            match index.get(&id) {
                None => {
                    index.insert(id, IdTarget { path, kind });
                }
                Some(IdTarget { path: first, .. }) => dups.push(DuplicateId {
                    id,
                    path,
                    first: first.clone(),
                }),
            }
        }
        self.id_index = index;
        self.duplicate_ids = dups;
    }

    /// Concatenate several documents into one for cross-file resolution.
    pub fn merge(source_name: &str, docs: &[Document]) -> Self {
        let entries = docs.iter().flat_map(|d| d.entries.iter().cloned()).collect();
        Self::from_entries(source_name, entries)
    }

    pub fn node(&self, path: &NodePath) -> Option<NodeRef<'_>> {
        path.resolve(self)
    }

    pub fn citation_count(&self) -> usize {
        self.citations().count()
    }

    /// All citations anywhere in the document with their paths, in document order.
    pub fn citations(&self) -> impl Iterator<Item = (NodePath, &Citation)> {
        path::walk_citations(&self.entries).into_iter()
    }

    /// All etymology blocks with their paths, outermost first.
    pub fn etymologies(&self) -> Vec<(NodePath, &EtymologyBlock)> {
        path::walk_etymologies(&self.entries)
    }
}
