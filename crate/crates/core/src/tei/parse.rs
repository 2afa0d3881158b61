use std::path::Path;

use roxmltree::Node;
use thiserror::Error;

use super::xml::{attr, canonical, collapse, local, squeeze, text_of, xml_attr};
use crate::diagnostic::{Diagnostic, Location};
use crate::langtag::parse_tag;
use crate::lint::rules as r;
use crate::model::{
    Citation, CitationKind, CrossRef, DateAttrs, DateRecord, Document, EtymType, EtymologyBlock,
    FormBlock, FormKind, GrammarGroup, LangLabel, LangText, LegacyItem, LexicalEntry, NodePath,
    Opaque, Quote, QuotePart, RefItem, Segment, SegmentedForm, SenseBlock, Span, Step,
    UsageDomain,
};

/// Deepest `<etym>` nesting accepted; deeper blocks are kept opaque.
pub const MAX_ETYM_DEPTH: usize = 32;

#[derive(Debug, Error)]
pub enum TeiError {
    #[error("{source_name}:{line}:{col}: XML syntax error: {message}")]
    XmlSyntax {
        source_name: String,
        line: u32,
        col: u32,
        message: String,
    },
    #[error("{source_name}: {message}")]
    Encoding { source_name: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Elements that may hold entries and are walked rather than skipped.
const CONTAINERS: &[&str] = &["TEI", "teiCorpus", "text", "body", "front", "back", "group", "div", "superEntry"];

struct Ctx<'a, 'i> {
    xml: &'a roxmltree::Document<'i>,
    source: String,
    diags: Vec<Diagnostic>,
    entry: Option<usize>,
    entry_id: Option<String>,
}

impl<'a, 'i> Ctx<'a, 'i> {
    fn span(&self, node: &Node) -> Span {
        let pos = self.xml.text_pos_at(node.range().start);
        Span::new(pos.row, pos.col)
    }

    fn loc(&self, path: Option<&NodePath>, node: &Node) -> Location {
        Location {
            file: self.source.clone(),
            entry: self.entry,
            entry_id: self.entry_id.clone(),
            path: path.cloned(),
            line: None,
            col: None,
        }
        .with_span(self.span(node))
    }

    fn push(&mut self, rule: &'static str, path: Option<&NodePath>, node: &Node, msg: String) {
        let sev = r::info(rule).severity;
        let loc = self.loc(path, node);
        self.diags.push(Diagnostic::new(rule, sev, loc, msg));
    }

    fn opaque(&mut self, path: &NodePath, node: &Node) -> Opaque {
        self.push(
            r::W_PARSE_OPAQUE,
            Some(path),
            node,
            format!("<{}> is not modeled here; kept verbatim", local(node)),
        );
        Opaque::Element {
            name: local(node).to_string(),
            xml: canonical(node),
        }
    }
}

/// Accumulates stray text in one parent; all runs join into a single
/// opaque text item.
#[derive(Default)]
struct Stray(Vec<String>);

impl Stray {
    fn push(&mut self, node: &Node) {
        let t = collapse(node.text().unwrap_or_default());
        if !t.is_empty() {
            self.0.push(t);
        }
    }

    fn finish(self, opaque: &mut Vec<Opaque>) {
        if !self.0.is_empty() {
            opaque.push(Opaque::Text(self.0.join(" ")));
        }
    }
}

fn decode<'b>(input: &'b [u8], source_name: &str) -> Result<&'b str, TeiError> {
    let enc_err = |message: String| TeiError::Encoding {
        source_name: source_name.to_string(),
        message,
    };
    if input.starts_with(&[0xFF, 0xFE]) || input.starts_with(&[0xFE, 0xFF]) {
        return Err(enc_err("UTF-16 input is not supported; re-encode as UTF-8".into()));
    }
    let input = input.strip_prefix(&[0xEF, 0xBB, 0xBF]).unwrap_or(input);
    let text = std::str::from_utf8(input).map_err(|e| enc_err(format!("input is not valid UTF-8: {e}")))?;
    if let Some(decl) = text.strip_prefix("<?xml").and_then(|rest| rest.split("?>").next()) {
        if let Some(enc) = declared_encoding(decl) {
            let norm = enc.to_ascii_lowercase();
            if norm != "utf-8" && norm != "utf8" && norm != "us-ascii" {
                return Err(enc_err(format!("declared encoding {enc:?} is not supported; re-encode as UTF-8")));
            }
        }
    }
    Ok(text)
}

fn declared_encoding(decl: &str) -> Option<&str> {
    let idx = decl.find("encoding")?;
    let rest = decl[idx + "encoding".len()..].trim_start().strip_prefix('=')?.trim_start();
    let quote = rest.chars().next()?;
    if quote != '"' && quote != '\'' {
        return None;
    }
    rest[1..].split(quote).next()
}

fn parse_xml<'i>(text: &'i str, source_name: &str) -> Result<roxmltree::Document<'i>, TeiError> {
    let opts = roxmltree::ParsingOptions {
        allow_dtd: true,
        ..Default::default()
    };
    roxmltree::Document::parse_with_options(text, opts).map_err(|e| {
        let pos = e.pos();
        TeiError::XmlSyntax {
            source_name: source_name.to_string(),
            line: pos.row,
            col: pos.col,
            message: e.to_string(),
        }
    })
}

/// Parse TEI bytes into a document plus parse-level diagnostics.
///
/// Every `<entry>` below the root becomes a [`LexicalEntry`]; the header and
/// other non-entry content are skipped with an Info finding. Only malformed
/// XML and unsupported encodings are errors.
pub fn parse_document(input: &[u8], source_name: &str) -> Result<(Document, Vec<Diagnostic>), TeiError> {
    let text = decode(input, source_name)?;
    let xml = parse_xml(text, source_name)?;
    let mut ctx = Ctx {
        xml: &xml,
        source: source_name.to_string(),
        diags: Vec::new(),
        entry: None,
        entry_id: None,
    };
    let mut entries = Vec::new();
    let root = xml.root_element();
    if local(&root) == "entry" {
        entries.push(entry(&mut ctx, root, 0));
    } else {
        walk(&mut ctx, root, &mut entries);
    }
    let doc = Document::from_entries(source_name, entries);
    Ok((doc, ctx.diags))
}

pub fn parse_file(path: &Path) -> Result<(Document, Vec<Diagnostic>), TeiError> {
    let bytes = std::fs::read(path).map_err(|source| TeiError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_document(&bytes, &path.display().to_string())
}

fn has_entry(node: &Node) -> bool {
    node.descendants().any(|d| d.is_element() && local(&d) == "entry")
}

fn walk(ctx: &mut Ctx, node: Node, entries: &mut Vec<LexicalEntry>) {
    for child in node.children().filter(Node::is_element) {
        let name = local(&child);
        if name == "entry" {
            let idx = entries.len();
            entries.push(entry(ctx, child, idx));
        } else if name != "teiHeader" && (CONTAINERS.contains(&name) || has_entry(&child)) {
            walk(ctx, child, entries);
        } else {
            ctx.entry = None;
            ctx.entry_id = None;
            ctx.push(r::I_PARSE_SKIPPED, None, &child, format!("<{name}> skipped"));
        }
    }
}

fn entry(ctx: &mut Ctx, node: Node, idx: usize) -> LexicalEntry {
    let id = xml_attr(&node, "id");
    ctx.entry = Some(idx);
    ctx.entry_id = id.map(str::to_string);
    let path = NodePath::entry(idx);
    let mut e = LexicalEntry::new(id, xml_attr(&node, "lang"));
    e.entry_type = attr(&node, "type").map(str::to_string);
    e.entry_subtype = attr(&node, "subtype").map(str::to_string);
    e.source_span = ctx.span(&node);
    let mut stray = Stray::default();
    for child in node.children() {
        if child.is_text() {
            stray.push(&child);
            continue;
        }
        if !child.is_element() {
            continue;
        }
        match local(&child) {
            "form" => {
                let p = path.child(Step::Form(e.forms.len()));
                e.forms.push(form(ctx, child, &p));
            }
            "gramGrp" => merge_grammar(&mut e.grammar, grammar(child)),
            "sense" => {
                let p = path.child(Step::Sense(e.senses.len()));
                e.senses.push(sense(ctx, child, &p));
            }
            "etym" => {
                let p = path.child(Step::Etym(e.etymologies.len()));
                match etym(ctx, child, &p, 0) {
                    Ok(b) => e.etymologies.push(b),
                    Err(o) => e.opaque.push(o),
                }
            }
            _ => {
                let o = ctx.opaque(&path, &child);
                e.opaque.push(o);
            }
        }
    }
    stray.finish(&mut e.opaque);
    e
}

fn form(ctx: &mut Ctx, node: Node, path: &NodePath) -> FormBlock {
    let mut f = FormBlock::new(attr(&node, "type"));
    f.id = xml_attr(&node, "id").map(str::to_string);
    f.lang = xml_attr(&node, "lang").map(parse_tag);
    f.span = ctx.span(&node);
    let mut stray = Stray::default();
    for child in node.children() {
        if child.is_text() {
            stray.push(&child);
            continue;
        }
        if !child.is_element() {
            continue;
        }
        match local(&child) {
            "orth" => {
                let p = path.child(Step::Orth(f.orths.len()));
                f.orths.push(segmented(ctx, child, FormKind::Orth, &p));
            }
            "pron" => {
                let p = path.child(Step::Pron(f.prons.len()));
                f.prons.push(segmented(ctx, child, FormKind::Pron, &p));
            }
            "form" => {
                let p = path.child(Step::Form(f.nested.len()));
                f.nested.push(form(ctx, child, &p));
            }
            "gramGrp" => merge_grammar(&mut f.grammar, grammar(child)),
            _ => {
                let o = ctx.opaque(path, &child);
                f.opaque.push(o);
            }
        }
    }
    stray.finish(&mut f.opaque);
    f
}

/// `<orth>`, `<pron>`, `<oRef>`, `<pRef>`.
fn segmented(ctx: &mut Ctx, node: Node, kind: FormKind, path: &NodePath) -> SegmentedForm {
    let mut segments = Vec::new();
    for child in node.children() {
        if child.is_text() {
            push_plain(&mut segments, collapse(child.text().unwrap_or_default()));
            continue;
        }
        if !child.is_element() {
            continue;
        }
        match local(&child) {
            "seg" => segments.push(Segment::Seg {
                text: text_of(&child),
                id: xml_attr(&child, "id").map(str::to_string),
                corresp: attr(&child, "corresp").map(CrossRef::parse),
                ana: attr(&child, "ana").map(str::to_string),
            }),
            "pc" => {
                let t = text_of(&child);
                if t.chars().any(char::is_alphanumeric) {
                    push_plain(&mut segments, t);
                } else {
                    segments.push(Segment::Punct(t));
                }
            }
            other => {
                ctx.push(
                    r::W_PARSE_OPAQUE,
                    Some(path),
                    &child,
                    format!("<{other}> inside <{}> flattened to its text", local(&node)),
                );
                push_plain(&mut segments, text_of(&child));
            }
        }
    }
    SegmentedForm {
        kind,
        notation: attr(&node, "notation").map(str::to_string),
        lang: xml_attr(&node, "lang").map(parse_tag),
        type_label: attr(&node, "type").map(str::to_string),
        corresp: attr(&node, "corresp").map(CrossRef::parse),
        ana: attr(&node, "ana").map(str::to_string),
        segments,
    }
}

/// Adjacent plain runs join with a space, as they would print.
fn push_plain(segments: &mut Vec<Segment>, t: String) {
    if t.is_empty() {
        return;
    }
    if let Some(Segment::Plain(prev)) = segments.last_mut() {
        prev.push(' ');
        prev.push_str(&t);
    } else {
        segments.push(Segment::Plain(t));
    }
}

fn sense(ctx: &mut Ctx, node: Node, path: &NodePath) -> SenseBlock {
    let mut s = SenseBlock::new();
    s.id = xml_attr(&node, "id").map(str::to_string);
    s.lang = xml_attr(&node, "lang").map(parse_tag);
    s.corresp = attr(&node, "corresp").map(CrossRef::parse);
    s.span = ctx.span(&node);
    let mut stray = Stray::default();
    for child in node.children() {
        if child.is_text() {
            stray.push(&child);
            continue;
        }
        if !child.is_element() {
            continue;
        }
        match local(&child) {
            "def" => s.definitions.push(lang_text(&child)),
            "usg" => s.usages.push(usage(&child)),
            "cit" if attr(&child, "type") == Some("translation") => {
                let p = path.child(Step::Cit(s.translations.len()));
                s.translations.push(citation(ctx, child, &p));
            }
            "etym" => {
                let p = path.child(Step::Etym(s.etymologies.len()));
                match etym(ctx, child, &p, 0) {
                    Ok(b) => s.etymologies.push(b),
                    Err(o) => s.opaque.push(o),
                }
            }
            _ => {
                let o = ctx.opaque(path, &child);
                s.opaque.push(o);
            }
        }
    }
    stray.finish(&mut s.opaque);
    s
}

fn lang_text(node: &Node) -> LangText {
    LangText {
        text: text_of(node),
        lang: xml_attr(node, "lang").map(parse_tag),
    }
}

fn usage(node: &Node) -> UsageDomain {
    UsageDomain {
        usage_type: attr(node, "type").unwrap_or_default().to_string(),
        text: text_of(node),
        corresp: attr(node, "corresp").map(CrossRef::parse),
    }
}

fn date(node: &Node) -> DateRecord {
    let text = text_of(node);
    DateRecord {
        attrs: DateAttrs {
            not_before: attr(node, "notBefore").map(str::to_string),
            not_after: attr(node, "notAfter").map(str::to_string),
            when: attr(node, "when").map(str::to_string),
        },
        text: (!text.is_empty()).then_some(text),
    }
}

fn grammar(node: Node) -> GrammarGroup {
    let mut g = GrammarGroup::default();
    for child in node.children().filter(Node::is_element) {
        let name = local(&child);
        let value = text_of(&child);
        if value.is_empty() {
            continue;
        }
        if name == "gram" {
            let cat = attr(&child, "type").unwrap_or("gram").to_string();
            g.extra.push((cat, value));
            continue;
        }
        let slot = match name {
            "pos" => &mut g.pos,
            "gen" => &mut g.gender,
            "number" => &mut g.number,
            "case" => &mut g.case,
            "per" => &mut g.person,
            "tns" => &mut g.tense,
            "mood" => &mut g.mood,
            "iType" => &mut g.inflection_type,
            other => {
                g.extra.push((other.to_string(), value));
                continue;
            }
        };
        if slot.is_none() {
            *slot = Some(value);
        } else {
            g.extra.push((name.to_string(), value));
        }
    }
    g
}

/// Fold `more` into `slot`: empty slots fill, occupied ones spill to `extra`.
fn merge_grammar(slot: &mut Option<GrammarGroup>, more: GrammarGroup) {
    let Some(g) = slot else {
        *slot = Some(more);
        return;
    };
    let pairs = [
        ("pos", &mut g.pos, more.pos),
        ("gen", &mut g.gender, more.gender),
        ("number", &mut g.number, more.number),
        ("case", &mut g.case, more.case),
        ("per", &mut g.person, more.person),
        ("tns", &mut g.tense, more.tense),
        ("mood", &mut g.mood, more.mood),
        ("iType", &mut g.inflection_type, more.inflection_type),
    ];
    let mut spill = Vec::new();
    for (name, dst, src) in pairs {
        if let Some(v) = src {
            if dst.is_none() {
                *dst = Some(v);
            } else {
                spill.push((name.to_string(), v));
            }
        }
    }
    g.extra.extend(spill);
    g.extra.extend(more.extra);
}

/// Parse `<etym>`. Blocks nested deeper than [`MAX_ETYM_DEPTH`] come back
/// as opaque content after an `E-ETYM-DEPTH` finding.
fn etym(ctx: &mut Ctx, node: Node, path: &NodePath, depth: usize) -> Result<EtymologyBlock, Opaque> {
    if depth > MAX_ETYM_DEPTH {
        ctx.push(
            r::E_ETYM_DEPTH,
            Some(path),
            &node,
            format!("etym nested {depth} levels deep; limit is {MAX_ETYM_DEPTH}"),
        );
        return Err(Opaque::Element {
            name: "etym".into(),
            xml: canonical(&node),
        });
    }
    let etym_type = match attr(&node, "type") {
        Some(t) => EtymType::from_type(t),
        None => {
            ctx.push(r::W_ETYM_UNTYPED, Some(path), &node, untyped_message());
            EtymType::Other(String::new())
        }
    };
    let mut b = EtymologyBlock::new(etym_type);
    b.lang = xml_attr(&node, "lang").map(parse_tag);
    b.corresp = attr(&node, "corresp").map(CrossRef::parse);
    b.span = ctx.span(&node);
    let legacy = node
        .children()
        .any(|c| c.is_element() && local(&c) == "mentioned");
    let mut stray = Stray::default();
    for child in node.children() {
        if child.is_text() {
            if legacy {
                let t = collapse(child.text().unwrap_or_default());
                push_legacy_text(&mut b.legacy, t);
            } else {
                stray.push(&child);
            }
            continue;
        }
        if !child.is_element() {
            continue;
        }
        match local(&child) {
            "cit" => {
                let p = path.child(Step::Cit(b.citations.len()));
                b.citations.push(citation(ctx, child, &p));
            }
            "etym" => {
                let p = path.child(Step::Etym(b.nested.len()));
                match etym(ctx, child, &p, depth + 1) {
                    Ok(n) => b.nested.push(n),
                    Err(o) => b.opaque.push(o),
                }
            }
            "lang" if legacy => b.legacy.push(LegacyItem::Lang(text_of(&child))),
            "mentioned" => b.legacy.push(LegacyItem::Mentioned(text_of(&child))),
            "lbl" if legacy => b.legacy.push(LegacyItem::Label(text_of(&child))),
            "lang" => b.lang_labels.push(LangLabel {
                text: text_of(&child),
                corresp: attr(&child, "corresp").map(CrossRef::parse),
            }),
            "lbl" => b.labels.push(text_of(&child)),
            "note" => b.notes.push(text_of(&child)),
            "bibl" => b.bibls.push(text_of(&child)),
            "date" if b.date.is_none() => b.date = Some(date(&child)),
            "ref" if plain_ref(&child) => b.refs.push(ref_item(&child)),
            _ => {
                let o = ctx.opaque(path, &child);
                b.opaque.push(o);
            }
        }
    }
    stray.finish(&mut b.opaque);
    Ok(b)
}

pub(crate) fn untyped_message() -> String {
    "etym has no @type".to_string()
}

fn push_legacy_text(items: &mut Vec<LegacyItem>, t: String) {
    if t.is_empty() {
        return;
    }
    if let Some(LegacyItem::Text(prev)) = items.last_mut() {
        prev.push(' ');
        prev.push_str(&t);
    } else {
        items.push(LegacyItem::Text(t));
    }
}

/// A `<ref>` the model holds as (target, text): no attributes beyond @target.
fn plain_ref(node: &Node) -> bool {
    node.attributes().all(|a| a.name() == "target" && a.namespace().is_none())
        && node.children().all(|c| !c.is_element())
}

fn ref_item(node: &Node) -> RefItem {
    RefItem {
        target: attr(node, "target").map(CrossRef::parse),
        text: text_of(node),
    }
}

fn citation(ctx: &mut Ctx, node: Node, path: &NodePath) -> Citation {
    let type_attr = attr(&node, "type");
    let kind = match type_attr.and_then(CitationKind::from_type) {
        Some(k) => k,
        None => {
            let shown = type_attr.map_or("(none)".to_string(), |t| format!("{t:?}"));
            ctx.push(
                r::W_CIT_UNKNOWN_TYPE,
                Some(path),
                &node,
                format!("cit @type {shown} is not etymon/attestation/translation/component; read as etymon"),
            );
            CitationKind::Etymon
        }
    };
    let mut c = Citation::new(kind);
    c.id = xml_attr(&node, "id").map(str::to_string);
    c.prev = attr(&node, "prev").map(CrossRef::parse);
    c.next = attr(&node, "next").map(CrossRef::parse);
    c.lang = xml_attr(&node, "lang").map(parse_tag);
    c.component_corresp = attr(&node, "corresp").map(CrossRef::parse);
    c.ana = attr(&node, "ana").map(str::to_string);
    c.span = ctx.span(&node);
    if let Some(cert) = attr(&node, "cert") {
        c.notes.push(format!("cert: {cert}"));
    }
    let mut stray = Stray::default();
    for child in node.children() {
        if child.is_text() {
            stray.push(&child);
            continue;
        }
        if !child.is_element() {
            continue;
        }
        match local(&child) {
            "oRef" if c.oref.is_none() => {
                c.oref = Some(segmented(ctx, child, FormKind::Orth, &path.child(Step::ORef)))
            }
            "pRef" if c.pref.is_none() => {
                c.pref = Some(segmented(ctx, child, FormKind::Pron, &path.child(Step::PRef)))
            }
            "date" if c.date.is_none() => c.date = Some(date(&child)),
            "gramGrp" => merge_grammar(&mut c.grammar, grammar(child)),
            "gram" => {
                let g = GrammarGroup {
                    extra: vec![(
                        attr(&child, "type").unwrap_or("gram").to_string(),
                        text_of(&child),
                    )],
                    ..GrammarGroup::default()
                };
                if !g.extra[0].1.is_empty() {
                    merge_grammar(&mut c.grammar, g);
                }
            }
            "gloss" => c.glosses.push(lang_text(&child)),
            "usg" => c.usages.push(usage(&child)),
            "ref" if is_sense_ref(&child) => {
                c.sense_refs.push(CrossRef::parse(attr(&child, "corresp").unwrap_or_default()))
            }
            "ref" if plain_ref(&child) => c.refs.push(ref_item(&child)),
            "quote" if c.quote.is_none() => c.quote = Some(quote(&child)),
            "cit" => {
                let p = path.child(Step::Cit(c.nested.len()));
                let n = citation(ctx, child, &p);
                c.nested.push(n);
            }
            "note" => c.notes.push(text_of(&child)),
            "bibl" => c.bibls.push(text_of(&child)),
            "lbl" if c.label.is_none() => c.label = Some(text_of(&child)),
            "lang" if c.lang_label.is_none() => c.lang_label = Some(text_of(&child)),
            _ => {
                let o = ctx.opaque(path, &child);
                c.opaque.push(o);
            }
        }
    }
    stray.finish(&mut c.opaque);
    c
}

/// `<ref type="sense" corresp="..."/>` with no text.
fn is_sense_ref(node: &Node) -> bool {
    attr(node, "type") == Some("sense")
        && attr(node, "corresp").is_some()
        && node.attributes().count() == 2
        && text_of(node).is_empty()
        && node.children().all(|c| !c.is_element())
}

fn quote(node: &Node) -> Quote {
    let mut parts = quote_parts(node);
    trim_parts(&mut parts);
    Quote { parts }
}

fn quote_parts(node: &Node) -> Vec<QuotePart> {
    let mut parts: Vec<QuotePart> = Vec::new();
    for child in node.children() {
        if child.is_text() {
            let t = squeeze(child.text().unwrap_or_default());
            if let Some(QuotePart::Text(prev)) = parts.last_mut() {
                prev.push_str(&t);
            } else if !t.is_empty() {
                parts.push(QuotePart::Text(t));
            }
            continue;
        }
        if !child.is_element() {
            continue;
        }
        match local(&child) {
            "oRef" => parts.push(QuotePart::ORef {
                text: text_of(&child),
                ana: attr(&child, "ana").map(str::to_string),
            }),
            "seg" => {
                let mut inner = quote_parts(&child);
                trim_parts(&mut inner);
                parts.push(QuotePart::Seg {
                    id: xml_attr(&child, "id").map(str::to_string),
                    ana: attr(&child, "ana").map(str::to_string),
                    parts: inner,
                })
            }
            _ => {
                let t = squeeze(&child.descendants().filter_map(|d| d.text()).collect::<String>());
                if let Some(QuotePart::Text(prev)) = parts.last_mut() {
                    prev.push_str(&t);
                } else if !t.is_empty() {
                    parts.push(QuotePart::Text(t));
                }
            }
        }
    }
    // merge runs of spaces created by concatenation
    for p in parts.iter_mut() {
        if let QuotePart::Text(t) = p {
            *t = squeeze(t);
        }
    }
    parts
}

fn trim_parts(parts: &mut Vec<QuotePart>) {
    if let Some(QuotePart::Text(t)) = parts.first_mut() {
        *t = t.trim_start().to_string();
    }
    if let Some(QuotePart::Text(t)) = parts.last_mut() {
        *t = t.trim_end().to_string();
    }
    parts.retain(|p| !matches!(p, QuotePart::Text(t) if t.is_empty()));
}

/// Parse a standalone XML fragment whose root is `name`.
fn fragment<T>(
    xml: &str,
    name: &str,
    f: impl FnOnce(&mut Ctx, Node) -> T,
) -> Result<(T, Vec<Diagnostic>), TeiError> {
    let doc = parse_xml(xml, "<fragment>")?;
    let root = doc.root_element();
    if local(&root) != name {
        return Err(TeiError::XmlSyntax {
            source_name: "<fragment>".into(),
            line: 1,
            col: 1,
            message: format!("expected <{name}>, found <{}>", local(&root)),
        });
    }
    let mut ctx = Ctx {
        xml: &doc,
        source: "<fragment>".into(),
        diags: Vec::new(),
        entry: Some(0),
        entry_id: None,
    };
    let v = f(&mut ctx, root);
    Ok((v, ctx.diags))
}

/// Parse one `<entry>` element given as XML text.
pub fn parse_entry(xml: &str) -> Result<(LexicalEntry, Vec<Diagnostic>), TeiError> {
    fragment(xml, "entry", |ctx, n| entry(ctx, n, 0))
}

/// Parse one `<etym>` element at nesting `depth`. Exceeding the depth limit
/// yields an `E-ETYM-DEPTH` finding and an empty untyped block.
pub fn parse_etym(xml: &str, depth: usize) -> Result<(EtymologyBlock, Vec<Diagnostic>), TeiError> {
    fragment(xml, "etym", |ctx, n| {
        let path = NodePath::entry(0).child(Step::Etym(0));
        etym(ctx, n, &path, depth).unwrap_or_else(|o| {
            let mut b = EtymologyBlock::new(EtymType::Other(String::new()));
            b.opaque.push(o);
            b
        })
    })
}

/// Parse one `<cit>` element given as XML text.
pub fn parse_citation(xml: &str) -> Result<(Citation, Vec<Diagnostic>), TeiError> {
    fragment(xml, "cit", |ctx, n| {
        citation(ctx, n, &NodePath::entry(0).child(Step::Etym(0)).child(Step::Cit(0)))
    })
}
