use super::xml::{attrs_string, escape_text, TEI_NS};
use crate::model::{
    Citation, DateRecord, Document, EtymType, EtymologyBlock, FormBlock,
    GrammarGroup, LangTag, LangText, LegacyItem, LexicalEntry, Opaque, Quote, QuotePart, RefItem,
    Segment, SegmentedForm, SenseBlock, UsageDomain,
};

type Attrs = Vec<(String, String)>;

struct Writer {
    out: String,
    depth: usize,
}

fn push_attr(attrs: &mut Attrs, name: &str, value: Option<&str>) {
    if let Some(v) = value {
        attrs.push((name.to_string(), v.to_string()));
    }
}

fn lang_attr(attrs: &mut Attrs, lang: &Option<LangTag>) {
    push_attr(attrs, "xml:lang", lang.as_ref().map(LangTag::as_str));
}

impl Writer {
    fn new(depth: usize) -> Self {
        Self {
            out: String::new(),
            depth,
        }
    }

    fn line(&mut self, s: &str) {
        for _ in 0..self.depth {
            self.out.push_str("  ");
        }
        self.out.push_str(s);
        self.out.push('\n');
    }

    /// Element with element content. Collapses to `<name/>` when `body`
    /// writes nothing.
    fn block(&mut self, name: &str, attrs: &Attrs, body: impl FnOnce(&mut Self)) {
        let start = self.out.len();
        self.line(&format!("<{name}{}>", attrs_string(attrs)));
        let mark = self.out.len();
        self.depth += 1;
        body(self);
        self.depth -= 1;
        if self.out.len() == mark {
            self.out.truncate(start);
            self.line(&format!("<{name}{}/>", attrs_string(attrs)));
        } else {
            self.line(&format!("</{name}>"));
        }
    }

    /// Element whose content is already-serialized inline markup.
    fn inline(&mut self, name: &str, attrs: &Attrs, content: &str) {
        if content.is_empty() {
            self.line(&format!("<{name}{}/>", attrs_string(attrs)));
        } else {
            self.line(&format!("<{name}{}>{content}</{name}>", attrs_string(attrs)));
        }
    }

    fn text_el(&mut self, name: &str, attrs: &Attrs, text: &str) {
        self.inline(name, attrs, &escape_text(text));
    }

    fn opaque(&mut self, items: &[Opaque]) {
        for o in items {
            match o {
                Opaque::Element { xml, .. } => self.line(xml),
                Opaque::Text(t) => self.line(&escape_text(t)),
            }
        }
    }

    fn entry(&mut self, e: &LexicalEntry) {
        let mut a = Attrs::new();
        push_attr(&mut a, "xml:id", e.id.as_deref());
        lang_attr(&mut a, &e.lang);
        push_attr(&mut a, "type", e.entry_type.as_deref());
        push_attr(&mut a, "subtype", e.entry_subtype.as_deref());
        self.block("entry", &a, |w| {
            e.forms.iter().for_each(|f| w.form(f));
            if let Some(g) = &e.grammar {
                w.grammar(g);
            }
            e.senses.iter().for_each(|s| w.sense(s));
            e.etymologies.iter().for_each(|b| w.etym(b));
            w.opaque(&e.opaque);
        });
    }

    fn form(&mut self, f: &FormBlock) {
        let mut a = Attrs::new();
        push_attr(&mut a, "type", f.form_type.as_deref());
        push_attr(&mut a, "xml:id", f.id.as_deref());
        lang_attr(&mut a, &f.lang);
        self.block("form", &a, |w| {
            f.orths.iter().for_each(|o| w.segmented("orth", o));
            f.prons.iter().for_each(|p| w.segmented("pron", p));
            f.nested.iter().for_each(|n| w.form(n));
            if let Some(g) = &f.grammar {
                w.grammar(g);
            }
            w.opaque(&f.opaque);
        });
    }

    fn segmented(&mut self, name: &str, s: &SegmentedForm) {
        let mut a = Attrs::new();
        push_attr(&mut a, "notation", s.notation.as_deref());
        lang_attr(&mut a, &s.lang);
        push_attr(&mut a, "type", s.type_label.as_deref());
        push_attr(&mut a, "corresp", s.corresp.as_ref().map(|c| c.raw.as_str()));
        push_attr(&mut a, "ana", s.ana.as_deref());
        let mut content = String::new();
        for seg in &s.segments {
            match seg {
                Segment::Seg { text, id, corresp, ana } => {
                    let mut sa = Attrs::new();
                    push_attr(&mut sa, "xml:id", id.as_deref());
                    push_attr(&mut sa, "corresp", corresp.as_ref().map(|c| c.raw.as_str()));
                    push_attr(&mut sa, "ana", ana.as_deref());
                    content.push_str(&format!("<seg{}>{}</seg>", attrs_string(&sa), escape_text(text)));
                }
                Segment::Punct(t) => content.push_str(&format!("<pc>{}</pc>", escape_text(t))),
                Segment::Plain(t) => content.push_str(&escape_text(t)),
            }
        }
        self.inline(name, &a, &content);
    }

    fn grammar(&mut self, g: &GrammarGroup) {
        self.block("gramGrp", &Attrs::new(), |w| {
            let slots = [
                ("pos", &g.pos),
                ("gen", &g.gender),
                ("number", &g.number),
                ("case", &g.case),
                ("per", &g.person),
                ("tns", &g.tense),
                ("mood", &g.mood),
                ("iType", &g.inflection_type),
            ];
            for (name, v) in slots {
                if let Some(v) = v {
                    w.text_el(name, &Attrs::new(), v);
                }
            }
            for (cat, v) in &g.extra {
                w.text_el("gram", &vec![("type".to_string(), cat.clone())], v);
            }
        });
    }

    fn lang_text(&mut self, name: &str, t: &LangText) {
        let mut a = Attrs::new();
        lang_attr(&mut a, &t.lang);
        self.text_el(name, &a, &t.text);
    }

    fn usage(&mut self, u: &UsageDomain) {
        let mut a = Attrs::new();
        push_attr(&mut a, "type", (!u.usage_type.is_empty()).then_some(u.usage_type.as_str()));
        push_attr(&mut a, "corresp", u.corresp.as_ref().map(|c| c.raw.as_str()));
        self.text_el("usg", &a, &u.text);
    }

    fn refs(&mut self, refs: &[RefItem]) {
        for r in refs {
            let mut a = Attrs::new();
            push_attr(&mut a, "target", r.target.as_ref().map(|c| c.raw.as_str()));
            self.text_el("ref", &a, &r.text);
        }
    }

    fn date(&mut self, d: &DateRecord) {
        let mut a = Attrs::new();
        push_attr(&mut a, "notBefore", d.attrs.not_before.as_deref());
        push_attr(&mut a, "notAfter", d.attrs.not_after.as_deref());
        push_attr(&mut a, "when", d.attrs.when.as_deref());
        self.text_el("date", &a, d.text.as_deref().unwrap_or_default());
    }

    fn sense(&mut self, s: &SenseBlock) {
        let mut a = Attrs::new();
        push_attr(&mut a, "xml:id", s.id.as_deref());
        lang_attr(&mut a, &s.lang);
        push_attr(&mut a, "corresp", s.corresp.as_ref().map(|c| c.raw.as_str()));
        self.block("sense", &a, |w| {
            s.definitions.iter().for_each(|d| w.lang_text("def", d));
            s.usages.iter().for_each(|u| w.usage(u));
            s.translations.iter().for_each(|c| w.citation(c));
            s.etymologies.iter().for_each(|b| w.etym(b));
            w.opaque(&s.opaque);
        });
    }

    fn etym(&mut self, b: &EtymologyBlock) {
        let mut a = Attrs::new();
        if b.etym_type != EtymType::Other(String::new()) {
            a.push(("type".into(), b.etym_type.as_str().to_string()));
        }
        lang_attr(&mut a, &b.lang);
        push_attr(&mut a, "corresp", b.corresp.as_ref().map(|c| c.raw.as_str()));
        self.block("etym", &a, |w| {
            if let Some(d) = &b.date {
                w.date(d);
            }
            for l in &b.labels {
                w.text_el("lbl", &Attrs::new(), l);
            }
            for l in &b.lang_labels {
                let mut la = Attrs::new();
                push_attr(&mut la, "corresp", l.corresp.as_ref().map(|c| c.raw.as_str()));
                w.text_el("lang", &la, &l.text);
            }
            for item in &b.legacy {
                match item {
                    LegacyItem::Lang(t) => w.text_el("lang", &Attrs::new(), t),
                    LegacyItem::Mentioned(t) => w.text_el("mentioned", &Attrs::new(), t),
                    LegacyItem::Label(t) => w.text_el("lbl", &Attrs::new(), t),
                    LegacyItem::Text(t) => w.line(&escape_text(t)),
                }
            }
            b.citations.iter().for_each(|c| w.citation(c));
            b.nested.iter().for_each(|n| w.etym(n));
            for n in &b.notes {
                w.text_el("note", &Attrs::new(), n);
            }
            w.refs(&b.refs);
            for n in &b.bibls {
                w.text_el("bibl", &Attrs::new(), n);
            }
            w.opaque(&b.opaque);
        });
    }

    fn citation(&mut self, c: &Citation) {
        let mut a = Attrs::new();
        a.push(("type".into(), c.kind.as_str().into()));
        push_attr(&mut a, "xml:id", c.id.as_deref());
        lang_attr(&mut a, &c.lang);
        push_attr(&mut a, "prev", c.prev.as_ref().map(|r| r.raw.as_str()));
        push_attr(&mut a, "next", c.next.as_ref().map(|r| r.raw.as_str()));
        push_attr(&mut a, "corresp", c.component_corresp.as_ref().map(|r| r.raw.as_str()));
        push_attr(&mut a, "ana", c.ana.as_deref());
        self.block("cit", &a, |w| {
            if let Some(o) = &c.oref {
                w.segmented("oRef", o);
            }
            if let Some(p) = &c.pref {
                w.segmented("pRef", p);
            }
            if let Some(l) = &c.lang_label {
                w.text_el("lang", &Attrs::new(), l);
            }
            if let Some(l) = &c.label {
                w.text_el("lbl", &Attrs::new(), l);
            }
            if let Some(d) = &c.date {
                w.date(d);
            }
            if let Some(g) = &c.grammar {
                w.grammar(g);
            }
            c.glosses.iter().for_each(|g| w.lang_text("gloss", g));
            c.usages.iter().for_each(|u| w.usage(u));
            for s in &c.sense_refs {
                let sa = vec![
                    ("type".to_string(), "sense".to_string()),
                    ("corresp".to_string(), s.raw.clone()),
                ];
                w.inline("ref", &sa, "");
            }
            w.refs(&c.refs);
            if let Some(q) = &c.quote {
                w.inline("quote", &Attrs::new(), &quote_markup(q));
            }
            c.nested.iter().for_each(|n| w.citation(n));
            for n in &c.notes {
                w.text_el("note", &Attrs::new(), n);
            }
            for n in &c.bibls {
                w.text_el("bibl", &Attrs::new(), n);
            }
            w.opaque(&c.opaque);
        });
    }
}

fn quote_markup(q: &Quote) -> String {
    fn write(parts: &[QuotePart], out: &mut String) {
        for p in parts {
            match p {
                QuotePart::Text(t) => out.push_str(&escape_text(t)),
                QuotePart::ORef { text, ana } => {
                    let mut a = Attrs::new();
                    push_attr(&mut a, "ana", ana.as_deref());
                    out.push_str(&format!("<oRef{}>{}</oRef>", attrs_string(&a), escape_text(text)));
                }
                QuotePart::Seg { id, ana, parts } => {
                    let mut a = Attrs::new();
                    push_attr(&mut a, "xml:id", id.as_deref());
                    push_attr(&mut a, "ana", ana.as_deref());
                    out.push_str(&format!("<seg{}>", attrs_string(&a)));
                    write(parts, out);
                    out.push_str("</seg>");
                }
            }
        }
    }
    let mut out = String::new();
    write(&q.parts, &mut out);
    out
}

/// Serialize one entry, unindented.
pub fn emit_entry(entry: &LexicalEntry) -> String {
    let mut w = Writer::new(0);
    w.entry(entry);
    w.out
}

/// Serialize a document as TEI: XML declaration, `TEI/text/body` wrapper,
/// two-space indentation, LF line endings, attributes sorted by name. The
/// header is not reproduced.
pub fn emit_tei_string(doc: &Document) -> String {
    let mut w = Writer::new(0);
    w.out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let tei = vec![("xmlns".to_string(), TEI_NS.to_string())];
    w.block("TEI", &tei, |w| {
        w.block("text", &Attrs::new(), |w| {
            w.block("body", &Attrs::new(), |w| {
                doc.entries.iter().for_each(|e| w.entry(e));
            });
        });
    });
    w.out
}

pub fn emit_tei(doc: &Document) -> Vec<u8> {
    emit_tei_string(doc).into_bytes()
}
