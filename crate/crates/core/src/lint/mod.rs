//! Structural checks over a parsed [`Document`].
//!
//! [`lint_document`] runs every rule of the [`rules::CATALOGUE`] that the
//! [`RuleConfig`] leaves enabled and returns the findings sorted by entry,
//! element path and rule id. Output is deterministic: equal documents and
//! configs give identical lists.

pub(crate) mod chain;
mod config;
pub mod rules;

pub use chain::{check_chain, ChainMember, ChainReport};
pub use config::{ConfigError, RuleConfig, RuleConfigFile, DEFAULT_NOTATIONS};

use rules as r;

use crate::diagnostic::{sort_diagnostics, Diagnostic, Location};
use crate::langtag::{registry_lookup, LangTag, RegistryStatus};
use crate::model::{
    Citation, CitationKind, CrossRef, DateError, DateRecord, Document, EtymType, EtymologyBlock,
    FormBlock, IdKind, LexicalEntry, NodePath, Segment, SegmentedForm, SenseBlock, Span, Step,
};

pub(crate) fn location(doc: &Document, path: &NodePath, span: Span) -> Location {
    Location {
        file: doc.source_name.clone(),
        entry: Some(path.entry),
        entry_id: doc.entries.get(path.entry).and_then(|e| e.id.clone()),
        path: Some(path.clone()),
        line: None,
        col: None,
    }
    .with_span(span)
}

/// Run the catalogue over `doc`.
pub fn lint_document(doc: &Document, cfg: &RuleConfig) -> Vec<Diagnostic> {
    let mut l = Linter {
        doc,
        cfg,
        out: Vec::new(),
    };
    for dup in &doc.duplicate_ids {
        let span = span_at(doc, &dup.path);
        l.push(
            r::E_ID_DUP,
            &dup.path,
            span,
            format!("xml:id \"{}\" already used at {}", dup.id, dup.first),
            vec![dup.id.clone()],
        );
    }
    for (i, e) in doc.entries.iter().enumerate() {
        l.entry(&NodePath::entry(i), e);
    }
    let mut out = l.out;
    sort_diagnostics(&mut out);
    out
}

fn span_at(doc: &Document, path: &NodePath) -> Span {
    use crate::model::NodeRef as N;
    let mut p = Some(path.clone());
    while let Some(cur) = p {
        let span = match doc.node(&cur) {
            Some(N::Entry(e)) => Some(e.source_span),
            Some(N::Form(f)) => Some(f.span),
            Some(N::Sense(s)) => Some(s.span),
            Some(N::Etym(b)) => Some(b.span),
            Some(N::Citation(c)) => Some(c.span),
            _ => None,
        };
        if let Some(s) = span {
            return s;
        }
        p = cur.parent();
    }
    Span::default()
}

struct Linter<'a> {
    doc: &'a Document,
    cfg: &'a RuleConfig,
    out: Vec<Diagnostic>,
}

impl<'a> Linter<'a> {
    fn push(&mut self, rule: &'static str, path: &NodePath, span: Span, msg: String, related: Vec<String>) {
        if !self.cfg.is_enabled(rule) {
            return;
        }
        let loc = location(self.doc, path, span);
        let d = Diagnostic::new(rule, self.cfg.severity_of(rule), loc, msg).related(related);
        self.out.push(d);
    }

    fn lang(&mut self, path: &NodePath, span: Span, tag: Option<&LangTag>) {
        let Some(tag) = tag else { return };
        if !tag.well_formed {
            self.push(
                r::E_LANG_MALFORMED,
                path,
                span,
                format!("xml:lang=\"{tag}\" is not a well-formed language tag"),
                Vec::new(),
            );
            return;
        }
        if !self.cfg.check_registry || !self.cfg.is_enabled(r::W_LANG_UNREGISTERED) {
            return;
        }
        if let Ok(RegistryStatus::Unregistered) = registry_lookup(tag, self.cfg.registry()) {
            self.push(
                r::W_LANG_UNREGISTERED,
                path,
                span,
                format!(
                    "xml:lang=\"{tag}\" uses subtags missing from the registry snapshot of {}",
                    self.cfg.registry().snapshot_date()
                ),
                Vec::new(),
            );
        }
    }

    fn pointer(&mut self, path: &NodePath, span: Span, what: &str, ptr: &CrossRef) -> Option<IdKind> {
        match ptr.fragment() {
            Some(id) => match self.doc.id_index.get(id) {
                Some(t) => return Some(t.kind),
                None => self.push(
                    r::E_REF_UNRESOLVED,
                    path,
                    span,
                    format!("{what}=\"{ptr}\" names no xml:id in the document"),
                    vec![id.to_string()],
                ),
            },
            None => {
                if url::Url::parse(&ptr.raw).is_err() {
                    self.push(
                        r::E_REF_UNRESOLVED,
                        path,
                        span,
                        format!("{what}=\"{ptr}\" is neither a #fragment nor an absolute URI"),
                        vec![ptr.raw.clone()],
                    );
                }
            }
        }
        None
    }

    fn date(&mut self, path: &NodePath, span: Span, date: Option<&DateRecord>) {
        let Some(date) = date else { return };
        match date.span() {
            Ok(_) | Err(DateError::Missing) => {}
            Err(e @ DateError::BadDateFormat { .. }) => {
                self.push(r::E_DATE_FORMAT, path, span, e.to_string(), Vec::new())
            }
            Err(e @ DateError::InvertedSpan { .. }) => {
                self.push(r::E_DATE_INVERTED, path, span, e.to_string(), Vec::new())
            }
        }
    }

    fn text(&mut self, path: &NodePath, span: Span, t: &SegmentedForm, what: &str) {
        self.lang(path, span, t.lang.as_ref());
        if let Some(c) = &t.corresp {
            self.pointer(path, span, &format!("{what} @corresp"), c);
        }
        for (i, s) in t.segments.iter().enumerate() {
            if let Segment::Seg { corresp: Some(c), .. } = s {
                self.pointer(&path.child(Step::Seg(i)), span, "seg @corresp", c);
            }
        }
        if t.kind == crate::model::FormKind::Pron {
            match &t.notation {
                None => self.push(
                    r::W_PRON_NOTATION,
                    path,
                    span,
                    format!("{what} \"{}\" has no @notation", t.text()),
                    Vec::new(),
                ),
                Some(n) if !self.cfg.known_notations.contains(n) => self.push(
                    r::I_PRON_NOTATION_UNKNOWN,
                    path,
                    span,
                    format!("notation \"{n}\" is not in the known notation list"),
                    Vec::new(),
                ),
                Some(_) => {}
            }
        }
    }

    fn entry(&mut self, path: &NodePath, e: &LexicalEntry) {
        let span = e.source_span;
        match &e.lang {
            None => self.push(r::E_LANG_MISSING, path, span, "entry has no xml:lang".into(), Vec::new()),
            Some(t) => self.lang(path, span, Some(t)),
        }
        if e.forms.is_empty() {
            self.push(r::W_ENTRY_NOFORM, path, span, "entry has no <form>".into(), Vec::new());
        }
        for (i, f) in e.forms.iter().enumerate() {
            self.form(&path.child(Step::Form(i)), f);
        }
        for (i, s) in e.senses.iter().enumerate() {
            self.sense(&path.child(Step::Sense(i)), s);
        }
        for (i, b) in e.etymologies.iter().enumerate() {
            let p = path.child(Step::Etym(i));
            if matches!(
                b.etym_type,
                EtymType::Metaphor | EtymType::Metonymy | EtymType::Grammaticalization
            ) {
                self.push(
                    r::E_ETYM_PLACE,
                    &p,
                    b.span,
                    format!("{} etymology belongs inside <sense>, not directly in <entry>", b.etym_type),
                    Vec::new(),
                );
            }
            self.etym(&p, b);
        }
        self.compound(path, e);
    }

    fn compound(&mut self, path: &NodePath, e: &LexicalEntry) {
        fn segmented(f: &FormBlock) -> bool {
            f.orths.iter().chain(&f.prons).any(SegmentedForm::has_segs) || f.nested.iter().any(segmented)
        }
        let segs = e.forms.iter().any(segmented);
        let compounding = e
            .etymologies
            .iter()
            .any(|b| b.etym_type == EtymType::Compounding);
        if e.is_compound() && !segs && !compounding {
            self.push(
                r::W_COMPOUND_DECOMP,
                path,
                e.source_span,
                "compound entry has neither <seg>-decomposed forms nor a compounding etymology".into(),
                Vec::new(),
            );
        } else if !e.is_compound() && compounding {
            self.push(
                r::W_COMPOUND_DECOMP,
                path,
                e.source_span,
                "compounding etymology on an entry not typed as compound".into(),
                Vec::new(),
            );
        }
    }

    fn form(&mut self, path: &NodePath, f: &FormBlock) {
        self.lang(path, f.span, f.lang.as_ref());
        for (i, o) in f.orths.iter().enumerate() {
            self.text(&path.child(Step::Orth(i)), f.span, o, "orth");
        }
        for (i, p) in f.prons.iter().enumerate() {
            self.text(&path.child(Step::Pron(i)), f.span, p, "pron");
        }
        for (i, n) in f.nested.iter().enumerate() {
            self.form(&path.child(Step::Form(i)), n);
        }
    }

    fn sense(&mut self, path: &NodePath, s: &SenseBlock) {
        let span = s.span;
        self.lang(path, span, s.lang.as_ref());
        if let Some(c) = &s.corresp {
            self.pointer(path, span, "sense @corresp", c);
        }
        for (i, d) in s.definitions.iter().enumerate() {
            self.lang(&path.child(Step::Def(i)), span, d.lang.as_ref());
        }
        for (i, u) in s.usages.iter().enumerate() {
            if let Some(c) = &u.corresp {
                self.pointer(&path.child(Step::Usage(i)), span, "usg @corresp", c);
            }
        }
        for (i, c) in s.translations.iter().enumerate() {
            self.cit(&path.child(Step::Cit(i)), c, None);
        }
        for (i, b) in s.etymologies.iter().enumerate() {
            let p = path.child(Step::Etym(i));
            if matches!(
                b.etym_type,
                EtymType::Inheritance | EtymType::Borrowing | EtymType::Compounding
            ) {
                self.push(
                    r::E_ETYM_PLACE,
                    &p,
                    b.span,
                    format!("{} etymology belongs directly in <entry>, not inside <sense>", b.etym_type),
                    Vec::new(),
                );
            }
            self.etym(&p, b);
        }
    }

    fn etym(&mut self, path: &NodePath, b: &EtymologyBlock) {
        let span = b.span;
        match &b.etym_type {
            EtymType::Other(t) if t.is_empty() => {
                self.push(r::W_ETYM_UNTYPED, path, span, crate::tei::untyped_message(), Vec::new())
            }
            EtymType::Other(t) => self.push(
                r::I_ETYM_OPENTYPE,
                path,
                span,
                format!("etym type \"{t}\" is outside the named process types"),
                Vec::new(),
            ),
            _ => {}
        }
        self.lang(path, span, b.lang.as_ref());
        if let Some(c) = &b.corresp {
            let kind = self.pointer(path, span, "etym @corresp", c);
            if let Some(k) = kind.filter(|k| *k != IdKind::Form) {
                self.push(
                    r::E_REF_KIND,
                    path,
                    span,
                    format!("etym @corresp=\"{c}\" targets a {k:?}, expected a form"),
                    vec![c.fragment().unwrap_or_default().to_string()],
                );
            }
        }
        self.date(path, span, b.date.as_ref());
        for l in &b.lang_labels {
            if let Some(c) = &l.corresp {
                self.pointer(path, span, "lang @corresp", c);
            }
        }
        for rf in &b.refs {
            if let Some(t) = &rf.target {
                self.pointer(path, span, "ref @target", t);
            }
        }
        let report = chain::check_chain_at(b, Some(path), self.doc, self.cfg);
        for d in report.defects {
            if self.cfg.is_enabled(d.rule) {
                let sev = self.cfg.severity_of(d.rule);
                self.out.push(Diagnostic { severity: sev, ..d });
            }
        }
        for (i, c) in b.citations.iter().enumerate() {
            self.cit(&path.child(Step::Cit(i)), c, None);
        }
        for (i, n) in b.nested.iter().enumerate() {
            self.etym(&path.child(Step::Etym(i)), n);
        }
    }

    fn cit(&mut self, path: &NodePath, c: &Citation, parent: Option<&Citation>) {
        let span = c.span;
        self.lang(path, span, c.lang.as_ref());
        if let Some(o) = &c.oref {
            self.text(&path.child(Step::ORef), span, o, "oRef");
        }
        if let Some(p) = &c.pref {
            self.text(&path.child(Step::PRef), span, p, "pRef");
        }
        self.date(path, span, c.date.as_ref());
        for (i, g) in c.glosses.iter().enumerate() {
            self.lang(&path.child(Step::Gloss(i)), span, g.lang.as_ref());
        }
        for (i, u) in c.usages.iter().enumerate() {
            if let Some(x) = &u.corresp {
                self.pointer(&path.child(Step::Usage(i)), span, "usg @corresp", x);
            }
        }
        for s in &c.sense_refs {
            self.pointer(path, span, "ref @corresp", s);
        }
        for rf in &c.refs {
            if let Some(t) = &rf.target {
                self.pointer(path, span, "ref @target", t);
            }
        }
        match c.kind {
            CitationKind::Etymon => self.etymon_shape(path, c),
            CitationKind::Attestation if c.quote.is_none() => self.push(
                r::E_CIT_SHAPE,
                path,
                span,
                "attestation has no <quote>".into(),
                Vec::new(),
            ),
            CitationKind::Translation if c.lang.is_none() && c.oref.as_ref().and_then(|o| o.lang.as_ref()).is_none() => {
                self.push(
                    r::E_CIT_SHAPE,
                    path,
                    span,
                    "translation has no xml:lang".into(),
                    Vec::new(),
                )
            }
            CitationKind::Component => self.component(path, c, parent),
            _ => {}
        }
        for (i, n) in c.nested.iter().enumerate() {
            self.cit(&path.child(Step::Cit(i)), n, Some(c));
        }
    }

    fn etymon_shape(&mut self, path: &NodePath, c: &Citation) {
        if c.oref.is_some() || c.pref.is_some() {
            return;
        }
        let wrapper = !c.has_own_content()
            && !c.nested.is_empty()
            && c.nested.iter().all(|n| n.kind == CitationKind::Etymon);
        if wrapper {
            if c.nested.len() == 1 {
                self.push(
                    r::W_CIT_REDUNDANT,
                    path,
                    c.span,
                    "etymon wraps a single nested etymon and carries nothing else".into(),
                    c.id.iter().cloned().collect(),
                );
            }
        } else {
            self.push(
                r::E_ETYMON_EMPTY,
                path,
                c.span,
                "etymon has neither <oRef> nor <pRef>".into(),
                c.id.iter().cloned().collect(),
            );
        }
    }

    fn component(&mut self, path: &NodePath, c: &Citation, parent: Option<&Citation>) {
        let Some(target) = &c.component_corresp else {
            if c.grammar.is_none() {
                self.push(
                    r::E_CIT_SHAPE,
                    path,
                    c.span,
                    "component has neither @corresp nor grammatical information".into(),
                    Vec::new(),
                );
            }
            return;
        };
        let Some(frag) = target.fragment() else {
            self.push(
                r::E_COMP_SEG,
                path,
                c.span,
                format!("component @corresp=\"{target}\" is not a #fragment pointer"),
                vec![target.raw.clone()],
            );
            return;
        };
        let ok = match parent.filter(|p| p.kind == CitationKind::Etymon) {
            Some(p) => p.oref.iter().chain(&p.pref).any(|t| t.seg_ids().any(|s| s == frag)),
            None => self.doc.id_index.get(frag).is_some_and(|t| t.kind == IdKind::Seg),
        };
        if !ok {
            let scope = if parent.is_some() {
                "the enclosing etymon's oRef or pRef"
            } else {
                "the document"
            };
            self.push(
                r::E_COMP_SEG,
                path,
                c.span,
                format!("component @corresp=\"{target}\" names no <seg> in {scope}"),
                vec![frag.to_string()],
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tei::parse_document;

    fn lint(body: &str) -> Vec<Diagnostic> {
        let xml = format!(r#"<TEI xmlns="http://www.tei-c.org/ns/1.0"><text><body>{body}</body></text></TEI>"#);
        let (doc, _) = parse_document(xml.as_bytes(), "t.xml").unwrap();
        lint_document(&doc, &RuleConfig::default())
    }

    fn rules(d: &[Diagnostic]) -> Vec<&'static str> {
        d.iter().map(|d| d.rule).collect()
    }

    #[test]
    fn clean_entry() {
        let d = lint(r#"<entry xml:id="a" xml:lang="fr"><form><orth>a</orth></form><sense><def>x</def></sense></entry>"#);
        assert!(d.is_empty(), "{d:?}");
    }

    #[test]
    fn missing_lang_and_form() {
        let d = lint(r#"<entry xml:id="a"><sense><def>x</def></sense></entry>"#);
        assert_eq!(rules(&d), vec![r::E_LANG_MISSING, r::W_ENTRY_NOFORM]);
    }

    #[test]
    fn placement() {
        let d = lint(
            r#"<entry xml:lang="fr"><form><orth>a</orth></form>
               <etym type="metaphor"><cit type="etymon"><oRef>b</oRef></cit></etym>
               <sense><etym type="borrowing"><cit type="etymon"><oRef>c</oRef></cit></etym></sense>
               <etym type="borrowing"><etym type="metaphor"><cit type="etymon"><oRef>d</oRef></cit></etym></etym>
               </entry>"#,
        );
        assert_eq!(rules(&d), vec![r::E_ETYM_PLACE, r::E_ETYM_PLACE]);
    }

    #[test]
    fn disabling_and_overrides() {
        let body = r#"<entry xml:lang="fr"><form><orth>a</orth></form>
               <etym type="metaphor"><cit type="etymon"><oRef>b</oRef></cit></etym></entry>"#;
        let xml = format!(r#"<TEI xmlns="http://www.tei-c.org/ns/1.0"><text><body>{body}</body></text></TEI>"#);
        let (doc, _) = parse_document(xml.as_bytes(), "t.xml").unwrap();
        let mut cfg = RuleConfig::default();
        cfg.override_severity(r::E_ETYM_PLACE, crate::Severity::Warning).unwrap();
        let d = lint_document(&doc, &cfg);
        assert_eq!(d[0].severity, crate::Severity::Warning);
        cfg.disable(r::E_ETYM_PLACE).unwrap();
        assert!(lint_document(&doc, &cfg).is_empty());
    }

    #[test]
    fn language_checks() {
        let d = lint(
            r#"<entry xml:lang="fr"><form><orth>a</orth></form>
               <etym type="borrowing"><cit type="etymon" xml:lang="emodeng"><oRef>b</oRef></cit>
               <cit type="etymon" xml:lang="x--y"><oRef>c</oRef></cit></etym></entry>"#,
        );
        assert_eq!(rules(&d), vec![r::W_LANG_UNREGISTERED, r::E_LANG_MALFORMED]);
    }

    #[test]
    fn refs_and_dates() {
        let d = lint(
            r##"<entry xml:id="e" xml:lang="fr"><form><orth>a</orth></form>
               <sense corresp="http://dbpedia.org/resource/A"><usg type="dom" corresp="#nowhere">x</usg></sense>
               <etym type="borrowing"><date notBefore="1600" notAfter="1500"/>
               <cit type="etymon"><oRef>b</oRef><date when="15"/></cit>
               <ref target="TLF">TLF</ref></etym></entry>"##,
        );
        assert_eq!(
            rules(&d),
            vec![r::E_REF_UNRESOLVED, r::E_DATE_INVERTED, r::E_REF_UNRESOLVED, r::E_DATE_FORMAT]
        );
    }

    #[test]
    fn redundant_wrapper_and_empty_etymon() {
        let d = lint(
            r#"<entry xml:lang="sc"><form><orth>a</orth></form><etym type="inheritance">
               <cit type="etymon"><cit type="etymon"><oRef xml:lang="la">semper</oRef></cit></cit>
               <cit type="etymon"><gloss>x</gloss></cit></etym></entry>"#,
        );
        assert_eq!(rules(&d), vec![r::W_CIT_REDUNDANT, r::E_ETYMON_EMPTY]);
    }

    #[test]
    fn pron_notation() {
        let d = lint(
            r#"<entry xml:lang="fr"><form><orth>a</orth><pron>a</pron><pron notation="kirshenbaum">a</pron></form></entry>"#,
        );
        assert_eq!(rules(&d), vec![r::W_PRON_NOTATION, r::I_PRON_NOTATION_UNKNOWN]);
    }

    #[test]
    fn component_segs() {
        let d = lint(
            r##"<entry xml:lang="en"><form><orth>a</orth></form><sense><etym type="grammaticalization">
               <cit type="etymon"><oRef><seg xml:id="s1">by</seg> <seg>sidan</seg></oRef>
                 <cit type="component" corresp="#s1"/><cit type="component" corresp="#s2"/>
                 <cit type="component"/></cit></etym></sense></entry>"##,
        );
        assert_eq!(rules(&d), vec![r::E_COMP_SEG, r::E_CIT_SHAPE]);
    }

    #[test]
    fn compound_decomposition() {
        let d = lint(r#"<entry xml:lang="fr" type="compound"><form><orth>merlenoir</orth></form></entry>"#);
        assert_eq!(rules(&d), vec![r::W_COMPOUND_DECOMP]);
        let d = lint(
            r#"<entry xml:lang="fr" type="compound"><form><orth><seg>rouge</seg><pc>-</pc><seg>gorge</seg></orth></form></entry>"#,
        );
        assert!(d.is_empty(), "{d:?}");
    }
}
