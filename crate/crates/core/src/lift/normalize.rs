use crate::diagnostic::{Diagnostic, Location};
use crate::lint::rules as r;
use crate::model::{
    Citation, CitationKind, Document, EtymologyBlock, FormKind, LexicalEntry, NodePath,
    SegmentedForm, Step,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NormalizeOptions {
    /// Drop the second of two identical consecutive etymons instead of
    /// only reporting it.
    pub aggressive: bool,
}

/// Apply the fix passes to one entry, reporting each change.
pub fn normalize_entry(entry: &LexicalEntry, opts: NormalizeOptions) -> (LexicalEntry, Vec<Diagnostic>) {
    normalize_entry_at(entry, opts, "", 0)
}

/// [`normalize_entry`] with diagnostics located in `file` at entry `index`.
pub fn normalize_entry_at(
    entry: &LexicalEntry,
    opts: NormalizeOptions,
    file: &str,
    index: usize,
) -> (LexicalEntry, Vec<Diagnostic>) {
    let mut n = Normalizer {
        opts,
        file,
        entry_id: entry.id.clone(),
        diags: Vec::new(),
    };
    let mut e = entry.clone();
    let root = NodePath::entry(index);
    for (si, s) in e.senses.iter_mut().enumerate() {
        let sp = root.child(Step::Sense(si));
        for (i, b) in s.etymologies.iter_mut().enumerate() {
            n.block(&sp.child(Step::Etym(i)), b);
        }
    }
    for (i, b) in e.etymologies.iter_mut().enumerate() {
        n.block(&root.child(Step::Etym(i)), b);
    }
    let doc = Document::from_entries(file, vec![e.clone()]);
    for dup in &doc.duplicate_ids {
        let mut path = dup.path.clone();
        path.entry = index;
        let mut first = dup.first.clone();
        first.entry = index;
        let d = n.diag(
            r::I_NORM_DUPID,
            &path,
            format!("xml:id \"{}\" repeats the one at {first}; kept", dup.id),
        );
        n.diags.push(d.related([dup.id.clone()]));
    }
    (e, n.diags)
}

struct Normalizer<'a> {
    opts: NormalizeOptions,
    file: &'a str,
    entry_id: Option<String>,
    diags: Vec<Diagnostic>,
}

fn same_stage(a: &Citation, b: &Citation) -> bool {
    a.kind == CitationKind::Etymon
        && b.kind == CitationKind::Etymon
        && a.id == b.id
        && a.lang == b.lang
        && a.form_text().is_some()
        && a.form_text() == b.form_text()
        && a.pref.as_ref().map(SegmentedForm::text) == b.pref.as_ref().map(SegmentedForm::text)
        && a.date == b.date
}

/// Fold a wrapper's attributes into its only child; `None` when both carry
/// a different value for the same attribute.
fn unwrap(wrapper: &Citation) -> Option<Citation> {
    let mut inner = wrapper.nested[0].clone();
    macro_rules! fold {
        ($f:ident) => {
            match (&wrapper.$f, &inner.$f) {
                (Some(w), Some(i)) if w != i => return None,
                (Some(w), None) => inner.$f = Some(w.clone()),
                _ => {}
            }
        };
    }
    fold!(id);
    fold!(prev);
    fold!(next);
    fold!(lang);
    fold!(ana);
    fold!(component_corresp);
    Some(inner)
}

impl Normalizer<'_> {
    fn diag(&self, rule: &'static str, path: &NodePath, msg: String) -> Diagnostic {
        let loc = Location {
            file: self.file.to_string(),
            entry: Some(path.entry),
            entry_id: self.entry_id.clone(),
            path: Some(path.clone()),
            line: None,
            col: None,
        };
        Diagnostic::new(rule, r::info(rule).severity, loc, msg)
    }

    fn block(&mut self, path: &NodePath, b: &mut EtymologyBlock) {
        for (i, c) in b.citations.iter_mut().enumerate() {
            self.cit(&path.child(Step::Cit(i)), c);
        }
        let mut i = 1;
        while i < b.citations.len() {
            if same_stage(&b.citations[i - 1], &b.citations[i]) {
                let here = path.child(Step::Cit(i));
                let form = b.citations[i].form_text().unwrap_or_default();
                if self.opts.aggressive {
                    let gone = b.citations.remove(i);
                    let kept = &mut b.citations[i - 1];
                    if let Some(id) = &kept.id {
                        if kept.next.as_ref().and_then(|p| p.fragment()) == Some(id.as_str()) {
                            kept.next = gone.next.filter(|p| p.fragment() != Some(id.as_str()));
                        }
                        if kept.prev.as_ref().and_then(|p| p.fragment()) == Some(id.as_str()) {
                            kept.prev = None;
                        }
                    }
                    let d = self.diag(
                        r::I_NORM_DUPCIT,
                        &here,
                        format!("etymon \"{form}\" repeats {}; removed", path.child(Step::Cit(i - 1))),
                    );
                    self.diags.push(d);
                    continue;
                }
                let d = self.diag(
                    r::I_NORM_DUPCIT,
                    &here,
                    format!("etymon \"{form}\" repeats {}; kept", path.child(Step::Cit(i - 1))),
                );
                self.diags.push(d);
            }
            i += 1;
        }
        for (i, n) in b.nested.iter_mut().enumerate() {
            self.block(&path.child(Step::Etym(i)), n);
        }
    }

    fn cit(&mut self, path: &NodePath, c: &mut Citation) {
        loop {
            let redundant = c.kind == CitationKind::Etymon
                && !c.has_own_content()
                && c.nested.len() == 1
                && c.nested[0].kind == CitationKind::Etymon;
            let Some(inner) = redundant.then(|| unwrap(c)).flatten() else {
                break;
            };
            let d = self.diag(
                r::I_NORM_UNWRAP,
                path,
                format!("redundant etymon wrapper removed: {} became {path}", path.child(Step::Cit(0))),
            );
            self.diags.push(d);
            let span = c.span;
            *c = inner;
            c.span = span;
        }
        if c.kind == CitationKind::Etymon && c.oref.is_none() && c.pref.is_none() && c.refs.len() == 1 {
            let rf = &c.refs[0];
            if !rf.text.trim().is_empty() {
                let mut o = SegmentedForm::plain(FormKind::Orth, rf.text.trim());
                o.corresp = rf.target.clone();
                let d = self.diag(
                    r::I_NORM_REF,
                    path,
                    format!("<ref> \"{}\" used as the etymon form rewritten to {}", rf.text.trim(), path.child(Step::ORef)),
                );
                self.diags.push(d);
                c.oref = Some(o);
                c.refs.clear();
            }
        }
        for (i, n) in c.nested.iter_mut().enumerate() {
            self.cit(&path.child(Step::Cit(i)), n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tei::parse_entry;

    #[test]
    fn unwraps_nested_wrapper() {
        let (e, _) = parse_entry(
            r#"<entry xml:id="semper" xml:lang="srd"><form><orth>sempri</orth></form><etym type="inheritance">
               <cit type="etymon"><cit type="etymon"><oRef xml:lang="la">semper</oRef></cit></cit></etym></entry>"#,
        )
        .unwrap();
        let (n, d) = normalize_entry(&e, NormalizeOptions::default());
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].rule, r::I_NORM_UNWRAP);
        let c = &n.etymologies[0].citations[0];
        assert_eq!(c.form_text().unwrap(), "semper");
        assert!(c.nested.is_empty());
        let (again, d2) = normalize_entry(&n, NormalizeOptions::default());
        assert_eq!(again, n);
        assert!(d2.is_empty());
    }

    #[test]
    fn clean_entry_is_a_fixpoint() {
        let (e, _) = parse_entry(r#"<entry xml:id="a" xml:lang="fr"><form><orth>a</orth></form></entry>"#).unwrap();
        let (n, d) = normalize_entry(&e, NormalizeOptions::default());
        assert_eq!(n, e);
        assert!(d.is_empty());
    }

    #[test]
    fn ref_becomes_oref() {
        let (e, _) = parse_entry(
            r##"<entry xml:lang="fr"><form><orth>a</orth></form><etym type="borrowing">
               <cit type="etymon"><ref target="#b">b</ref></cit></etym></entry>"##,
        )
        .unwrap();
        let (n, d) = normalize_entry(&e, NormalizeOptions::default());
        assert_eq!(d[0].rule, r::I_NORM_REF);
        assert_eq!(n.etymologies[0].citations[0].form_text().unwrap(), "b");
    }

    #[test]
    fn duplicate_stage_needs_aggressive() {
        let (e, _) = parse_entry(
            r##"<entry xml:id="chef" xml:lang="fr"><form><orth>chef</orth></form><etym type="inheritance">
               <cit type="etymon" xml:id="s" next="#s"><oRef>šéf</oRef></cit>
               <cit type="etymon" xml:id="s" prev="#s"><oRef>šéf</oRef></cit></etym></entry>"##,
        )
        .unwrap();
        let (kept, d) = normalize_entry(&e, NormalizeOptions::default());
        assert_eq!(kept.etymologies[0].citations.len(), 2);
        assert!(d.iter().any(|d| d.rule == r::I_NORM_DUPCIT));
        assert!(d.iter().any(|d| d.rule == r::I_NORM_DUPID));
        let (cut, d) = normalize_entry(&e, NormalizeOptions { aggressive: true });
        assert_eq!(cut.etymologies[0].citations.len(), 1);
        assert!(cut.etymologies[0].citations[0].next.is_none());
        assert!(d.iter().any(|d| d.rule == r::I_NORM_DUPCIT));
        let (again, _) = normalize_entry(&cut, NormalizeOptions { aggressive: true });
        assert_eq!(again, cut);
    }
}
