use std::fmt;

use super::{
    Citation, EtymologyBlock, FormBlock, IdKind, LangTag, LangText, LexicalEntry, Quote,
    Segment, SegmentedForm, SenseBlock, UsageDomain,
};

/// One step below an entry. Indices count children of the same kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Form(usize),
    Orth(usize),
    Pron(usize),
    Seg(usize),
    Sense(usize),
    Def(usize),
    Etym(usize),
    Cit(usize),
    ORef,
    PRef,
    Gloss(usize),
    Usage(usize),
    Quote,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Form(i) => write!(f, "form[{i}]"),
            Step::Orth(i) => write!(f, "orth[{i}]"),
            Step::Pron(i) => write!(f, "pron[{i}]"),
            Step::Seg(i) => write!(f, "seg[{i}]"),
            Step::Sense(i) => write!(f, "sense[{i}]"),
            Step::Def(i) => write!(f, "def[{i}]"),
            Step::Etym(i) => write!(f, "etym[{i}]"),
            Step::Cit(i) => write!(f, "cit[{i}]"),
            Step::ORef => f.write_str("oRef"),
            Step::PRef => f.write_str("pRef"),
            Step::Gloss(i) => write!(f, "gloss[{i}]"),
            Step::Usage(i) => write!(f, "usg[{i}]"),
            Step::Quote => f.write_str("quote"),
        }
    }
}

/// Location of a node inside a [`super::Document`]: entry index plus the
/// steps down from that entry. Displays as `entry[0]/etym[0]/cit[2]/oRef`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodePath {
    pub entry: usize,
    pub steps: Vec<Step>,
}

impl NodePath {
    pub fn entry(entry: usize) -> Self {
        Self {
            entry,
            steps: Vec::new(),
        }
    }

    pub fn child(&self, step: Step) -> Self {
        let mut p = self.clone();
        p.steps.push(step);
        p
    }

    pub fn parent(&self) -> Option<Self> {
        if self.steps.is_empty() {
            return None;
        }
        let mut p = self.clone();
        p.steps.pop();
        Some(p)
    }

    /// Number of `etym` steps on the path.
    pub fn etym_depth(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::Etym(_))).count()
    }

    pub fn resolve<'a>(&self, doc: &'a super::Document) -> Option<NodeRef<'a>> {
        let mut node = NodeRef::Entry(doc.entries.get(self.entry)?);
        for step in &self.steps {
            node = node.step(*step)?;
        }
        Some(node)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "entry[{}]", self.entry)?;
        for s in &self.steps {
            write!(f, "/{s}")?;
        }
        Ok(())
    }
}

/// A borrowed view of any addressable node.
#[derive(Debug, Clone, Copy)]
pub enum NodeRef<'a> {
    Entry(&'a LexicalEntry),
    Form(&'a FormBlock),
    Text(&'a SegmentedForm),
    Segment(&'a Segment),
    Sense(&'a SenseBlock),
    Definition(&'a LangText),
    Etym(&'a EtymologyBlock),
    Citation(&'a Citation),
    Gloss(&'a LangText),
    Usage(&'a UsageDomain),
    Quote(&'a Quote),
}

impl<'a> NodeRef<'a> {
    pub fn step(self, step: Step) -> Option<NodeRef<'a>> {
        use NodeRef as N;
        Some(match (self, step) {
            (N::Entry(e), Step::Form(i)) => N::Form(e.forms.get(i)?),
            (N::Entry(e), Step::Sense(i)) => N::Sense(e.senses.get(i)?),
            (N::Entry(e), Step::Etym(i)) => N::Etym(e.etymologies.get(i)?),
            (N::Form(f), Step::Form(i)) => N::Form(f.nested.get(i)?),
            (N::Form(f), Step::Orth(i)) => N::Text(f.orths.get(i)?),
            (N::Form(f), Step::Pron(i)) => N::Text(f.prons.get(i)?),
            (N::Text(t), Step::Seg(i)) => N::Segment(t.segments.get(i)?),
            (N::Sense(s), Step::Def(i)) => N::Definition(s.definitions.get(i)?),
            (N::Sense(s), Step::Usage(i)) => N::Usage(s.usages.get(i)?),
            (N::Sense(s), Step::Cit(i)) => N::Citation(s.translations.get(i)?),
            (N::Sense(s), Step::Etym(i)) => N::Etym(s.etymologies.get(i)?),
            (N::Etym(b), Step::Cit(i)) => N::Citation(b.citations.get(i)?),
            (N::Etym(b), Step::Etym(i)) => N::Etym(b.nested.get(i)?),
            (N::Citation(c), Step::Cit(i)) => N::Citation(c.nested.get(i)?),
            (N::Citation(c), Step::ORef) => N::Text(c.oref.as_ref()?),
            (N::Citation(c), Step::PRef) => N::Text(c.pref.as_ref()?),
            (N::Citation(c), Step::Gloss(i)) => N::Gloss(c.glosses.get(i)?),
            (N::Citation(c), Step::Usage(i)) => N::Usage(c.usages.get(i)?),
            (N::Citation(c), Step::Quote) => N::Quote(c.quote.as_ref()?),
            _ => return None,
        })
    }

    /// The node's own `xml:lang`, if it carries one.
    pub fn explicit_lang(&self) -> Option<&'a LangTag> {
        match self {
            NodeRef::Entry(e) => e.lang.as_ref(),
            NodeRef::Form(f) => f.lang.as_ref(),
            NodeRef::Text(t) => t.lang.as_ref(),
            NodeRef::Sense(s) => s.lang.as_ref(),
            NodeRef::Etym(b) => b.lang.as_ref(),
            NodeRef::Citation(c) => c.lang.as_ref(),
            NodeRef::Definition(t) | NodeRef::Gloss(t) => t.lang.as_ref(),
            NodeRef::Segment(_) | NodeRef::Usage(_) | NodeRef::Quote(_) => None,
        }
    }

    pub fn as_citation(&self) -> Option<&'a Citation> {
        match self {
            NodeRef::Citation(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_etym(&self) -> Option<&'a EtymologyBlock> {
        match self {
            NodeRef::Etym(b) => Some(b),
            _ => None,
        }
    }
}

type IdRow = (NodePath, String, IdKind);

fn text_ids(path: &NodePath, t: &SegmentedForm, out: &mut Vec<IdRow>) {
    for (i, s) in t.segments.iter().enumerate() {
        if let Segment::Seg { id: Some(id), .. } = s {
            out.push((path.child(Step::Seg(i)), id.clone(), IdKind::Seg));
        }
    }
}

fn form_ids(path: &NodePath, f: &FormBlock, out: &mut Vec<IdRow>) {
    if let Some(id) = &f.id {
        out.push((path.clone(), id.clone(), IdKind::Form));
    }
    for (i, o) in f.orths.iter().enumerate() {
        text_ids(&path.child(Step::Orth(i)), o, out);
    }
    for (i, p) in f.prons.iter().enumerate() {
        text_ids(&path.child(Step::Pron(i)), p, out);
    }
    for (i, n) in f.nested.iter().enumerate() {
        form_ids(&path.child(Step::Form(i)), n, out);
    }
}

fn cit_ids(path: &NodePath, c: &Citation, out: &mut Vec<IdRow>) {
    if let Some(id) = &c.id {
        out.push((path.clone(), id.clone(), IdKind::Citation));
    }
    if let Some(o) = &c.oref {
        text_ids(&path.child(Step::ORef), o, out);
    }
    if let Some(p) = &c.pref {
        text_ids(&path.child(Step::PRef), p, out);
    }
    if let Some(q) = &c.quote {
        for s in q.segs() {
            if let super::QuotePart::Seg { id: Some(id), .. } = s {
                out.push((path.child(Step::Quote), id.clone(), IdKind::Seg));
            }
        }
    }
    for (i, n) in c.nested.iter().enumerate() {
        cit_ids(&path.child(Step::Cit(i)), n, out);
    }
}

fn etym_ids(path: &NodePath, b: &EtymologyBlock, out: &mut Vec<IdRow>) {
    for (i, c) in b.citations.iter().enumerate() {
        cit_ids(&path.child(Step::Cit(i)), c, out);
    }
    for (i, n) in b.nested.iter().enumerate() {
        etym_ids(&path.child(Step::Etym(i)), n, out);
    }
}

/// Every `xml:id` in document order.
pub(super) fn collect_ids(entries: &[LexicalEntry]) -> Vec<IdRow> {
    let mut out = Vec::new();
    for (ei, e) in entries.iter().enumerate() {
        let root = NodePath::entry(ei);
        if let Some(id) = &e.id {
            out.push((root.clone(), id.clone(), IdKind::Entry));
        }
        for (i, f) in e.forms.iter().enumerate() {
            form_ids(&root.child(Step::Form(i)), f, &mut out);
        }
        for (si, s) in e.senses.iter().enumerate() {
            let sp = root.child(Step::Sense(si));
            if let Some(id) = &s.id {
                out.push((sp.clone(), id.clone(), IdKind::Sense));
            }
            for (i, c) in s.translations.iter().enumerate() {
                cit_ids(&sp.child(Step::Cit(i)), c, &mut out);
            }
            for (i, b) in s.etymologies.iter().enumerate() {
                etym_ids(&sp.child(Step::Etym(i)), b, &mut out);
            }
        }
        for (i, b) in e.etymologies.iter().enumerate() {
            etym_ids(&root.child(Step::Etym(i)), b, &mut out);
        }
    }
    out
}

fn walk_cit<'a>(path: NodePath, c: &'a Citation, out: &mut Vec<(NodePath, &'a Citation)>) {
    out.push((path.clone(), c));
    for (i, n) in c.nested.iter().enumerate() {
        walk_cit(path.child(Step::Cit(i)), n, out);
    }
}

fn walk_etym_cits<'a>(path: &NodePath, b: &'a EtymologyBlock, out: &mut Vec<(NodePath, &'a Citation)>) {
    for (i, c) in b.citations.iter().enumerate() {
        walk_cit(path.child(Step::Cit(i)), c, out);
    }
    for (i, n) in b.nested.iter().enumerate() {
        walk_etym_cits(&path.child(Step::Etym(i)), n, out);
    }
}

/// Every citation in document order, parents before children.
pub(super) fn walk_citations(entries: &[LexicalEntry]) -> Vec<(NodePath, &Citation)> {
    let mut out = Vec::new();
    for (path, owner) in owners(entries) {
        match owner {
            Owner::Sense(s) => {
                for (i, c) in s.translations.iter().enumerate() {
                    walk_cit(path.child(Step::Cit(i)), c, &mut out);
                }
            }
            Owner::Etym(b) => walk_etym_cits(&path, b, &mut out),
        }
    }
    out
}

enum Owner<'a> {
    Sense(&'a SenseBlock),
    Etym(&'a EtymologyBlock),
}

/// Top-level etym blocks and senses in document order: senses before
/// entry-level etymologies, matching the usual TEI layout.
fn owners(entries: &[LexicalEntry]) -> Vec<(NodePath, Owner<'_>)> {
    let mut out = Vec::new();
    for (ei, e) in entries.iter().enumerate() {
        let root = NodePath::entry(ei);
        for (si, s) in e.senses.iter().enumerate() {
            let sp = root.child(Step::Sense(si));
            out.push((sp.clone(), Owner::Sense(s)));
            for (i, b) in s.etymologies.iter().enumerate() {
                out.push((sp.child(Step::Etym(i)), Owner::Etym(b)));
            }
        }
        for (i, b) in e.etymologies.iter().enumerate() {
            out.push((root.child(Step::Etym(i)), Owner::Etym(b)));
        }
    }
    out
}

fn walk_etym<'a>(path: NodePath, b: &'a EtymologyBlock, out: &mut Vec<(NodePath, &'a EtymologyBlock)>) {
    out.push((path.clone(), b));
    for (i, n) in b.nested.iter().enumerate() {
        walk_etym(path.child(Step::Etym(i)), n, out);
    }
}

pub(super) fn walk_etymologies(entries: &[LexicalEntry]) -> Vec<(NodePath, &EtymologyBlock)> {
    let mut out = Vec::new();
    for (ei, e) in entries.iter().enumerate() {
        let root = NodePath::entry(ei);
        for (si, s) in e.senses.iter().enumerate() {
            for (i, b) in s.etymologies.iter().enumerate() {
                walk_etym(root.child(Step::Sense(si)).child(Step::Etym(i)), b, &mut out);
            }
        }
        for (i, b) in e.etymologies.iter().enumerate() {
            walk_etym(root.child(Step::Etym(i)), b, &mut out);
        }
    }
    out
}
