use std::collections::{BTreeMap, BTreeSet};

use super::{EtymGraph, GraphEdge, GraphNode, NodeKind, Relation};
use crate::lint::{ChainReport, RuleConfig};
use crate::model::{
    effective_language, Citation, CitationKind, CrossRef, DateSpan, Document, EtymType,
    EtymologyBlock, FormBlock, LexicalEntry, NodePath, Segment, Step,
};

/// Counters for what the builder had to leave out.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// Internal pointers that named no id; their edges were omitted.
    pub unresolved_refs: usize,
    /// Etym blocks whose chain could not be ordered.
    pub unordered_chains: usize,
    /// Chain links dropped because an endpoint carries a chain defect.
    pub dropped_links: usize,
}

/// Citations of one block in chain order, or as written when the chain
/// cannot be ordered.
#[derive(Debug, Clone, PartialEq)]
pub struct Linearized<'a> {
    pub citations: Vec<&'a Citation>,
    /// False when `citations` fell back to document order.
    pub ordered: bool,
    /// Document-order runs, one per linked component of the chain.
    pub segments: Vec<Vec<&'a Citation>>,
}

/// Put a block's etymon citations in stage order using a report from
/// [`crate::lint::check_chain`] on the same block.
pub fn linearize<'a>(report: &ChainReport, block: &'a EtymologyBlock) -> Linearized<'a> {
    let cit = |i: &usize| &block.citations[*i];
    match &report.order {
        Some(order) => {
            let citations: Vec<&Citation> = order.iter().map(cit).collect();
            Linearized {
                segments: vec![citations.clone()],
                citations,
                ordered: true,
            }
        }
        None => {
            let citations = block
                .citations
                .iter()
                .filter(|c| c.kind == CitationKind::Etymon)
                .collect();
            let segments = report
                .components
                .iter()
                .map(|comp| comp.iter().map(cit).collect())
                .collect();
            Linearized {
                citations,
                ordered: false,
                segments,
            }
        }
    }
}

pub fn build_network(docs: &[Document]) -> EtymGraph {
    build_network_with_stats(docs).0
}

pub fn build_network_with_stats(docs: &[Document]) -> (EtymGraph, BuildStats) {
    let mut b = Builder {
        graph: EtymGraph::new(),
        stats: BuildStats::default(),
        cfg: RuleConfig::default(),
    };
    for doc in docs {
        b.document(doc);
    }
    (b.graph, b.stats)
}

struct Builder {
    graph: EtymGraph,
    stats: BuildStats,
    cfg: RuleConfig,
}

/// Per-document naming and lookup.
struct DocCtx<'a> {
    doc: &'a Document,
    keys: Vec<String>,
}

impl<'a> DocCtx<'a> {
    fn new(doc: &'a Document) -> Self {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for e in &doc.entries {
            if let Some(id) = &e.id {
                *counts.entry(id).or_default() += 1;
            }
        }
        let keys = doc
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| match &e.id {
                Some(id) if counts[id.as_str()] == 1 => id.clone(),
                _ => format!("entry[{i}]"),
            })
            .collect();
        Self { doc, keys }
    }

    fn node_id(&self, path: &NodePath) -> String {
        let mut s = format!("{}#{}", self.doc.source_name, self.keys[path.entry]);
        for step in &path.steps {
            s.push('/');
            s.push_str(&step.to_string());
        }
        s
    }

    fn entry_head(&self, entry: usize) -> String {
        self.node_id(&NodePath::entry(entry))
    }

    /// Entry head of whatever an internal pointer names.
    fn resolve_entry(&self, ptr: &CrossRef) -> Result<Option<String>, ()> {
        match ptr.fragment() {
            None => Ok(None),
            Some(id) => match self.doc.id_index.get(id) {
                Some(t) => Ok(Some(self.entry_head(t.path.entry))),
                None => Err(()),
            },
        }
    }
}

/// Where the etymologies of a block flow into, plus inherited context.
#[derive(Clone)]
struct Scope {
    owner: String,
    process_path: Vec<EtymType>,
    date: Option<DateSpan>,
    form_ref: Option<String>,
}

fn is_lod(c: Option<&CrossRef>) -> Option<&str> {
    c.and_then(CrossRef::uri).filter(|u| !u.is_empty())
}

impl Builder {
    fn external(&mut self, uri: &str) -> String {
        let mut n = GraphNode::new(uri.to_string(), NodeKind::ExternalConcept);
        n.uri = Some(uri.to_string());
        self.graph.add_node(n)
    }

    fn link_external(&mut self, from: &str, uri: Option<&str>, rel: &str) {
        if let Some(uri) = uri {
            let to = self.external(uri);
            self.graph.add_edge(GraphEdge::new(from, &to, Relation::Other(rel.into())));
        }
    }

    fn document(&mut self, doc: &Document) {
        let cx = DocCtx::new(doc);
        // heads first, so pointers to later entries resolve
        for (ei, e) in doc.entries.iter().enumerate() {
            let mut head = GraphNode::new(cx.entry_head(ei), NodeKind::EntryHead);
            head.xml_id = e.id.clone();
            head.form = e.headword();
            head.lang = e.lang.clone();
            self.graph.add_node(head);
        }
        for (ei, e) in doc.entries.iter().enumerate() {
            self.entry(&cx, ei, e);
        }
        for (ei, e) in doc.entries.iter().enumerate() {
            self.components(&cx, ei, e);
        }
    }

    fn entry(&mut self, cx: &DocCtx, ei: usize, e: &LexicalEntry) {
        let root = NodePath::entry(ei);
        let head = cx.entry_head(ei);

        for (si, s) in e.senses.iter().enumerate() {
            let sp = root.child(Step::Sense(si));
            let lod = is_lod(s.corresp.as_ref());
            let anchor = if !s.etymologies.is_empty() || lod.is_some() {
                let mut n = GraphNode::new(cx.node_id(&sp), NodeKind::SenseHead);
                n.xml_id = s.id.clone();
                n.form = e.headword();
                n.gloss = s.definitions.first().map(|d| d.text.clone());
                n.lang = effective_language(&sp, cx.doc).ok().flatten();
                let id = self.graph.add_node(n);
                self.graph.add_edge(GraphEdge::new(&id, &head, Relation::SenseOf));
                self.link_external(&id, lod, "denotes");
                id
            } else {
                head.clone()
            };
            for u in &s.usages {
                self.link_external(&anchor, is_lod(u.corresp.as_ref()), "domain");
            }
            for (i, c) in s.translations.iter().enumerate() {
                let scope = Scope {
                    owner: anchor.clone(),
                    process_path: Vec::new(),
                    date: None,
                    form_ref: None,
                };
                self.cit(cx, &sp.child(Step::Cit(i)), c, None, &scope);
            }
            for (i, b) in s.etymologies.iter().enumerate() {
                let scope = Scope {
                    owner: anchor.clone(),
                    process_path: Vec::new(),
                    date: None,
                    form_ref: None,
                };
                self.block(cx, &sp.child(Step::Etym(i)), b, &scope);
            }
        }
        for (i, b) in e.etymologies.iter().enumerate() {
            let scope = Scope {
                owner: head.clone(),
                process_path: Vec::new(),
                date: None,
                form_ref: None,
            };
            self.block(cx, &root.child(Step::Etym(i)), b, &scope);
        }
    }

    /// `ComponentOf` edges from entries named by the `<seg>` parts of a
    /// compound's forms.
    fn components(&mut self, cx: &DocCtx, ei: usize, e: &LexicalEntry) {
        fn segs<'f>(f: &'f FormBlock, out: &mut Vec<&'f CrossRef>) {
            for t in f.orths.iter().chain(&f.prons) {
                for s in &t.segments {
                    if let Segment::Seg { corresp: Some(c), .. } = s {
                        out.push(c);
                    }
                }
            }
            f.nested.iter().for_each(|n| segs(n, out));
        }
        let mut ptrs = Vec::new();
        e.forms.iter().for_each(|f| segs(f, &mut ptrs));
        let head = cx.entry_head(ei);
        for p in ptrs {
            match cx.resolve_entry(p) {
                Ok(Some(target)) if target != head => {
                    self.graph
                        .add_edge(GraphEdge::new(&target, &head, Relation::ComponentOf));
                }
                Ok(_) => {}
                Err(()) => self.stats.unresolved_refs += 1,
            }
        }
    }

    fn block(&mut self, cx: &DocCtx, path: &NodePath, b: &EtymologyBlock, outer: &Scope) {
        let mut scope = outer.clone();
        scope.process_path.push(b.etym_type.clone());
        if let Some(d) = b.date.as_ref().and_then(|d| d.span().ok()) {
            scope.date = Some(d);
        }
        if let Some(f) = b.corresp.as_ref().and_then(CrossRef::fragment) {
            scope.form_ref = Some(f.to_string());
        }
        let rel = Relation::from_etym(&b.etym_type);

        let mut units: BTreeMap<usize, String> = BTreeMap::new();
        for (i, c) in b.citations.iter().enumerate() {
            if let Some(id) = self.cit(cx, &path.child(Step::Cit(i)), c, Some(&rel), &scope) {
                units.insert(i, id);
            }
        }

        let report = crate::lint::chain::check_chain_at(b, Some(path), cx.doc, &self.cfg);
        let mut precedes: Vec<(usize, usize)> = Vec::new();
        match &report.order {
            // blocks without prev/next state no stage order
            _ if !report.has_pointers() => {}
            Some(order) => precedes.extend(order.windows(2).map(|w| (w[0], w[1]))),
            None => {
                self.stats.unordered_chains += 1;
                let (mut has_out, mut has_in) = (BTreeSet::new(), BTreeSet::new());
                for &(a, z) in &report.links {
                    let clean = !report.defective.contains(&a) && !report.defective.contains(&z);
                    if clean && !has_out.contains(&a) && !has_in.contains(&z) && !creates_cycle(&precedes, a, z) {
                        has_out.insert(a);
                        has_in.insert(z);
                        precedes.push((a, z));
                    } else {
                        self.stats.dropped_links += 1;
                    }
                }
            }
        }
        let mut newer_exists = BTreeSet::new();
        for &(a, z) in &precedes {
            if let (Some(from), Some(to)) = (units.get(&a), units.get(&z)) {
                let mut e = GraphEdge::new(from, to, Relation::Precedes);
                e.process_path = scope.process_path.clone();
                self.graph.add_edge(e);
                newer_exists.insert(a);
            }
        }
        for (i, id) in &units {
            if newer_exists.contains(i) {
                continue;
            }
            let mut e = GraphEdge::new(id, &scope.owner, rel.clone());
            e.process_path = scope.process_path.clone();
            e.form_ref = scope.form_ref.clone();
            self.graph.add_edge(e);
        }

        for (i, n) in b.nested.iter().enumerate() {
            self.block(cx, &path.child(Step::Etym(i)), n, &scope);
        }
    }

    /// Add the unit for an etymon citation and everything hanging off it.
    /// `rel` is the relation of the enclosing block; nested etymons flow
    /// into their parent unit with it. Returns the unit id for etymons.
    fn cit(
        &mut self,
        cx: &DocCtx,
        path: &NodePath,
        c: &Citation,
        rel: Option<&Relation>,
        scope: &Scope,
    ) -> Option<String> {
        let unit = (c.kind == CitationKind::Etymon).then(|| {
            let mut n = GraphNode::new(cx.node_id(path), NodeKind::EtymonUnit);
            n.xml_id = c.id.clone();
            n.form = c.form_text();
            let lang_path = if c.oref.is_some() {
                path.child(Step::ORef)
            } else if c.pref.is_some() {
                path.child(Step::PRef)
            } else {
                path.clone()
            };
            n.lang = effective_language(&lang_path, cx.doc).ok().flatten();
            n.date = c
                .date
                .as_ref()
                .and_then(|d| d.span().ok())
                .or_else(|| scope.date.clone());
            n.gloss = c.glosses.first().map(|g| g.text.clone());
            self.graph.add_node(n)
        });
        let anchor = unit.clone().unwrap_or_else(|| scope.owner.clone());

        if let Some(u) = &unit {
            let targets: Vec<&CrossRef> = c
                .oref
                .iter()
                .chain(&c.pref)
                .filter_map(|t| t.corresp.as_ref())
                .collect();
            for t in targets {
                match cx.resolve_entry(t) {
                    Ok(Some(entry)) => {
                        self.graph.add_edge(GraphEdge::new(u, &entry, Relation::SameAs));
                    }
                    Ok(None) => {}
                    Err(()) => self.stats.unresolved_refs += 1,
                }
            }
        }
        for u in &c.usages {
            self.link_external(&anchor, is_lod(u.corresp.as_ref()), "domain");
        }
        for s in &c.sense_refs {
            self.link_external(&anchor, is_lod(Some(s)), "sense");
        }

        let inner = Scope {
            owner: anchor.clone(),
            ..scope.clone()
        };
        for (i, n) in c.nested.iter().enumerate() {
            if let Some(child) = self.cit(cx, &path.child(Step::Cit(i)), n, rel, &inner) {
                let r = rel.cloned().unwrap_or_else(|| Relation::Other("untyped".into()));
                let mut e = GraphEdge::new(&child, &anchor, r);
                e.process_path = scope.process_path.clone();
                self.graph.add_edge(e);
            }
        }
        unit
    }
}

fn creates_cycle(edges: &[(usize, usize)], a: usize, z: usize) -> bool {
    let mut cur = z;
    let mut steps = 0;
    while let Some(&(_, n)) = edges.iter().find(|(f, _)| *f == cur) {
        if n == a || steps > edges.len() {
            return true;
        }
        cur = n;
        steps += 1;
    }
    z == a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tei::parse_document;

    fn doc(body: &str) -> Document {
        let xml = format!(r#"<TEI xmlns="http://www.tei-c.org/ns/1.0"><text><body>{body}</body></text></TEI>"#);
        parse_document(xml.as_bytes(), "t.xml").unwrap().0
    }

    #[test]
    fn empty_input() {
        let g = build_network(&[]);
        assert!(g.nodes().is_empty() && g.edges().is_empty());
    }

    #[test]
    fn nested_process_path() {
        let d = doc(
            r#"<entry xml:id="h" xml:lang="de" type="compound"><form><orth>Handschuh</orth></form>
               <etym type="compounding"><cit type="etymon"><oRef>Hand</oRef></cit>
               <etym type="metaphor"><cit type="etymon"><oRef>Schuh</oRef></cit></etym></etym></entry>"#,
        );
        let g = build_network(&[d]);
        let schuh = g.nodes().iter().find(|n| n.form.as_deref() == Some("Schuh")).unwrap();
        let e = g.edges_from(&schuh.id).next().unwrap();
        assert_eq!(e.process_path, vec![EtymType::Compounding, EtymType::Metaphor]);
        assert_eq!(e.relation, Relation::Metaphor);
        assert_eq!(e.to, "t.xml#h");
        assert!(g.invariant_violations().is_empty());
    }

    #[test]
    fn chain_feeds_entry_through_newest_stage() {
        let d = doc(
            r##"<entry xml:id="x" xml:lang="fr"><form><orth>c</orth></form><etym type="inheritance">
               <cit type="etymon" xml:id="a" next="#b"><oRef>a</oRef></cit>
               <cit type="etymon" xml:id="b" prev="#a" next="#c"><oRef>b</oRef></cit>
               <cit type="etymon" xml:id="c" prev="#b"><oRef>c</oRef></cit></etym></entry>"##,
        );
        let g = build_network(&[d]);
        assert_eq!(g.count_relation(&Relation::Precedes), 2);
        let into_entry: Vec<_> = g.edges_into("t.xml#x").collect();
        assert_eq!(into_entry.len(), 1);
        assert_eq!(into_entry[0].from, "t.xml#x/etym[0]/cit[2]");
    }

    #[test]
    fn linearize_unordered_block() {
        let d = doc(
            r#"<entry xml:lang="fr"><form><orth>c</orth></form><etym type="compounding">
               <cit type="etymon"><oRef>a</oRef></cit><cit type="etymon"><oRef>b</oRef></cit>
               <cit type="etymon"><oRef>c</oRef></cit></etym></entry>"#,
        );
        let b = &d.entries[0].etymologies[0];
        let rep = crate::lint::check_chain(b, &d);
        let lin = linearize(&rep, b);
        let forms: Vec<_> = lin.citations.iter().map(|c| c.form_text().unwrap()).collect();
        assert_eq!(forms, ["a", "b", "c"]);
    }
}
