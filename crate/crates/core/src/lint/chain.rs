//! `@prev`/`@next` stage chains inside one etym block.

use std::collections::{BTreeMap, BTreeSet};

use super::rules as r;
use super::{location, RuleConfig};
use crate::diagnostic::{Diagnostic, Location, Severity};
use crate::model::{Citation, CitationKind, CrossRef, Document, EtymologyBlock, NodePath, Step};

/// An etymon citation of the block, by index into `block.citations`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMember {
    pub index: usize,
    pub id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    /// Etymon citations carrying `@xml:id`, `@prev` or `@next`.
    pub members: Vec<ChainMember>,
    /// Citation indices oldest first. Present exactly when the block has
    /// no error-level chain defect and forms a single chain. A block
    /// without any pointer is ordered as written.
    pub order: Option<Vec<usize>>,
    /// Resolved precedence links `(older, newer)`.
    pub links: Vec<(usize, usize)>,
    /// Connected groups of linked citations, each in document order.
    pub components: Vec<Vec<usize>>,
    /// Citation indices that carry an error-level chain defect.
    pub defective: BTreeSet<usize>,
    pub defects: Vec<Diagnostic>,
}

impl ChainReport {
    pub fn has_pointers(&self) -> bool {
        !self.components.is_empty()
    }
}

enum Target {
    Absent,
    Resolved(usize),
    SelfRef,
    Dangling,
}

struct Checker<'a> {
    block: &'a EtymologyBlock,
    base: Option<NodePath>,
    doc: &'a Document,
    local: BTreeMap<&'a str, usize>,
    defects: Vec<Diagnostic>,
    defective: BTreeSet<usize>,
}

impl<'a> Checker<'a> {
    fn loc(&self, index: Option<usize>) -> Location {
        let span = index.map_or(self.block.span, |i| self.block.citations[i].span);
        match &self.base {
            Some(base) => {
                let path = index.map_or_else(|| base.clone(), |i| base.child(Step::Cit(i)));
                location(self.doc, &path, span)
            }
            None => Location::file(&self.doc.source_name).with_span(span),
        }
    }

    fn defect(&mut self, rule: &'static str, index: Option<usize>, msg: String, related: Vec<String>) {
        let sev = r::info(rule).severity;
        if sev == Severity::Error {
            if let Some(i) = index {
                self.defective.insert(i);
            }
        }
        let d = Diagnostic::new(rule, sev, self.loc(index), msg).related(related);
        self.defects.push(d);
    }

    fn target(&mut self, index: usize, attr: &str, ptr: Option<&'a CrossRef>) -> Target {
        let Some(ptr) = ptr else {
            return Target::Absent;
        };
        let cit = &self.block.citations[index];
        let Some(frag) = ptr.fragment() else {
            self.defect(
                r::E_CHAIN_DANGLING,
                Some(index),
                format!("@{attr}=\"{ptr}\" is not a #fragment pointer"),
                vec![ptr.raw.clone()],
            );
            return Target::Dangling;
        };
        if cit.id.as_deref() == Some(frag) {
            self.defect(
                r::E_CHAIN_SELF,
                Some(index),
                format!("@{attr}=\"{ptr}\" points at the citation itself"),
                vec![frag.to_string()],
            );
            return Target::SelfRef;
        }
        match self.local.get(frag) {
            Some(&j) => Target::Resolved(j),
            None => {
                let elsewhere = if self.doc.id_index.contains_key(frag) {
                    " (the id exists outside this etym block)"
                } else {
                    ""
                };
                self.defect(
                    r::E_CHAIN_DANGLING,
                    Some(index),
                    format!("@{attr}=\"{ptr}\" names no etymon in this etym block{elsewhere}"),
                    vec![frag.to_string()],
                );
                Target::Dangling
            }
        }
    }
}

fn name(block: &EtymologyBlock, i: usize) -> String {
    let c = &block.citations[i];
    c.id.clone()
        .or_else(|| c.form_text())
        .unwrap_or_else(|| format!("cit[{i}]"))
}

/// Check the chain of one block, locating its diagnostics by searching the
/// document for the block.
pub fn check_chain(block: &EtymologyBlock, doc: &Document) -> ChainReport {
    let path = doc
        .etymologies()
        .into_iter()
        .find(|(_, b)| std::ptr::eq(*b, block))
        .map(|(p, _)| p);
    check_chain_at(block, path.as_ref(), doc, &RuleConfig::default())
}

pub(crate) fn check_chain_at(
    block: &EtymologyBlock,
    base: Option<&NodePath>,
    doc: &Document,
    cfg: &RuleConfig,
) -> ChainReport {
    let etymons: Vec<usize> = block
        .citations
        .iter()
        .enumerate()
        .filter(|(_, c)| c.kind == CitationKind::Etymon)
        .map(|(i, _)| i)
        .collect();
    let mut local = BTreeMap::new();
    for &i in &etymons {
        if let Some(id) = &block.citations[i].id {
            local.entry(id.as_str()).or_insert(i);
        }
    }
    let members = etymons
        .iter()
        .map(|&i| (i, &block.citations[i]))
        .filter(|(_, c)| c.id.is_some() || c.prev.is_some() || c.next.is_some())
        .map(|(index, c)| ChainMember {
            index,
            id: c.id.clone(),
        })
        .collect();

    let mut ck = Checker {
        block,
        base: base.cloned(),
        doc,
        local,
        defects: Vec::new(),
        defective: BTreeSet::new(),
    };

    let any_pointer = etymons
        .iter()
        .any(|&i| block.citations[i].prev.is_some() || block.citations[i].next.is_some());
    if !any_pointer {
        let order = Some(etymons.clone());
        return ChainReport {
            members,
            order,
            links: Vec::new(),
            components: Vec::new(),
            defective: BTreeSet::new(),
            defects: Vec::new(),
        };
    }

    let mut prev_of = BTreeMap::new();
    let mut next_of = BTreeMap::new();
    for &i in &etymons {
        let c: &Citation = &block.citations[i];
        let p = ck.target(i, "prev", c.prev.as_ref());
        let n = ck.target(i, "next", c.next.as_ref());
        prev_of.insert(i, p);
        next_of.insert(i, n);
    }

    let mut links = BTreeSet::new();
    for &i in &etymons {
        if let Target::Resolved(j) = next_of[&i] {
            links.insert((i, j));
            match prev_of[&j] {
                Target::Resolved(k) if k == i => {}
                Target::Resolved(k) => {
                    let (a, b, c) = (name(block, i), name(block, j), name(block, k));
                    ck.defect(
                        r::E_CHAIN_ASYM,
                        Some(i),
                        format!("{a} has @next {b}, but {b} has @prev {c}"),
                        vec![a, b],
                    );
                }
                Target::Absent => {
                    let (a, b) = (name(block, i), name(block, j));
                    ck.defect(
                        r::E_CHAIN_ASYM,
                        Some(i),
                        format!("{a} has @next {b}, but {b} has no @prev"),
                        vec![a, b],
                    );
                }
                Target::SelfRef | Target::Dangling => {}
            }
        }
        if let Target::Resolved(j) = prev_of[&i] {
            links.insert((j, i));
            match next_of[&j] {
                Target::Resolved(k) if k == i => {}
                Target::Resolved(k) => {
                    let (a, b, c) = (name(block, i), name(block, j), name(block, k));
                    ck.defect(
                        r::E_CHAIN_ASYM,
                        Some(i),
                        format!("{a} has @prev {b}, but {b} has @next {c}"),
                        vec![b, a],
                    );
                }
                Target::Absent => {
                    let (a, b) = (name(block, i), name(block, j));
                    ck.defect(
                        r::E_CHAIN_ASYM,
                        Some(i),
                        format!("{a} has @prev {b}, but {b} has no @next"),
                        vec![b, a],
                    );
                }
                Target::SelfRef | Target::Dangling => {}
            }
        }
    }
    let links: Vec<(usize, usize)> = links.into_iter().collect();

    let components = components(&etymons, &links);
    let mut out_deg: BTreeMap<usize, usize> = BTreeMap::new();
    let mut in_deg: BTreeMap<usize, usize> = BTreeMap::new();
    for &(a, b) in &links {
        *out_deg.entry(a).or_default() += 1;
        *in_deg.entry(b).or_default() += 1;
    }
    for &i in &etymons {
        let (o, n) = (out_deg.get(&i).copied().unwrap_or(0), in_deg.get(&i).copied().unwrap_or(0));
        if o > 1 || n > 1 {
            let who = name(block, i);
            ck.defect(
                r::W_CHAIN_BRANCH,
                Some(i),
                format!("chain forks at {who} ({n} predecessors, {o} successors)"),
                vec![who],
            );
        }
    }
    for comp in &components {
        if has_cycle(comp, &links) {
            let ids: Vec<String> = comp.iter().map(|&i| name(block, i)).collect();
            ck.defect(
                r::E_CHAIN_CYCLE,
                Some(comp[0]),
                format!("prev/next pointers form a cycle through {}", ids.join(", ")),
                ids,
            );
        }
    }
    if components.len() > 1 {
        let total = components.len();
        for comp in &components {
            let head = name(block, comp[0]);
            ck.defect(
                r::W_CHAIN_BRANCH,
                Some(comp[0]),
                format!("etym block holds {total} separate chains; one starts at {head}"),
                comp.iter().map(|&i| name(block, i)).collect(),
            );
        }
    }

    let errors = ck.defects.iter().any(Diagnostic::is_error);
    let forks = out_deg.values().chain(in_deg.values()).any(|&d| d > 1);
    let order = if errors || forks || components.len() != 1 {
        None
    } else {
        follow(&components[0], &links)
    };
    if let Some(o) = &order {
        if o.len() > cfg.max_chain_length {
            ck.defect(
                r::W_CHAIN_LONG,
                None,
                format!("chain of {} stages exceeds the maximum of {}", o.len(), cfg.max_chain_length),
                Vec::new(),
            );
        }
    }

    ChainReport {
        members,
        order,
        links,
        components,
        defective: ck.defective,
        defects: ck.defects,
    }
}

fn components(nodes: &[usize], links: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: BTreeMap<usize, usize> = nodes.iter().map(|&i| (i, i)).collect();
    fn root(parent: &mut BTreeMap<usize, usize>, i: usize) -> usize {
        let mut r = i;
        while parent[&r] != r {
            r = parent[&r];
        }
        parent.insert(i, r);
        r
    }
    for &(a, b) in links {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra != rb {
            parent.insert(ra.max(rb), ra.min(rb));
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &i in nodes {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

fn has_cycle(comp: &[usize], links: &[(usize, usize)]) -> bool {
    let members: BTreeSet<usize> = comp.iter().copied().collect();
    let edges: Vec<(usize, usize)> = links
        .iter()
        .copied()
        .filter(|(a, _)| members.contains(a))
        .collect();
    let mut indeg: BTreeMap<usize, usize> = comp.iter().map(|&i| (i, 0)).collect();
    for &(_, b) in &edges {
        *indeg.get_mut(&b).expect("member") += 1;
    }
    let mut ready: Vec<usize> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&i, _)| i).collect();
    let mut seen = 0;
    while let Some(n) = ready.pop() {
        seen += 1;
        for &(a, b) in &edges {
            if a == n {
                let d = indeg.get_mut(&b).expect("member");
                *d -= 1;
                if *d == 0 {
                    ready.push(b);
                }
            }
        }
    }
    seen < comp.len()
}

/// Head-finding and next-following over an acyclic, fork-free component.
fn follow(comp: &[usize], links: &[(usize, usize)]) -> Option<Vec<usize>> {
    let next: BTreeMap<usize, usize> = links.iter().copied().collect();
    let has_pred: BTreeSet<usize> = links.iter().map(|&(_, b)| b).collect();
    let head = *comp.iter().find(|i| !has_pred.contains(i))?;
    let mut order = vec![head];
    let mut cur = head;
    while let Some(&n) = next.get(&cur) {
        order.push(n);
        cur = n;
    }
    (order.len() == comp.len()).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tei::parse_etym;

    fn block(xml: &str) -> EtymologyBlock {
        parse_etym(xml, 0).unwrap().0
    }

    #[test]
    fn three_stage_chain() {
        let b = block(
            r##"<etym type="inheritance">
              <cit type="etymon" xml:id="a" next="#b"><oRef>a</oRef></cit>
              <cit type="etymon" xml:id="c" prev="#b"><oRef>c</oRef></cit>
              <cit type="etymon" xml:id="b" prev="#a" next="#c"><oRef>b</oRef></cit>
            </etym>"##,
        );
        let doc = Document::default();
        let rep = check_chain(&b, &doc);
        assert!(rep.defects.is_empty(), "{:?}", rep.defects);
        assert_eq!(rep.order, Some(vec![0, 2, 1]));
        assert_eq!(rep.members.len(), 3);
    }

    #[test]
    fn single_etymon_is_trivially_ordered() {
        let b = block(r#"<etym type="borrowing"><cit type="etymon"><oRef>x</oRef></cit></etym>"#);
        let rep = check_chain(&b, &Document::default());
        assert!(rep.members.is_empty());
        assert_eq!(rep.order, Some(vec![0]));
        assert!(rep.defects.is_empty());
    }

    #[test]
    fn self_and_dangling() {
        let b = block(
            r##"<etym type="inheritance">
              <cit type="etymon" xml:id="a" next="#a"><oRef>a</oRef></cit>
              <cit type="etymon" xml:id="b" prev="#zz"><oRef>b</oRef></cit>
            </etym>"##,
        );
        let rep = check_chain(&b, &Document::default());
        let rules: Vec<&str> = rep.defects.iter().map(|d| d.rule).collect();
        assert!(rules.contains(&r::E_CHAIN_SELF));
        assert!(rules.contains(&r::E_CHAIN_DANGLING));
        assert_eq!(rep.order, None);
        assert_eq!(rep.defective, BTreeSet::from([0, 1]));
    }

    #[test]
    fn cycle() {
        let b = block(
            r##"<etym type="inheritance">
              <cit type="etymon" xml:id="a" prev="#b" next="#b"><oRef>a</oRef></cit>
              <cit type="etymon" xml:id="b" prev="#a" next="#a"><oRef>b</oRef></cit>
            </etym>"##,
        );
        let rep = check_chain(&b, &Document::default());
        assert!(rep.defects.iter().any(|d| d.rule == r::E_CHAIN_CYCLE));
        assert_eq!(rep.order, None);
    }

    #[test]
    fn asymmetric_pair() {
        let b = block(
            r##"<etym type="inheritance">
              <cit type="etymon" xml:id="a"><oRef>a</oRef></cit>
              <cit type="etymon" xml:id="b" prev="#a"><oRef>b</oRef></cit>
            </etym>"##,
        );
        let rep = check_chain(&b, &Document::default());
        let asym: Vec<_> = rep.defects.iter().filter(|d| d.rule == r::E_CHAIN_ASYM).collect();
        assert_eq!(asym.len(), 1);
        assert_eq!(rep.links, vec![(0, 1)]);
    }
}
