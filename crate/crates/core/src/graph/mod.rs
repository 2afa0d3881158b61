//! The etymological lexical network.
//!
//! Nodes are entry heads, sense heads, etymon units and external concepts.
//! Edges run from the older unit to the newer one: an etymon points into
//! the entry or sense it explains, and `Precedes` points from an earlier
//! stage to a later one, so tracing a diachrony is a backward walk.

mod build;
mod export;
mod trace;

pub use build::{build_network, build_network_with_stats, linearize, BuildStats, Linearized};
pub use export::{export, from_json, ExportFormat};
pub use trace::{trace, DiachronyPath, Stage};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::langtag::{parse_tag, LangTag};
use crate::model::{DateSpan, EtymType};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("no entry or sense with id {0:?} in the graph")]
    UnknownAnchor(String),
    #[error("graph JSON is malformed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("graph JSON is inconsistent: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NodeKind {
    EntryHead,
    SenseHead,
    EtymonUnit,
    ExternalConcept,
}

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::EntryHead => "EntryHead",
            NodeKind::SenseHead => "SenseHead",
            NodeKind::EtymonUnit => "EtymonUnit",
            NodeKind::ExternalConcept => "ExternalConcept",
        }
    }
}

mod lang_serde {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<LangTag>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|t| t.raw.as_str()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<LangTag>, D::Error> {
        Ok(Option::<String>::deserialize(d)?.map(|s| parse_tag(&s)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    /// Stable id built from the source name, the entry id (or index) and
    /// the element path; the URI itself for external concepts.
    pub id: String,
    pub kind: NodeKind,
    /// `xml:id` of the entry, sense or citation behind the node.
    pub xml_id: Option<String>,
    pub form: Option<String>,
    #[serde(with = "lang_serde")]
    pub lang: Option<LangTag>,
    pub date: Option<DateSpan>,
    pub gloss: Option<String>,
    pub uri: Option<String>,
}

impl GraphNode {
    pub(crate) fn new(id: String, kind: NodeKind) -> Self {
        Self {
            id,
            kind,
            xml_id: None,
            form: None,
            lang: None,
            date: None,
            gloss: None,
            uri: None,
        }
    }

    /// `form (lang, dates)`, leaving out whatever is unknown.
    pub fn label(&self) -> String {
        let head = self
            .form
            .clone()
            .or_else(|| self.uri.clone())
            .or_else(|| self.gloss.as_ref().map(|g| format!("'{g}'")))
            .or_else(|| self.xml_id.clone())
            .unwrap_or_else(|| self.id.clone());
        let head = match self.kind {
            NodeKind::SenseHead => {
                let step = self.id.rsplit('/').next().unwrap_or_default();
                match (&self.form, &self.gloss) {
                    (Some(_), Some(g)) => format!("{head}/{step} '{g}'"),
                    _ => format!("{head}/{step}"),
                }
            }
            _ => head,
        };
        let mut extra = Vec::new();
        if let Some(l) = &self.lang {
            extra.push(l.raw.clone());
        }
        if let Some(d) = &self.date {
            extra.push(d.display());
        }
        if extra.is_empty() {
            head
        } else {
            format!("{head} ({})", extra.join(", "))
        }
    }
}

/// Typed relation carried by an edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Inheritance,
    Borrowing,
    Metaphor,
    Metonymy,
    Compounding,
    Grammaticalization,
    Other(String),
    Precedes,
    SenseOf,
    ComponentOf,
    SameAs,
}

impl Relation {
    pub fn from_etym(t: &EtymType) -> Self {
        match t {
            EtymType::Inheritance => Relation::Inheritance,
            EtymType::Borrowing => Relation::Borrowing,
            EtymType::Metaphor => Relation::Metaphor,
            EtymType::Metonymy => Relation::Metonymy,
            EtymType::Compounding => Relation::Compounding,
            EtymType::Grammaticalization => Relation::Grammaticalization,
            EtymType::Other(s) if s.is_empty() => Relation::Other("untyped".into()),
            EtymType::Other(s) => Relation::Other(s.clone()),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            Relation::Inheritance => "inheritance",
            Relation::Borrowing => "borrowing",
            Relation::Metaphor => "metaphor",
            Relation::Metonymy => "metonymy",
            Relation::Compounding => "compounding",
            Relation::Grammaticalization => "grammaticalization",
            Relation::Other(s) => s,
            Relation::Precedes => "precedes",
            Relation::SenseOf => "senseOf",
            Relation::ComponentOf => "componentOf",
            Relation::SameAs => "sameAs",
        }
    }

    pub fn parse(s: &str) -> Self {
        match s {
            "inheritance" => Relation::Inheritance,
            "borrowing" => Relation::Borrowing,
            "metaphor" => Relation::Metaphor,
            "metonymy" => Relation::Metonymy,
            "compounding" => Relation::Compounding,
            "grammaticalization" => Relation::Grammaticalization,
            "precedes" => Relation::Precedes,
            "senseOf" => Relation::SenseOf,
            "componentOf" => Relation::ComponentOf,
            "sameAs" => Relation::SameAs,
            other => Relation::Other(other.to_string()),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Relation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Relation::parse(&String::deserialize(d)?))
    }
}

impl Serialize for EtymType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for EtymType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(EtymType::from_type(&String::deserialize(d)?))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub from: String,
    pub to: String,
    pub relation: Relation,
    /// `@type` of every enclosing etym block, outermost first. Empty on
    /// edges that do not come from an etymology.
    pub process_path: Vec<EtymType>,
    /// The form an etymology is attached to through `<etym corresp>`.
    pub form_ref: Option<String>,
}

impl GraphEdge {
    pub(crate) fn new(from: &str, to: &str, relation: Relation) -> Self {
        Self {
            from: from.to_string(),
            to: to.to_string(),
            relation,
            process_path: Vec::new(),
            form_ref: None,
        }
    }

    /// True for edges a diachrony walks along.
    pub fn is_historical(&self) -> bool {
        self.relation == Relation::Precedes || !self.process_path.is_empty()
    }
}

/// Nodes in insertion order plus an id index; edges in insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EtymGraph {
    nodes: Vec<GraphNode>,
    index: BTreeMap<String, usize>,
    edges: Vec<GraphEdge>,
}

impl EtymGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn node(&self, id: &str) -> Option<&GraphNode> {
        self.index.get(id).map(|&i| &self.nodes[i])
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// Insert a node, returning its id. An existing id is kept as is.
    pub fn add_node(&mut self, node: GraphNode) -> String {
        let id = node.id.clone();
        if !self.index.contains_key(&id) {
            self.index.insert(id.clone(), self.nodes.len());
            self.nodes.push(node);
        }
        id
    }

    /// Insert an edge whose endpoints exist, skipping exact duplicates.
    /// Returns false when an endpoint is missing.
    pub fn add_edge(&mut self, edge: GraphEdge) -> bool {
        if !self.contains(&edge.from) || !self.contains(&edge.to) {
            return false;
        }
        if !self.edges.contains(&edge) {
            self.edges.push(edge);
        }
        true
    }

    pub fn edges_into<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a GraphEdge> + 'a {
        self.edges.iter().filter(move |e| e.to == id)
    }

    pub fn edges_from<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a GraphEdge> + 'a {
        self.edges.iter().filter(move |e| e.from == id)
    }

    pub fn count_relation(&self, rel: &Relation) -> usize {
        self.edges.iter().filter(|e| &e.relation == rel).count()
    }

    pub fn count_kind(&self, kind: NodeKind) -> usize {
        self.nodes.iter().filter(|n| n.kind == kind).count()
    }

    /// Problems with the structural invariants: dangling edge endpoints,
    /// `Precedes` between non-etymon nodes, and nodes with two `Precedes`
    /// in-edges or out-edges.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut ins: BTreeMap<&str, usize> = BTreeMap::new();
        let mut outs: BTreeMap<&str, usize> = BTreeMap::new();
        for e in &self.edges {
            for end in [&e.from, &e.to] {
                if !self.contains(end) {
                    out.push(format!("edge endpoint {end} is not a node"));
                }
            }
            if e.relation == Relation::Precedes {
                let unit = |id: &str| self.node(id).is_some_and(|n| n.kind == NodeKind::EtymonUnit);
                if !unit(&e.from) || !unit(&e.to) {
                    out.push(format!("precedes edge {} -> {} joins non-etymon nodes", e.from, e.to));
                }
                *outs.entry(&e.from).or_default() += 1;
                *ins.entry(&e.to).or_default() += 1;
            }
        }
        for (id, n) in ins.iter().filter(|(_, n)| **n > 1) {
            out.push(format!("{id} has {n} precedes in-edges"));
        }
        for (id, n) in outs.iter().filter(|(_, n)| **n > 1) {
            out.push(format!("{id} has {n} precedes out-edges"));
        }
        if outs.keys().any(|id| {
            let mut cur = *id;
            let mut steps = 0;
            while let Some(e) = self
                .edges
                .iter()
                .find(|e| e.relation == Relation::Precedes && e.from == cur)
            {
                cur = &e.to;
                steps += 1;
                if cur == *id || steps > self.edges.len() {
                    return true;
                }
            }
            false
        }) {
            out.push("precedes edges contain a cycle".into());
        }
        for (id, i) in &self.index {
            let n = &self.nodes[*i];
            if (n.kind == NodeKind::ExternalConcept) != n.uri.is_some() {
                out.push(format!("{id}: uri must be present exactly on external concepts"));
            }
        }
        out
    }
}
